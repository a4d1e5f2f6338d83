/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#include <doctest.h>

#include "ailtl/evaluator.hpp"
#include "ailtl/oracle.hpp"
#include "ailtl/parser.hpp"
#include "ailtl/rng.hpp"

using namespace ailtl;

namespace {

// States at the given times; fact `p` holds in exactly the listed states.
struct Run {
    Timeline timeline;
    std::vector<Snapshot> states;

    Run(const std::vector<int64_t>& times, const std::vector<int64_t>& pTrue) {
        bool p = false;
        for (int64_t t : times) {
            bool want = std::find(pTrue.begin(), pTrue.end(), t) != pTrue.end();
            if (want != p) {
                timeline.ingest({Time(t), want ? EventKind::AssertFact : EventKind::RetractFact,
                                 Term{"p", {}}});
                p = want;
            } else {
                timeline.ingest({Time(t), EventKind::Internal, Term{"tick", {}}});
            }
        }
        for (std::uint32_t i = 0; i < timeline.stateCount(); ++i)
            states.push_back(timeline.state(i));
    }
};

std::vector<Literal> phiP() {
    Literal lit;
    lit.body = FactAtom{Term{"p", {}}};
    return {lit};
}

IntervalOp groundOp(OpKind kind, std::optional<int64_t> m = {}, std::optional<int64_t> n = {},
                    std::optional<int64_t> f = {}, std::optional<int64_t> k = {}) {
    IntervalOp op;
    op.kind = kind;
    if (m) op.m = Time(*m);
    if (n) op.n = Time(*n);
    if (f) op.f = Time(*f);
    if (k) op.checkEvery = Time(*k);
    return op;
}

Verdict runAll(OpInstance& inst, const Run& run) {
    for (const auto& s : run.states) inst.step(s);
    return inst.finalize(run.states.back().t());
}

} // namespace

TEST_CASE("a witness decides EVENTUALLY at the state that shows it") {
    Run run({0, 10, 20, 30, 40}, {20});
    OpInstance inst(groundOp(OpKind::EventuallyBetween, 10, 35), phiP(), {}, Time(0));
    inst.step(run.states[0]);
    inst.step(run.states[1]);
    CHECK(inst.verdict() == Verdict::Provisional);
    inst.step(run.states[2]);
    CHECK(inst.verdict() == Verdict::Holds);
    inst.step(run.states[3]);
    CHECK(inst.verdict() == Verdict::Holds);
}

TEST_CASE("an empty window turns EVENTUALLY down just past the deadline") {
    Run run({0, 10, 20, 30, 40}, {});
    OpInstance inst(groundOp(OpKind::EventuallyBetween, 5, 25), phiP(), {}, Time(0));
    inst.step(run.states[0]);
    inst.step(run.states[1]);
    inst.step(run.states[2]);
    CHECK(inst.verdict() == Verdict::Provisional);
    inst.step(run.states[3]);
    CHECK(inst.verdict() == Verdict::Violated);
}

TEST_CASE("a run that stops inside the window leaves EVENTUALLY weakly satisfied") {
    Run run({0, 10}, {});
    OpInstance inst(groundOp(OpKind::EventuallyBetween, 5, 25), phiP(), {}, Time(0));
    CHECK(runAll(inst, run) == Verdict::WeakHolds);

    Run covered({0, 10, 25}, {});
    OpInstance atEdge(groundOp(OpKind::EventuallyBetween, 5, 25), phiP(), {}, Time(0));
    CHECK(runAll(atEdge, covered) == Verdict::Violated);
}

TEST_CASE("ALWAYS fails on the state that breaks it and closes after the window") {
    Run bad({0, 10, 20, 30}, {0, 10, 30});
    OpInstance inst(groundOp(OpKind::AlwaysBetween, 0, 30), phiP(), {}, Time(0));
    inst.step(bad.states[0]);
    inst.step(bad.states[1]);
    CHECK(inst.verdict() == Verdict::Provisional);
    inst.step(bad.states[2]);
    CHECK(inst.verdict() == Verdict::Violated);

    Run good({0, 10, 20, 35}, {0, 10, 20, 35});
    OpInstance ok(groundOp(OpKind::AlwaysBetween, 0, 30), phiP(), {}, Time(0));
    ok.step(good.states[0]);
    ok.step(good.states[1]);
    ok.step(good.states[2]);
    CHECK(ok.verdict() == Verdict::Provisional);
    ok.step(good.states[3]);
    CHECK(ok.verdict() == Verdict::Holds);
}

TEST_CASE("the check period hides failures at states that are not due") {
    // k = 20 from activation 0 samples t = 0, 20, 40; p is only missing at 30.
    Run run({0, 10, 20, 30, 40, 45}, {0, 10, 20, 40, 45});
    OpInstance inst(groundOp(OpKind::AlwaysBetween, 0, 45, {}, 20), phiP(), {}, Time(0));
    for (const auto& s : run.states) inst.step(s);
    CHECK(inst.verdict() == Verdict::Provisional);
    CHECK(inst.finalize(run.states.back().t()) == Verdict::Holds);

    CHECK(oracleFormula(groundOp(OpKind::AlwaysBetween, 0, 45, {}, 20), phiP(), {},
                        run.states, Time(0)) == OracleVerdict::True);

    // Without the check period the miss at 30 is seen.
    OpInstance dense(groundOp(OpKind::AlwaysBetween, 0, 45), phiP(), {}, Time(0));
    for (const auto& s : run.states) dense.step(s);
    CHECK(dense.verdict() == Verdict::Violated);
}

TEST_CASE("NEXT reads the first state at or past its target") {
    Run run({0, 10, 25, 40}, {25});
    OpInstance inst(groundOp(OpKind::Next, 20), phiP(), {}, Time(0));
    inst.step(run.states[0]);
    inst.step(run.states[1]);
    CHECK(inst.verdict() == Verdict::Provisional);
    inst.step(run.states[2]);
    CHECK(inst.verdict() == Verdict::Holds);

    OpInstance miss(groundOp(OpKind::Next, 20), phiP(), {}, Time(10));
    Run late({10, 25}, {});
    CHECK(runAll(miss, late) == Verdict::WeakHolds);
}

TEST_CASE("NEVER windows") {
    Run run({0, 10, 20, 30}, {20});
    OpInstance before(groundOp(OpKind::NeverBefore, 15), phiP(), {}, Time(0));
    CHECK(runAll(before, run) == Verdict::Holds);

    OpInstance between(groundOp(OpKind::NeverBetween, 15, 25), phiP(), {}, Time(0));
    CHECK(runAll(between, run) == Verdict::Violated);

    OpInstance after(groundOp(OpKind::NeverAfter, 25), phiP(), {}, Time(0));
    CHECK(runAll(after, run) == Verdict::WeakHolds);

    OpInstance afterHit(groundOp(OpKind::NeverAfter, 15), phiP(), {}, Time(0));
    CHECK(runAll(afterHit, run) == Verdict::Violated);
}

TEST_CASE("strong ALWAYS wants the formula to hold exactly over its interval") {
    Run exact({0, 10, 20, 30, 40}, {10, 20, 30});
    OpInstance inst(groundOp(OpKind::AlwaysStrongBetween, 10, 30), phiP(), {}, Time(0));
    inst.step(exact.states[0]);
    inst.step(exact.states[1]);
    inst.step(exact.states[2]);
    inst.step(exact.states[3]);
    CHECK(inst.verdict() == Verdict::Provisional);
    inst.step(exact.states[4]);
    CHECK(inst.verdict() == Verdict::Holds);

    Run early({0, 10, 20, 30, 40}, {0, 10, 20, 30});
    OpInstance earlyHold(groundOp(OpKind::AlwaysStrongBetween, 10, 30), phiP(), {}, Time(0));
    CHECK(runAll(earlyHold, early) == Verdict::Violated);

    Run sticky({0, 10, 20, 30, 40}, {10, 20, 30, 40});
    OpInstance stuck(groundOp(OpKind::AlwaysStrongBetween, 10, 30), phiP(), {}, Time(0));
    CHECK(runAll(stuck, sticky) == Verdict::Violated);
}

TEST_CASE("SOMETIMES checks each checkpoint and one state may cover several") {
    Run good({0, 300, 600, 900}, {0, 300, 600, 900});
    OpInstance inst(groundOp(OpKind::Sometimes, 0, {}, 300), phiP(), {}, Time(0));
    CHECK(runAll(inst, good) == Verdict::WeakHolds);

    Run bad({0, 300, 600, 900}, {0, 300, 900});
    OpInstance miss(groundOp(OpKind::Sometimes, 0, {}, 300), phiP(), {}, Time(0));
    for (const auto& s : bad.states) miss.step(s);
    CHECK(miss.verdict() == Verdict::Violated);

    // A single state at 950 answers for the checkpoints at 300, 600 and 900.
    Run sparse({0, 950}, {0, 950});
    OpInstance covered(groundOp(OpKind::SometimesBetween, 300, 900, 300), phiP(), {}, Time(0));
    for (const auto& s : sparse.states) covered.step(s);
    CHECK(covered.verdict() == Verdict::Holds);
}

TEST_CASE("a Holds verdict carries the witness solution") {
    Timeline tl;
    tl.ingest({Time(0), EventKind::Internal, Term{"tick", {}}});
    tl.ingest({Time(10), EventKind::AssertFact, Term{"door", {Symbol{"d7"}}}});
    std::vector<Snapshot> states{tl.state(0), tl.state(1)};

    Literal lit;
    lit.body = FactAtom{Term{"door", {Variable{"D"}}}};
    OpInstance inst(groundOp(OpKind::Eventually, 60), {lit}, {}, Time(0));
    for (const auto& s : states) inst.step(s);
    REQUIRE(inst.verdict() == Verdict::Holds);
    REQUIRE(inst.witness().has_value());
    CHECK(inst.witness()->lookup("D") == Value{Symbol{"d7"}});
}

TEST_CASE("due instants are spaced k from activation") {
    OpInstance inst(groundOp(OpKind::Always, 0, {}, {}, 30), phiP(), {}, Time(100));
    CHECK(inst.due(Time(100)));
    CHECK_FALSE(inst.due(Time(110)));
    CHECK(inst.due(Time(130)));
    CHECK(inst.due(Time(190)));
}

TEST_CASE("deferred context constraints join the evaluation list") {
    RuleSet rs = parseRules(
        "rule exit_check: EVENTUALLY(T, T1; 30s) exit_customer_P(T2) :: "
        "enter_customer_P(T), T1 = T + 5m, T2 > T, T2 <= T1 / alert_operator\n");
    ContextSplit split = splitContext(rs.rules[0].body, {});
    REQUIRE(split.activation.size() == 2);
    REQUIRE(split.deferred.size() == 2);
    CHECK(formatLiteral(split.activation[0]) == "enter_customer_P at T");
    CHECK(formatLiteral(split.deferred[0]) == "T2 > T");
    CHECK(formatLiteral(split.deferred[1]) == "T2 <= T1");
}

TEST_CASE("random runs agree with the oracle and never change a final verdict") {
    Rng rng(77001);
    for (int round = 0; round < 500; ++round) {
        std::vector<int64_t> times;
        int64_t t = 0;
        int nStates = static_cast<int>(rng.range(1, 12));
        for (int i = 0; i < nStates; ++i) {
            times.push_back(t);
            t += rng.range(1, 50);
        }
        std::vector<int64_t> pTrue;
        for (int64_t x : times)
            if (rng.chance(50)) pTrue.push_back(x);
        Run run(times, pTrue);

        auto bound = [&]() { return rng.range(0, times.back() + 20); };
        std::vector<IntervalOp> ops;
        ops.push_back(groundOp(OpKind::Now));
        ops.push_back(groundOp(OpKind::Next, bound()));
        ops.push_back(groundOp(OpKind::Eventually, bound()));
        ops.push_back(groundOp(OpKind::Always, bound()));
        ops.push_back(groundOp(OpKind::AlwaysStrong, bound()));
        ops.push_back(groundOp(OpKind::NeverBefore, bound()));
        ops.push_back(groundOp(OpKind::NeverAfter, bound()));
        ops.push_back(groundOp(OpKind::Sometimes, bound(), {}, rng.range(1, 40)));
        {
            int64_t lo = bound();
            int64_t hi = lo + rng.range(0, 60);
            ops.push_back(groundOp(OpKind::EventuallyBetween, lo, hi));
            ops.push_back(groundOp(OpKind::AlwaysBetween, lo, hi));
            ops.push_back(groundOp(OpKind::NeverBetween, lo, hi));
            ops.push_back(groundOp(OpKind::AlwaysStrongBetween, lo, hi));
            ops.push_back(groundOp(OpKind::SometimesBetween, lo, hi, rng.range(1, 40)));
        }
        if (rng.chance(40)) {
            int64_t k = rng.range(1, 40);
            for (auto& op : ops)
                if (op.kind != OpKind::Sometimes && op.kind != OpKind::SometimesBetween)
                    op.checkEvery = Time(k);
        }

        const Time activation = run.states.front().t();
        for (const auto& op : ops) {
            OpInstance inst(op, phiP(), {}, activation);
            std::optional<Verdict> decidedAt;
            for (const auto& s : run.states) {
                inst.step(s);
                if (decidedAt) {
                    INFO("op kind ", static_cast<int>(op.kind), " round ", round);
                    CHECK(inst.verdict() == *decidedAt);
                } else if (inst.verdict() != Verdict::Provisional) {
                    decidedAt = inst.verdict();
                }
            }
            Verdict final = inst.finalize(run.states.back().t());
            OracleVerdict want = oracleFormula(op, phiP(), {}, run.states, activation);
            INFO("op kind ", static_cast<int>(op.kind), " round ", round, " final ",
                 verdictName(final), " oracle ", oracleVerdictName(want));
            CHECK(oracleScale(final) == want);
        }
    }
}
