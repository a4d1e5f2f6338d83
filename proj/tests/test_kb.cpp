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

#include <random>

#include "ailtl/query.hpp"
#include "ailtl/timeline.hpp"

using namespace ailtl;

namespace {

Term term(std::string functor, std::vector<TermArg> args = {})
{
    return Term{std::move(functor), std::move(args)};
}

TraceEvent ev(std::int64_t t, EventKind kind, Term body)
{
    return TraceEvent{Time(t), kind, std::move(body)};
}

Literal pastLit(std::string functor, std::vector<TermArg> args, std::optional<std::string> atVar,
                bool positive = true)
{
    PastAtom atom{term(std::move(functor), std::move(args)), std::nullopt, std::nullopt};
    if (atVar) {
        atom.at = Variable{*atVar};
    }
    return Literal{positive, atom, {}};
}

Literal factLit(std::string functor, std::vector<TermArg> args, bool positive = true)
{
    return Literal{positive, FactAtom{term(std::move(functor), std::move(args))}, {}};
}

} // namespace

TEST_CASE("ingesting an observation records a remembered event")
{
    Timeline tl;
    auto snap = tl.ingest(ev(100, EventKind::External, term("enter_customer")));

    CHECK(snap.index() == 0);
    CHECK(snap.t() == Time(100));
    auto h = snap.history();
    REQUIRE(h.current.size() == 1);
    CHECK(h.current[0].term == term("enter_customer"));
    CHECK(h.current[0].t == Time(100));
    CHECK(h.superseded.empty());
}

TEST_CASE("a newer occurrence supersedes the current version")
{
    Timeline tl;
    tl.ingest(ev(100, EventKind::External, term("enter_customer")));
    auto snap = tl.ingest(ev(400, EventKind::External, term("enter_customer")));

    auto h = snap.history();
    REQUIRE(h.current.size() == 1);
    CHECK(h.current[0].t == Time(400));
    REQUIRE(h.superseded.size() == 1);
    CHECK(h.superseded[0].t == Time(100));

    // The time slot of a past-event literal binds the latest version.
    auto results = queryLiteral(snap, pastLit("enter_customer", {}, "T"), {});
    REQUIRE(results.size() == 1);
    CHECK(results[0].lookup("T") == Value(std::int64_t{400}));
}

TEST_CASE("earlier snapshots keep their own view after later ingestion")
{
    Timeline tl;
    auto first = tl.ingest(ev(100, EventKind::External, term("enter_customer")));
    tl.ingest(ev(400, EventKind::External, term("enter_customer")));

    auto results = queryLiteral(first, pastLit("enter_customer", {}, "T"), {});
    REQUIRE(results.size() == 1);
    CHECK(results[0].lookup("T") == Value(std::int64_t{100}));
}

TEST_CASE("timestamps must not regress and terms must be ground")
{
    Timeline tl;
    tl.ingest(ev(100, EventKind::External, term("a")));
    CHECK_THROWS_AS(tl.ingest(ev(99, EventKind::External, term("b"))), IngestError);
    CHECK_THROWS_AS(tl.ingest(ev(200, EventKind::External, term("b", {Variable{"X"}}))), IngestError);
}

TEST_CASE("events at one instant fold into one state")
{
    Timeline tl;
    tl.ingest(ev(50, EventKind::AssertFact, term("p")));
    auto snap = tl.ingest(ev(50, EventKind::AssertFact, term("q")));

    CHECK(snap.index() == 0);
    CHECK(tl.stateCount() == 1);
    CHECK(snap.hasFact(term("p")));
    CHECK(snap.hasFact(term("q")));
}

TEST_CASE("assert and retract edit the fact store in trace order")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::AssertFact, term("machine_content", {std::int64_t{2000}})));
    auto s0 = tl.last();
    CHECK(s0.hasFact(term("machine_content", {std::int64_t{2000}})));

    tl.ingest(ev(600, EventKind::RetractFact, term("machine_content", {std::int64_t{2000}})));
    auto s1 = tl.ingest(ev(600, EventKind::AssertFact, term("machine_content", {std::int64_t{1500}})));
    CHECK_FALSE(s1.hasFact(term("machine_content", {std::int64_t{2000}})));
    CHECK(s1.hasFact(term("machine_content", {std::int64_t{1500}})));

    // The state at 0 is unaffected.
    CHECK(tl.state(0).hasFact(term("machine_content", {std::int64_t{2000}})));
}

TEST_CASE("retracting an absent fact is an error")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::AssertFact, term("p")));
    CHECK_THROWS_AS(tl.ingest(ev(1, EventKind::RetractFact, term("q"))), IngestError);

    tl.ingest(ev(2, EventKind::RetractFact, term("p")));
    CHECK_THROWS_AS(tl.ingest(ev(3, EventKind::RetractFact, term("p"))), IngestError);
}

TEST_CASE("snapshot_at resolves interval boundaries")
{
    Timeline tl;
    tl.ingest(ev(10, EventKind::External, term("a")));
    tl.ingest(ev(20, EventKind::External, term("b")));
    tl.ingest(ev(30, EventKind::External, term("c")));

    auto after = tl.snapshotAt(Time(15), Timeline::AtMode::FirstAtOrAfter);
    REQUIRE(after.has_value());
    CHECK(after->t() == Time(20));

    auto before = tl.snapshotAt(Time(15), Timeline::AtMode::LastAtOrBefore);
    REQUIRE(before.has_value());
    CHECK(before->t() == Time(10));

    auto exact = tl.snapshotAt(Time(20), Timeline::AtMode::FirstAtOrAfter);
    REQUIRE(exact.has_value());
    CHECK(exact->t() == Time(20));
    CHECK(tl.snapshotAt(Time(20), Timeline::AtMode::LastAtOrBefore)->t() == Time(20));

    CHECK_FALSE(tl.snapshotAt(Time(31), Timeline::AtMode::FirstAtOrAfter).has_value());
    CHECK_FALSE(tl.snapshotAt(Time(9), Timeline::AtMode::LastAtOrBefore).has_value());
}

TEST_CASE("positive fact queries enumerate every grounding deterministically")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::AssertFact, term("trust", {Symbol{"c9"}, std::int64_t{30}})));
    tl.ingest(ev(0, EventKind::AssertFact, term("trust", {Symbol{"c1"}, std::int64_t{80}})));
    auto snap = tl.last();

    auto results = queryLiteral(
        snap, factLit("trust", {Variable{"C"}, Variable{"L"}}), {});
    REQUIRE(results.size() == 2);
    // Canonical term order: c1 before c9.
    CHECK(results[0].lookup("C") == Value(Symbol{"c1"}));
    CHECK(results[0].lookup("L") == Value(std::int64_t{80}));
    CHECK(results[1].lookup("C") == Value(Symbol{"c9"}));
}

TEST_CASE("negation as failure requires groundness")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::AssertFact, term("p", {Symbol{"a"}})));
    auto snap = tl.last();

    CHECK(queryLiteral(snap, factLit("q", {}, false), {}).size() == 1);
    CHECK(queryLiteral(snap, factLit("p", {Symbol{"a"}}, false), {}).empty());
    CHECK_THROWS_AS(queryLiteral(snap, factLit("p", {Variable{"X"}}, false), {}), QueryError);
    CHECK(queryLiteral(snap, pastLit("robbery", {}, std::nullopt, false), {}).size() == 1);
}

TEST_CASE("builtin equality computes durations")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::Internal, term("tick")));
    auto snap = tl.last();

    Binding b;
    b.bind("T", Value(std::int64_t{100}));
    Literal assign{true,
                   BuiltinAtom{CompareOp::Eq, ArithExpr::var("T1"),
                               ArithExpr::bin(ArithExpr::Node::Add, ArithExpr::var("T"),
                                              ArithExpr::num(300))},
                   {}};
    auto results = queryLiteral(snap, assign, b);
    REQUIRE(results.size() == 1);
    CHECK(results[0].lookup("T1") == Value(std::int64_t{400}));
}

TEST_CASE("comparisons across value kinds fail without binding")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::Internal, term("tick")));
    auto snap = tl.last();

    Binding b;
    b.bind("B", Value(std::int64_t{500}));
    Literal mixed{true, BuiltinAtom{CompareOp::Gt, ArithExpr::var("B"), ArithExpr::sym("minimum")}, {}};
    CHECK(queryLiteral(snap, mixed, b).empty());

    Literal unbound{true, BuiltinAtom{CompareOp::Gt, ArithExpr::var("Z"), ArithExpr::num(1)}, {}};
    CHECK_THROWS_AS(queryLiteral(snap, unbound, b), QueryError);
}

TEST_CASE("now binds the state time")
{
    Timeline tl;
    tl.ingest(ev(123, EventKind::Internal, term("tick")));
    auto snap = tl.last();

    auto results = queryLiteral(snap, Literal{true, NowAtom{Variable{"T"}}, {}}, {});
    REQUIRE(results.size() == 1);
    CHECK(results[0].lookup("T") == Value(std::int64_t{123}));
}

TEST_CASE("conjunction solving is left to right")
{
    Timeline tl;
    tl.ingest(ev(0, EventKind::AssertFact, term("machine_content", {std::int64_t{150}})));
    tl.ingest(ev(0, EventKind::AssertFact, term("minimum", {std::int64_t{200}})));
    auto snap = tl.last();

    std::vector<Literal> conj = {
        factLit("machine_content", {Variable{"B"}}),
        factLit("minimum", {Variable{"M"}}),
        Literal{true, BuiltinAtom{CompareOp::Gt, ArithExpr::var("B"), ArithExpr::var("M")}, {}},
    };
    CHECK_FALSE(holds(snap, conj, {}));

    tl.ingest(ev(10, EventKind::RetractFact, term("machine_content", {std::int64_t{150}})));
    tl.ingest(ev(10, EventKind::AssertFact, term("machine_content", {std::int64_t{2000}})));
    CHECK(holds(tl.last(), conj, {}));
}

TEST_CASE("history partition: every observation is current or superseded")
{
    std::mt19937_64 rng(7);
    for (int round = 0; round < 50; ++round) {
        Timeline tl;
        std::size_t observations = 0;
        std::int64_t t = 0;
        const std::vector<std::string> functors = {"a", "b", "c"};
        for (int i = 0; i < 40; ++i) {
            t += 1 + static_cast<std::int64_t>(rng() % 3);
            const auto& f = functors[rng() % functors.size()];
            const auto kind = static_cast<EventKind>(rng() % 3);
            tl.ingest(ev(t, kind, term(f)));
            ++observations;
        }
        auto h = tl.last().history();
        CHECK(h.current.size() + h.superseded.size() == observations);
        // Superseded versions are strictly older than their current version.
        for (const auto& old : h.superseded) {
            bool dominated = false;
            for (const auto& cur : h.current) {
                if (cur.term.functor == old.term.functor && cur.kind == old.kind && cur.t > old.t) {
                    dominated = true;
                }
            }
            CHECK(dominated);
        }
    }
}

TEST_CASE("replaying the same events yields identical snapshots")
{
    auto build = [] {
        Timeline tl;
        tl.ingest(ev(0, EventKind::AssertFact, term("p")));
        tl.ingest(ev(5, EventKind::External, term("e", {std::int64_t{1}})));
        tl.ingest(ev(5, EventKind::RetractFact, term("p")));
        tl.ingest(ev(9, EventKind::Action, term("f")));
        return tl;
    };
    Timeline a = build();
    Timeline b = build();
    REQUIRE(a.stateCount() == b.stateCount());
    for (std::uint32_t i = 0; i < a.stateCount(); ++i) {
        CHECK(a.state(i).factList() == b.state(i).factList());
        auto ha = a.state(i).history();
        auto hb = b.state(i).history();
        CHECK(ha.current == hb.current);
        CHECK(ha.superseded == hb.superseded);
    }
}
