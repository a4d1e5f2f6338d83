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
#include "ailtl/monitor.hpp"

#include <algorithm>

#include "ailtl/query.hpp"

namespace ailtl {

const char* outcomeName(Outcome o) {
    switch (o) {
        case Outcome::Pending: return "pending";
        case Outcome::Holds: return "holds";
        case Outcome::Violated: return "violated";
        case Outcome::WeakHolds: return "weak-holds";
        case Outcome::Broken: return "broken";
        case Outcome::Discharged: return "discharged";
    }
    return "?";
}

const char* coherenceName(Coherence c) {
    switch (c) {
        case Coherence::Coherent: return "coherent";
        case Coherence::WeaklyCoherent: return "weakly-coherent";
        case Coherence::Incoherent: return "incoherent";
    }
    return "?";
}

int coherenceExitCode(Coherence c) {
    switch (c) {
        case Coherence::Coherent: return 0;
        case Coherence::WeaklyCoherent: return 1;
        case Coherence::Incoherent: return 2;
    }
    return 2;
}

namespace {

Outcome outcomeFromVerdict(Verdict v) {
    switch (v) {
        case Verdict::Holds: return Outcome::Holds;
        case Verdict::Violated: return Outcome::Violated;
        case Verdict::WeakHolds: return Outcome::WeakHolds;
        case Verdict::Provisional: break;
    }
    return Outcome::Pending;
}

bool formulaDecided(Outcome o) {
    return o == Outcome::Holds || o == Outcome::Violated || o == Outcome::WeakHolds;
}

IntervalOp withDefaultPeriod(IntervalOp op, const std::optional<Time>& fallback) {
    bool takesPeriod = op.kind != OpKind::Now && op.kind != OpKind::Sometimes &&
                       op.kind != OpKind::SometimesBetween;
    if (takesPeriod && !op.checkEvery && fallback) op.checkEvery = *fallback;
    return op;
}

int declPriority(const RuleSet& rs, const RuleSet::DeclRef& ref) {
    return ref.isExpr ? rs.exprs[ref.index].priority : rs.rules[ref.index].priority;
}

Binding merged(const Binding& base, const Binding& extra) {
    Binding out = base;
    for (const auto& [name, value] : extra.slots()) out.bind(name, value);
    return out;
}

Binding dispatchBinding(const OpInstance& inst) {
    return inst.witness() ? *inst.witness() : inst.binding();
}

} // namespace

Monitor::Monitor(RuleSet rules) : rules_(std::move(rules)) {
    ruleRuntime_.reserve(rules_.rules.size());
    for (const auto& rule : rules_.rules) {
        RuleRuntime rt;
        rt.spec = &rule;
        rt.op = withDefaultPeriod(rule.body.op, rules_.defaultCheckEvery);
        rt.split = splitContext(rule.body, {});
        rt.phiAll = rule.body.phi;
        rt.phiAll.insert(rt.phiAll.end(), rt.split.deferred.begin(), rt.split.deferred.end());
        ruleRuntime_.push_back(std::move(rt));
    }
    exprRuntime_.reserve(rules_.exprs.size());
    for (const auto& expr : rules_.exprs) {
        ExprRuntime rt;
        rt.spec = &expr;
        rt.op = withDefaultPeriod(expr.body.op, rules_.defaultCheckEvery);
        auto vars = patternVariables(expr.precondition);
        rt.split = splitContext(expr.body, {vars.begin(), vars.end()});
        rt.phiAll = expr.body.phi;
        rt.phiAll.insert(rt.phiAll.end(), rt.split.deferred.begin(), rt.split.deferred.end());
        rt.waiting.emplace(expr.precondition);
        exprRuntime_.push_back(std::move(rt));
    }
    order_ = rules_.order;
    std::stable_sort(order_.begin(), order_.end(),
                     [this](const RuleSet::DeclRef& a, const RuleSet::DeclRef& b) {
                         return declPriority(rules_, a) < declPriority(rules_, b);
                     });
}

void Monitor::ingest(const TraceEvent& ev) {
    if (report_) throw IngestError("the run is already closed");
    if (pendingTime_) {
        if (ev.t < *pendingTime_)
            throw IngestError("trace time goes backwards at " +
                              std::to_string(ev.t.seconds()));
        if (ev.t > *pendingTime_) flushState(*pendingTime_);
    }
    pendingTime_ = ev.t;
    pendingTrace_.push_back(ev);
}

void Monitor::flushState(Time t) {
    std::vector<IndexedEvent> batch;
    auto apply = [&](TraceEvent ev, bool fromDispatch) {
        ev.t = t;
        try {
            timeline_.ingest(ev);
        } catch (const IngestError& e) {
            if (!fromDispatch) throw;
            noteDiagnostic(t, std::string("dropped action: ") + e.what());
            return;
        }
        if (fromDispatch) dispatched_.push_back(ev);
        if (leavesPastEvent(ev.kind)) batch.push_back({eventCounter_++, ev});
    };
    for (const auto& ev : pendingDispatch_) apply(ev, true);
    for (const auto& ev : pendingTrace_) apply(ev, false);
    pendingDispatch_.clear();
    pendingTrace_.clear();
    pendingTime_.reset();
    if (timeline_.empty()) return;

    Snapshot state = timeline_.last();
    if (!traceStart_) traceStart_ = state.t();
    states_.push_back(state);
    tick(state, batch);
}

void Monitor::tick(const Snapshot& state, const std::vector<IndexedEvent>& batch) {
    for (const auto& ref : order_) {
        if (ref.isExpr) tickExpr(exprRuntime_[ref.index], state, batch);
        else tickRule(ruleRuntime_[ref.index], state);
    }
}

bool Monitor::contextDue(const IntervalOp& op, Time t) const {
    if (!op.checkEvery || !traceStart_) return true;
    const Time* k = std::get_if<Time>(&*op.checkEvery);
    if (!k || k->seconds() <= 0) return true;
    return (t.seconds() - traceStart_->seconds()) % k->seconds() == 0;
}

void Monitor::tickRule(RuleRuntime& rt, const Snapshot& state) {
    if (contextDue(rt.op, state.t())) {
        Binding seed;
        if (rt.op.nowVar) seed.bind(rt.op.nowVar->name, Value{state.t().seconds()});
        for (auto& sol : solveAll(state, rt.split.activation, seed)) {
            if (!rt.seen.insert(sol.signature()).second) continue;
            try {
                IntervalOp ground = substitute(rt.op, sol);
                std::size_t rec = openRecord(rt.spec->name, false, sol, state.t());
                rt.live.push_back(
                    {rec, OpInstance(std::move(ground), rt.phiAll, sol, state.t())});
                ++rt.activations;
            } catch (const FormulaError& e) {
                noteDiagnostic(state.t(),
                               rt.spec->name + ": activation dropped: " + e.what());
            }
        }
    }
    for (std::size_t i = 0; i < rt.live.size();) {
        rt.live[i].op.step(state);
        if (rt.live[i].op.verdict() != Verdict::Provisional) {
            closeRule(rt, rt.live[i], state.t());
            rt.live.erase(rt.live.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
}

void Monitor::tickExpr(ExprRuntime& rt, const Snapshot& state,
                       const std::vector<IndexedEvent>& batch) {
    for (const auto& ev : batch) {
        // Activation below may append to rt.active; the new entry's
        // afterIndex equals the current index, so the guard skips it.
        for (std::size_t i = 0; i < rt.active.size(); ++i) {
            ActiveExpr& act = rt.active[i];
            if (!act.open || ev.index <= act.afterIndex) continue;
            feedActive(rt, act, ev, state);
        }
        Matcher& waiting = *rt.waiting;
        MatchStatus st = waiting.feed(ev.event.term, ev.event.t);
        if (st == MatchStatus::Complete) {
            Binding precond = waiting.binding();
            rt.waiting.emplace(rt.spec->precondition);
            activateExpr(rt, precond, ev.index, state);
        } else if (st == MatchStatus::Incompatible) {
            // The standing watch restarts, and the event that ended the old
            // attempt may well begin the next one.
            rt.waiting.emplace(rt.spec->precondition);
            if (rt.waiting->feed(ev.event.term, ev.event.t) == MatchStatus::Incompatible)
                rt.waiting.emplace(rt.spec->precondition);
            else if (rt.waiting->status() == MatchStatus::Complete) {
                Binding precond = rt.waiting->binding();
                rt.waiting.emplace(rt.spec->precondition);
                activateExpr(rt, precond, ev.index, state);
            }
        }
    }
    for (std::size_t i = 0; i < rt.active.size();) {
        ActiveExpr& act = rt.active[i];
        if (act.open) {
            act.tau.step(state);
            if (act.tau.verdict() != Verdict::Provisional)
                closeExpr(rt, act, outcomeFromVerdict(act.tau.verdict()), state.t(),
                          dispatchBinding(act.tau));
        }
        if (!act.open) rt.active.erase(rt.active.begin() + static_cast<std::ptrdiff_t>(i));
        else ++i;
    }
}

void Monitor::activateExpr(ExprRuntime& rt, const Binding& precond,
                           std::size_t completingIndex, const Snapshot& state) {
    Binding seed = precond;
    if (rt.op.nowVar) seed.bind(rt.op.nowVar->name, Value{state.t().seconds()});
    auto sol = firstSolution(state, rt.split.activation, seed);
    if (!sol) {
        noteDiagnostic(state.t(), rt.spec->name + ": context failed at activation");
        return;
    }
    try {
        IntervalOp ground = substitute(rt.op, *sol);
        std::size_t rec = openRecord(rt.spec->name, true, *sol, state.t());
        ActiveExpr act{rec, OpInstance(std::move(ground), rt.phiAll, *sol, state.t()),
                       {}, {}, completingIndex, true};
        if (rt.spec->expected) act.expected.emplace(applyBinding(*rt.spec->expected, *sol));
        if (rt.spec->breaking) act.breaking.emplace(applyBinding(*rt.spec->breaking, *sol));
        rt.active.push_back(std::move(act));
        ++rt.activations;
    } catch (const FormulaError& e) {
        noteDiagnostic(state.t(), rt.spec->name + ": activation dropped: " + e.what());
    }
}

void Monitor::feedActive(ExprRuntime& rt, ActiveExpr& act, const IndexedEvent& ev,
                         const Snapshot& state) {
    if (act.breaking) {
        if (act.breaking->feed(ev.event.term, ev.event.t) == MatchStatus::Complete) {
            // The formula is probed right now whether or not a check is due.
            OpInstance probe = act.tau;
            probe.step(state, true);
            if (probe.verdict() == Verdict::Violated)
                closeExpr(rt, act, Outcome::Broken, state.t(),
                          merged(act.tau.binding(), act.breaking->binding()),
                          "breaking events arrived while the formula was failing");
            else
                closeExpr(rt, act, Outcome::Discharged, state.t(), act.tau.binding(),
                          "breaking events arrived while the formula held");
            return;
        }
    }
    if (act.expected) {
        MatchStatus st = act.expected->feed(ev.event.term, ev.event.t);
        if (st == MatchStatus::Complete) {
            closeExpr(rt, act, Outcome::Discharged, state.t(), act.tau.binding(),
                      "expected events completed");
        } else if (st == MatchStatus::Incompatible) {
            noteDiagnostic(state.t(),
                           rt.spec->name +
                               ": observed events cannot complete the expected pattern");
            closeExpr(rt, act, Outcome::Discharged, state.t(), act.tau.binding(),
                      "expected pattern became impossible");
        }
    }
}

void Monitor::closeRule(RuleRuntime& rt, RuleInstance& inst, Time at) {
    InstanceRecord& rec = records_[inst.record];
    rec.outcome = outcomeFromVerdict(inst.op.verdict());
    rec.decidedAt = at;
    if (rec.outcome == Outcome::Violated)
        dispatch(rt.spec->repair, inst.op.binding(), rec, at);
    else if (rec.outcome == Outcome::Holds)
        dispatch(rt.spec->improvement, dispatchBinding(inst.op), rec, at);
    closed_.push_back(
        {inst.record, inst.op.op(), &rt.phiAll, inst.op.binding(), inst.op.activationTime()});
}

void Monitor::closeExpr(ExprRuntime& rt, ActiveExpr& act, Outcome outcome, Time at,
                        const Binding& dispatchWith, std::optional<std::string> note) {
    act.open = false;
    InstanceRecord& rec = records_[act.record];
    rec.outcome = outcome;
    rec.decidedAt = at;
    if (note) rec.note = std::move(note);
    if (outcome == Outcome::Violated)
        dispatch(rt.spec->repairViolation, dispatchWith, rec, at);
    else if (outcome == Outcome::Broken)
        dispatch(rt.spec->repairBroken, dispatchWith, rec, at);
    closed_.push_back(
        {act.record, act.tau.op(), &rt.phiAll, act.tau.binding(), act.tau.activationTime()});
}

void Monitor::dispatch(const std::vector<RepairAtom>& atoms, const Binding& binding,
                       InstanceRecord& rec, Time at) {
    for (const auto& atom : atoms) {
        Term term = applyBinding(atom.atom, binding);
        if (!term.ground()) {
            noteDiagnostic(at, rec.owner + ": unbound variable in " + formatTerm(term) +
                                   ", replaced by _");
            for (auto& arg : term.args)
                if (std::holds_alternative<Variable>(arg)) arg = Symbol{"_"};
        }
        EventKind kind = atom.kind == RepairAtom::Kind::Assert    ? EventKind::AssertFact
                         : atom.kind == RepairAtom::Kind::Retract ? EventKind::RetractFact
                                                                  : EventKind::Action;
        pendingDispatch_.push_back({at, kind, term});
        rec.dispatched.push_back(std::string(eventKindName(kind)) + " " + formatTerm(term));
    }
}

std::size_t Monitor::openRecord(const std::string& owner, bool isExpression,
                                Binding binding, Time at) {
    InstanceRecord rec;
    rec.owner = owner;
    rec.isExpression = isExpression;
    rec.binding = std::move(binding);
    rec.activatedAt = at;
    records_.push_back(std::move(rec));
    return records_.size() - 1;
}

void Monitor::noteDiagnostic(Time at, std::string message) {
    diagnostics_.push_back({at, std::move(message)});
}

const MonitorReport& Monitor::finish() {
    if (report_) return *report_;
    if (pendingTime_) flushState(*pendingTime_);

    if (!states_.empty()) {
        Time end = states_.back().t();
        for (const auto& ref : order_) {
            if (ref.isExpr) {
                auto& rt = exprRuntime_[ref.index];
                for (auto& act : rt.active) {
                    if (!act.open) continue;
                    act.tau.finalize(end);
                    closeExpr(rt, act, outcomeFromVerdict(act.tau.verdict()), end,
                              dispatchBinding(act.tau));
                }
                rt.active.clear();
            } else {
                auto& rt = ruleRuntime_[ref.index];
                for (auto& inst : rt.live) {
                    inst.op.finalize(end);
                    closeRule(rt, inst, end);
                }
                rt.live.clear();
            }
        }
        if (!pendingDispatch_.empty()) {
            Time syn = Time(end.seconds() + 1);
            for (auto ev : pendingDispatch_) {
                ev.t = syn;
                try {
                    timeline_.ingest(ev);
                } catch (const IngestError& e) {
                    noteDiagnostic(syn, std::string("dropped action: ") + e.what());
                    continue;
                }
                dispatched_.push_back(ev);
            }
            pendingDispatch_.clear();
        }
    }

    MonitorReport rep;
    rep.states = static_cast<std::uint32_t>(states_.size());
    if (!states_.empty()) {
        rep.firstState = states_.front().t();
        rep.lastState = states_.back().t();
    }
    for (const auto& ref : rules_.order) {
        if (ref.isExpr)
            rep.declarations.push_back({rules_.exprs[ref.index].name, true,
                                        exprRuntime_[ref.index].activations});
        else
            rep.declarations.push_back({rules_.rules[ref.index].name, false,
                                        ruleRuntime_[ref.index].activations});
    }
    rep.instances = records_;
    rep.dispatched = dispatched_;
    rep.diagnostics = diagnostics_;
    bool bad = false;
    bool weak = false;
    for (const auto& rec : rep.instances) {
        if (rec.outcome == Outcome::Violated || rec.outcome == Outcome::Broken) bad = true;
        else if (rec.outcome == Outcome::WeakHolds) weak = true;
    }
    rep.coherence = bad    ? Coherence::Incoherent
                    : weak ? Coherence::WeaklyCoherent
                           : Coherence::Coherent;
    report_ = std::move(rep);
    return *report_;
}

std::vector<CrossCheck> Monitor::crossValidate() const {
    std::vector<CrossCheck> out;
    out.reserve(closed_.size());
    for (const auto& c : closed_) {
        const InstanceRecord& rec = records_[c.record];
        CrossCheck cc;
        cc.owner = rec.owner;
        cc.binding = rec.binding.signature();
        cc.incremental = rec.outcome;
        if (!formulaDecided(rec.outcome)) {
            cc.skipped = true;
            out.push_back(std::move(cc));
            continue;
        }
        cc.reference = oracleFormula(c.op, *c.phi, c.binding, states_, c.activation);
        Verdict v = rec.outcome == Outcome::Holds      ? Verdict::Holds
                    : rec.outcome == Outcome::Violated ? Verdict::Violated
                                                       : Verdict::WeakHolds;
        cc.match = oracleScale(v) == cc.reference;
        out.push_back(std::move(cc));
    }
    return out;
}

} // namespace ailtl
