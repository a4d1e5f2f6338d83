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
#ifndef AILTL_MONITOR_HPP
#define AILTL_MONITOR_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ailtl/evaluator.hpp"
#include "ailtl/matcher.hpp"
#include "ailtl/oracle.hpp"

namespace ailtl {

/// Final state of one rule or expression activation.
enum class Outcome {
    Pending,
    Holds,
    Violated,
    WeakHolds,
    Broken,     // a breaking event arrived while the formula was failing
    Discharged, // the obligation ended without a verdict against it
};

const char* outcomeName(Outcome o);

/// Overall verdict for a run. A run is incoherent as soon as one activation
/// is violated or broken, coherent when every activation ended well, and
/// weakly coherent when the only blemish is an obligation the trace was too
/// short to settle.
enum class Coherence { Coherent, WeaklyCoherent, Incoherent };

const char* coherenceName(Coherence c);
int coherenceExitCode(Coherence c);

/// One activation of a declared rule or expression.
struct InstanceRecord {
    std::string owner;
    bool isExpression = false;
    Binding binding;
    Time activatedAt;
    Outcome outcome = Outcome::Pending;
    std::optional<Time> decidedAt;
    std::vector<std::string> dispatched; // "kind term" per queued action
    std::optional<std::string> note;
};

struct Diagnostic {
    Time at;
    std::string message;

    auto operator<=>(const Diagnostic&) const = default;
};

struct DeclarationSummary {
    std::string name;
    bool isExpression = false;
    std::uint32_t activations = 0;
};

struct MonitorReport {
    Coherence coherence = Coherence::Coherent;
    std::uint32_t states = 0;
    std::optional<Time> firstState;
    std::optional<Time> lastState;
    std::vector<DeclarationSummary> declarations;
    std::vector<InstanceRecord> instances;
    std::vector<TraceEvent> dispatched; // as materialized, synthetic state included
    std::vector<Diagnostic> diagnostics;
};

/// Agreement check of one finished activation against the reference
/// evaluation of the same formula over the full run.
struct CrossCheck {
    std::string owner;
    std::string binding;
    Outcome incremental = Outcome::Pending;
    OracleVerdict reference = OracleVerdict::Undetermined;
    bool skipped = false; // pattern-decided outcomes have no formula reference
    bool match = true;
};

/// Runs a rule set over a trace, state by state.
///
/// Events are buffered per timestamp; a later timestamp closes the pending
/// state, which is then evaluated in one tick. Actions requested during a
/// tick materialize as events of the next state; actions still queued when
/// the trace ends land in one synthetic closing state that is recorded but
/// not evaluated.
class Monitor {
public:
    explicit Monitor(RuleSet rules);

    /// Feeds one trace event. Times must be non-decreasing.
    void ingest(const TraceEvent& ev);

    /// Closes the run, settles every open activation and computes the
    /// overall verdict. Further ingest calls are rejected.
    const MonitorReport& finish();

    /// Re-evaluates every finished activation against the reference
    /// evaluation. Only meaningful after finish().
    std::vector<CrossCheck> crossValidate() const;

    const Timeline& timeline() const { return timeline_; }

    /// The states that were evaluated, in order. The synthetic closing
    /// state is not part of this list.
    const std::vector<Snapshot>& states() const { return states_; }

private:
    struct IndexedEvent {
        std::size_t index = 0;
        TraceEvent event;
    };

    struct RuleInstance {
        std::size_t record = 0;
        OpInstance op;
    };

    struct RuleRuntime {
        const RuleSpec* spec = nullptr;
        IntervalOp op; // declaration operator with the file default applied
        ContextSplit split;
        std::vector<Literal> phiAll;
        std::set<std::string> seen;
        std::vector<RuleInstance> live;
        std::uint32_t activations = 0;
    };

    struct ActiveExpr {
        std::size_t record = 0;
        OpInstance tau;
        std::optional<Matcher> expected;
        std::optional<Matcher> breaking;
        std::size_t afterIndex = 0; // consume only later events
        bool open = true;
    };

    struct ExprRuntime {
        const EvolutionaryExpr* spec = nullptr;
        IntervalOp op;
        ContextSplit split;
        std::vector<Literal> phiAll;
        std::optional<Matcher> waiting;
        std::vector<ActiveExpr> active;
        std::uint32_t activations = 0;
    };

    struct Closed {
        std::size_t record = 0;
        IntervalOp op;
        const std::vector<Literal>* phi = nullptr;
        Binding binding;
        Time activation;
    };

    void flushState(Time t);
    void tick(const Snapshot& state, const std::vector<IndexedEvent>& batch);
    void tickRule(RuleRuntime& rt, const Snapshot& state);
    void tickExpr(ExprRuntime& rt, const Snapshot& state,
                  const std::vector<IndexedEvent>& batch);
    void activateExpr(ExprRuntime& rt, const Binding& precond, std::size_t completingIndex,
                      const Snapshot& state);
    void feedActive(ExprRuntime& rt, ActiveExpr& act, const IndexedEvent& ev,
                    const Snapshot& state);
    void closeRule(RuleRuntime& rt, RuleInstance& inst, Time at);
    void closeExpr(ExprRuntime& rt, ActiveExpr& act, Outcome outcome, Time at,
                   const Binding& dispatchWith, std::optional<std::string> note = {});
    void dispatch(const std::vector<RepairAtom>& atoms, const Binding& binding,
                  InstanceRecord& rec, Time at);
    bool contextDue(const IntervalOp& op, Time t) const;
    std::size_t openRecord(const std::string& owner, bool isExpression, Binding binding,
                           Time at);
    void noteDiagnostic(Time at, std::string message);

    RuleSet rules_;
    Timeline timeline_;
    std::vector<RuleSet::DeclRef> order_;
    std::vector<RuleRuntime> ruleRuntime_;
    std::vector<ExprRuntime> exprRuntime_;

    std::vector<TraceEvent> pendingTrace_;
    std::optional<Time> pendingTime_;
    std::vector<TraceEvent> pendingDispatch_;
    std::size_t eventCounter_ = 0;
    std::optional<Time> traceStart_;
    std::vector<Snapshot> states_;

    std::vector<InstanceRecord> records_;
    std::vector<Closed> closed_;
    std::vector<Diagnostic> diagnostics_;
    std::vector<TraceEvent> dispatched_;
    std::optional<MonitorReport> report_;
};

} // namespace ailtl

#endif
