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
#ifndef AILTL_EVALUATOR_HPP
#define AILTL_EVALUATOR_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ailtl/formula.hpp"
#include "ailtl/term.hpp"
#include "ailtl/timeline.hpp"

namespace ailtl {

enum class Verdict { Provisional, Holds, Violated, WeakHolds };

const char* verdictName(Verdict v);

/// Splits a context into the literals solved at activation and the
/// constraints that travel with the formula body instead. A context literal
/// is deferred when one of its variables belongs to the body's positive
/// atoms and nothing else in the context could supply it.
struct ContextSplit {
    std::vector<Literal> activation;
    std::vector<Literal> deferred;
};

ContextSplit splitContext(const ContextualFormula& formula,
                          const std::set<std::string>& extraSources);

/// One activated interval-operator obligation, stepped state by state.
///
/// The verdict starts Provisional. Witness-style decisions (a hit for
/// EVENTUALLY, an in-window failure for ALWAYS or NEVER, the target state of
/// NOW and NEXT) land on the state that produces them; a window that merely
/// ran out decides on the first state strictly past its crucial instant.
/// finalize() closes a still-provisional instance at end of trace: a fully
/// observed window gets its definitive verdict, anything else WeakHolds.
///
/// A check period k samples the in-window checks of EVENTUALLY, ALWAYS and
/// NEVER forms at states due since activation. SOMETIMES runs its own
/// checkpoint schedule, and the single-state decisions of NOW, NEXT and the
/// past-the-window check of strong ALWAYS are never sampled away.
class OpInstance {
public:
    /// op must be ground. phi is the evaluation list: body literals first,
    /// then any deferred context constraints.
    OpInstance(IntervalOp op, std::vector<Literal> phi, Binding binding, Time activation);

    /// force bypasses the check-period gate (used for break checks).
    Verdict step(const Snapshot& state, bool force = false);

    Verdict finalize(Time end);

    Verdict verdict() const { return verdict_; }
    bool due(Time t) const;
    Time activationTime() const { return activation_; }
    const InterestInterval& interval() const { return interval_; }
    const IntervalOp& op() const { return op_; }
    const Binding& binding() const { return binding_; }

    /// Extended binding from the φ solution that produced a Holds verdict,
    /// when one did.
    const std::optional<Binding>& witness() const { return witness_; }

private:
    bool phiTrue(const Snapshot& state);
    void decide(Verdict v);

    IntervalOp op_;
    std::vector<Literal> phi_;
    Binding binding_;
    Time activation_;
    InterestInterval interval_;
    Verdict verdict_ = Verdict::Provisional;
    std::optional<Binding> witness_;
    std::optional<Binding> lastSolution_;
    Time nextCheckpoint_{0};
    std::optional<Time> lastCheckpoint_;
};

} // namespace ailtl

#endif
