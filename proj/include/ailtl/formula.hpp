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
#ifndef AILTL_FORMULA_HPP
#define AILTL_FORMULA_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ailtl/literal.hpp"
#include "ailtl/source.hpp"

namespace ailtl {

/// The interval operators of the rule language.
///
/// Bound conventions: every bound is an absolute trace time except for
/// NEXT(m) and the one-bound EVENTUALLY(m), whose windows are anchored at
/// the state the rule instance activates in. Nesting is impossible by
/// construction: the checked formula under an operator is a flat
/// conjunction of literals.
enum class OpKind {
    Now,                // at the activation state
    Next,               // NEXT(m): at the first state at/after activation+m
    Eventually,         // EVENTUALLY(m): somewhere within activation+m
    EventuallyBetween,  // EVENTUALLY(m,n)
    Always,             // ALWAYS(m): from m on
    AlwaysStrong,       // ALWAYS_S(m): from m on, and false before m
    AlwaysBetween,      // ALWAYS(m,n)
    AlwaysStrongBetween,// ALWAYS_S(m,n): false before m, true on [m,n], false after
    NeverBefore,        // NEVER_B(m): nowhere before m
    NeverAfter,         // NEVER_A(m): nowhere after m
    NeverBetween,       // NEVER(m,n)
    Sometimes,          // SOMETIMES(m;f): at every checkpoint m, m+f, ...
    SometimesBetween,   // SOMETIMES(m,n;f): checkpoints capped at n
};

const char* opKindName(OpKind kind);

/// A bound that is either a concrete time or a variable the context binds.
using BoundArg = std::variant<Time, Variable>;

struct IntervalOp {
    OpKind kind = OpKind::Now;
    std::optional<BoundArg> m;
    std::optional<BoundArg> n;
    std::optional<BoundArg> f;       // checkpoint period of the SOMETIMES forms
    std::optional<BoundArg> checkEvery; // evaluation frequency `; k`
    std::optional<Variable> nowVar;  // NOW(T) binds T to the activation time
    SourceSpan span;

    bool ground() const;

    bool operator==(const IntervalOp& other) const
    {
        return kind == other.kind && m == other.m && n == other.n && f == other.f &&
               checkEvery == other.checkEvery && nowVar == other.nowVar;
    }
};

/// Operator plus checked conjunction plus activation context.
///
/// The context is evaluated when the rule fires and must ground the
/// operator bounds. Variables local to `phi` are existential per state;
/// context constraints over such variables are deferred and re-checked
/// together with `phi`.
struct ContextualFormula {
    IntervalOp op;
    std::vector<Literal> phi;
    std::vector<Literal> context;

    bool operator==(const ContextualFormula&) const = default;
};

/// One action requested on a verdict. Assert and retract edit the fact
/// store of the next state; anything else is emitted as an action event.
struct RepairAtom {
    enum class Kind { Emit, Assert, Retract };

    Kind kind = Kind::Emit;
    Term atom;

    bool operator==(const RepairAtom&) const = default;
};

/// A monitored rule: on Violated the repair actions run, on Holds the
/// improvement actions run.
struct RuleSpec {
    std::string name;
    int priority = 100;
    ContextualFormula body;
    std::vector<RepairAtom> repair;
    std::vector<RepairAtom> improvement;
    SourceSpan span;

    bool operator==(const RuleSpec& other) const
    {
        return name == other.name && priority == other.priority && body == other.body &&
               repair == other.repair && improvement == other.improvement;
    }
};

enum class Multiplicity { One, Star, Plus };
enum class Connective { AnyOrder, Before, ImmediatelyBefore };

/// One element of an event sequence pattern. `link` relates the element to
/// its successor; the last element's link is ignored.
struct PatternElement {
    bool wildcard = false; // `_`: exactly one event of any shape
    Term event;
    bool pastMarker = false; // written with the `_P` suffix
    Multiplicity mult = Multiplicity::One;
    Connective link = Connective::AnyOrder;
    std::optional<Variable> atVar; // binds the matched occurrence time

    bool operator==(const PatternElement&) const = default;
};

struct EventPattern {
    std::vector<PatternElement> elements;

    bool operator==(const EventPattern&) const = default;
};

/// An event-sequence-guarded expression. Once the precondition pattern
/// completes, the formula is monitored; the breaking pattern ends the
/// obligation, with the second repair list when the formula had already
/// failed.
struct EvolutionaryExpr {
    std::string name;
    int priority = 100;
    EventPattern precondition;
    ContextualFormula body;
    std::optional<EventPattern> expected;
    std::optional<EventPattern> breaking;
    std::vector<RepairAtom> repairViolation;
    std::vector<RepairAtom> repairBroken;
    SourceSpan span;

    bool operator==(const EvolutionaryExpr& other) const
    {
        return name == other.name && priority == other.priority &&
               precondition == other.precondition && body == other.body &&
               expected == other.expected && breaking == other.breaking &&
               repairViolation == other.repairViolation && repairBroken == other.repairBroken;
    }
};

/// A parsed rule file. Declaration order is preserved for dispatch
/// tie-breaking.
struct RuleSet {
    struct DeclRef {
        bool isExpr = false;
        std::size_t index = 0;

        bool operator==(const DeclRef&) const = default;
    };

    std::vector<RuleSpec> rules;
    std::vector<EvolutionaryExpr> exprs;
    std::vector<DeclRef> order;
    std::optional<Time> defaultCheckEvery;
    int defaultPriority = 100;

    bool operator==(const RuleSet&) const = default;
};

/// The states an operator obligates, as resolved times. `w`/`crucial`
/// absent means unbounded; for ALWAYS_S(m,n) the crucial time is n+1
/// because the first state after the window must refute the formula.
struct InterestInterval {
    Time v;
    std::optional<Time> w;
    std::optional<Time> crucial;

    bool operator==(const InterestInterval&) const = default;
};

class FormulaError : public std::runtime_error {
public:
    explicit FormulaError(const std::string& what) : std::runtime_error(what) {}
};

/// Resolves the obligation window of a ground operator. Throws
/// FormulaError on unbound bounds or a reversed interval.
InterestInterval interestInterval(const IntervalOp& op, Time activation);

Time boundTime(const BoundArg& bound);

/// Free variables in declaration order, each name once.
std::vector<std::string> freeVariables(const IntervalOp& op);
std::vector<std::string> freeVariables(const ContextualFormula& formula);

/// Replaces variables by their bound values. The strict form throws
/// FormulaError when any variable stays unbound.
IntervalOp applyBinding(const IntervalOp& op, const Binding& binding);
Literal applyBinding(const Literal& lit, const Binding& binding);
IntervalOp substitute(const IntervalOp& op, const Binding& binding);

/// Variables a pattern binds when it completes: argument variables of the
/// element terms plus the `at` variables, each name once.
std::vector<std::string> patternVariables(const EventPattern& pattern);

/// Replaces bound variables in the element terms; `at` variables and
/// wildcards are left alone.
EventPattern applyBinding(const EventPattern& pattern, const Binding& binding);

} // namespace ailtl

#endif
