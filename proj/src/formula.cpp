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
#include "ailtl/formula.hpp"

#include <algorithm>

namespace ailtl {

const char* opKindName(OpKind kind)
{
    switch (kind) {
    case OpKind::Now: return "NOW";
    case OpKind::Next: return "NEXT";
    case OpKind::Eventually:
    case OpKind::EventuallyBetween: return "EVENTUALLY";
    case OpKind::Always:
    case OpKind::AlwaysBetween: return "ALWAYS";
    case OpKind::AlwaysStrong:
    case OpKind::AlwaysStrongBetween: return "ALWAYS_S";
    case OpKind::NeverBefore: return "NEVER_B";
    case OpKind::NeverAfter: return "NEVER_A";
    case OpKind::NeverBetween: return "NEVER";
    case OpKind::Sometimes:
    case OpKind::SometimesBetween: return "SOMETIMES";
    }
    return "?";
}

namespace {

bool boundGround(const std::optional<BoundArg>& b)
{
    return !b || std::holds_alternative<Time>(*b);
}

void collectBound(const std::optional<BoundArg>& b, std::vector<std::string>& out)
{
    if (b) {
        if (const auto* var = std::get_if<Variable>(&*b)) {
            if (!var->anonymous()) {
                out.push_back(var->name);
            }
        }
    }
}

void dedupe(std::vector<std::string>& names)
{
    std::vector<std::string> seen;
    names.erase(std::remove_if(names.begin(), names.end(),
                               [&](const std::string& n) {
                                   if (std::find(seen.begin(), seen.end(), n) != seen.end()) {
                                       return true;
                                   }
                                   seen.push_back(n);
                                   return false;
                               }),
                names.end());
}

} // namespace

bool IntervalOp::ground() const
{
    return boundGround(m) && boundGround(n) && boundGround(f) && boundGround(checkEvery);
}

Time boundTime(const BoundArg& bound)
{
    if (const auto* t = std::get_if<Time>(&bound)) {
        return *t;
    }
    throw FormulaError("operator bound is not ground: " + std::get<Variable>(bound).name);
}

InterestInterval interestInterval(const IntervalOp& op, Time activation)
{
    auto need = [&](const std::optional<BoundArg>& b, const char* what) -> Time {
        if (!b) {
            throw FormulaError(std::string("missing operator bound ") + what);
        }
        return boundTime(*b);
    };
    auto checkOrder = [](Time lo, Time hi) {
        if (hi < lo) {
            throw FormulaError("reversed interval: [" + formatTime(lo) + ", " + formatTime(hi) + "]");
        }
    };

    switch (op.kind) {
    case OpKind::Now:
        return {activation, activation, activation};
    case OpKind::Next: {
        const Time target = activation.plusSeconds(need(op.m, "m").seconds());
        return {target, target, target};
    }
    case OpKind::Eventually: {
        const Time hi = activation.plusSeconds(need(op.m, "m").seconds());
        return {activation, hi, hi};
    }
    case OpKind::EventuallyBetween:
    case OpKind::AlwaysBetween:
    case OpKind::NeverBetween: {
        const Time lo = need(op.m, "m");
        const Time hi = need(op.n, "n");
        checkOrder(lo, hi);
        return {lo, hi, hi};
    }
    case OpKind::Always:
        return {need(op.m, "m"), std::nullopt, std::nullopt};
    case OpKind::AlwaysStrong:
        need(op.m, "m");
        return {Time(0), std::nullopt, std::nullopt};
    case OpKind::AlwaysStrongBetween: {
        const Time lo = need(op.m, "m");
        const Time hi = need(op.n, "n");
        checkOrder(lo, hi);
        // The first state after the window must refute the formula.
        return {Time(0), hi, hi.plusSeconds(1)};
    }
    case OpKind::NeverBefore: {
        const Time m = need(op.m, "m");
        // The window [0, m) is empty for m = 0.
        const Time w = m.seconds() > 0 ? Time(m.seconds() - 1) : Time(0);
        return {Time(0), w, w};
    }
    case OpKind::NeverAfter:
        return {need(op.m, "m").plusSeconds(1), std::nullopt, std::nullopt};
    case OpKind::Sometimes:
        if (need(op.f, "f").seconds() <= 0) {
            throw FormulaError("checkpoint period must be positive");
        }
        return {need(op.m, "m"), std::nullopt, std::nullopt};
    case OpKind::SometimesBetween: {
        const Time lo = need(op.m, "m");
        const Time hi = need(op.n, "n");
        const Time f = need(op.f, "f");
        checkOrder(lo, hi);
        if (f.seconds() <= 0) {
            throw FormulaError("checkpoint period must be positive");
        }
        const std::int64_t steps = (hi.seconds() - lo.seconds()) / f.seconds();
        const Time last = lo.plusSeconds(steps * f.seconds());
        return {lo, last, last};
    }
    }
    throw FormulaError("unknown operator");
}

std::vector<std::string> freeVariables(const IntervalOp& op)
{
    std::vector<std::string> out;
    collectBound(op.m, out);
    collectBound(op.n, out);
    collectBound(op.f, out);
    collectBound(op.checkEvery, out);
    dedupe(out);
    return out;
}

std::vector<std::string> freeVariables(const ContextualFormula& formula)
{
    std::vector<std::string> out = freeVariables(formula.op);
    for (const auto& lit : formula.phi) {
        collectVariables(lit, out);
    }
    for (const auto& lit : formula.context) {
        collectVariables(lit, out);
    }
    dedupe(out);
    return out;
}

namespace {

std::optional<BoundArg> bindBound(const std::optional<BoundArg>& b, const Binding& binding, bool strict)
{
    if (!b) {
        return b;
    }
    const auto* var = std::get_if<Variable>(&*b);
    if (var == nullptr) {
        return b;
    }
    auto value = binding.lookup(var->name);
    if (!value) {
        if (strict) {
            throw FormulaError("missing binding for operator bound " + var->name);
        }
        return b;
    }
    const auto* num = std::get_if<std::int64_t>(&*value);
    if (num == nullptr) {
        throw FormulaError("operator bound " + var->name + " is bound to a symbol");
    }
    if (*num < 0) {
        throw FormulaError("operator bound " + var->name + " is negative");
    }
    return BoundArg(Time(*num));
}

ArithExpr bindArith(const ArithExpr& expr, const Binding& binding)
{
    switch (expr.node) {
    case ArithExpr::Node::VarRef:
        if (auto value = binding.lookup(expr.name)) {
            if (const auto* num = std::get_if<std::int64_t>(&*value)) {
                return ArithExpr::num(*num);
            }
            return ArithExpr::sym(std::get<Symbol>(*value).name);
        }
        return expr;
    case ArithExpr::Node::Number:
    case ArithExpr::Node::SymbolRef:
        return expr;
    default:
        return ArithExpr::bin(expr.node, bindArith(*expr.lhs, binding), bindArith(*expr.rhs, binding));
    }
}

} // namespace

IntervalOp applyBinding(const IntervalOp& op, const Binding& binding)
{
    IntervalOp out = op;
    out.m = bindBound(op.m, binding, false);
    out.n = bindBound(op.n, binding, false);
    out.f = bindBound(op.f, binding, false);
    out.checkEvery = bindBound(op.checkEvery, binding, false);
    return out;
}

IntervalOp substitute(const IntervalOp& op, const Binding& binding)
{
    IntervalOp out = op;
    out.m = bindBound(op.m, binding, true);
    out.n = bindBound(op.n, binding, true);
    out.f = bindBound(op.f, binding, true);
    out.checkEvery = bindBound(op.checkEvery, binding, true);
    return out;
}

Literal applyBinding(const Literal& lit, const Binding& binding)
{
    Literal out = lit;
    if (auto* fact = std::get_if<FactAtom>(&out.body)) {
        fact->term = ailtl::applyBinding(fact->term, binding);
    } else if (auto* past = std::get_if<PastAtom>(&out.body)) {
        past->term = ailtl::applyBinding(past->term, binding);
        if (past->at) {
            if (const auto* var = std::get_if<Variable>(&*past->at)) {
                if (auto value = binding.lookup(var->name)) {
                    if (const auto* num = std::get_if<std::int64_t>(&*value); num != nullptr && *num >= 0) {
                        past->at = Time(*num);
                    }
                }
            }
        }
    } else if (auto* builtin = std::get_if<BuiltinAtom>(&out.body)) {
        builtin->lhs = bindArith(builtin->lhs, binding);
        builtin->rhs = bindArith(builtin->rhs, binding);
    }
    return out;
}

std::vector<std::string> patternVariables(const EventPattern& pattern)
{
    std::vector<std::string> names;
    for (const auto& elem : pattern.elements) {
        if (!elem.wildcard) collectVariables(elem.event, names);
        if (elem.atVar) names.push_back(elem.atVar->name);
    }
    std::vector<std::string> out;
    for (auto& n : names)
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
    return out;
}

EventPattern applyBinding(const EventPattern& pattern, const Binding& binding)
{
    EventPattern out = pattern;
    for (auto& elem : out.elements)
        if (!elem.wildcard) elem.event = applyBinding(elem.event, binding);
    return out;
}

} // namespace ailtl
