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
#include "ailtl/query.hpp"

#include <array>

namespace ailtl {

namespace {

std::optional<Value> evalArith(const ArithExpr& expr, const Binding& binding);

std::optional<std::int64_t> evalInt(const ArithExpr& expr, const Binding& binding)
{
    auto v = evalArith(expr, binding);
    if (!v) {
        return std::nullopt;
    }
    if (const auto* num = std::get_if<std::int64_t>(&*v)) {
        return *num;
    }
    return std::nullopt; // symbol where a number is needed
}

std::optional<Value> evalArith(const ArithExpr& expr, const Binding& binding)
{
    switch (expr.node) {
    case ArithExpr::Node::Number:
        return Value(expr.number);
    case ArithExpr::Node::SymbolRef:
        return Value(Symbol{expr.name});
    case ArithExpr::Node::VarRef: {
        auto v = binding.lookup(expr.name);
        if (!v) {
            throw QueryError("unbound variable " + expr.name + " in builtin");
        }
        return v;
    }
    default: {
        auto l = evalInt(*expr.lhs, binding);
        auto r = evalInt(*expr.rhs, binding);
        if (!l || !r) {
            return std::nullopt;
        }
        std::int64_t out = 0;
        switch (expr.node) {
        case ArithExpr::Node::Add:
            if (__builtin_add_overflow(*l, *r, &out)) return std::nullopt;
            break;
        case ArithExpr::Node::Sub:
            if (__builtin_sub_overflow(*l, *r, &out)) return std::nullopt;
            break;
        case ArithExpr::Node::Mul:
            if (__builtin_mul_overflow(*l, *r, &out)) return std::nullopt;
            break;
        case ArithExpr::Node::Div:
            if (*r == 0) return std::nullopt;
            out = *l / *r;
            break;
        default:
            return std::nullopt;
        }
        return Value(out);
    }
    }
}

bool compareValues(CompareOp op, const Value& l, const Value& r)
{
    const auto* ln = std::get_if<std::int64_t>(&l);
    const auto* rn = std::get_if<std::int64_t>(&r);
    if (op == CompareOp::Eq) {
        return l == r;
    }
    if (op == CompareOp::Ne) {
        return l != r;
    }
    // Ordering comparisons hold within one kind only; mixed kinds fail.
    if (ln != nullptr && rn != nullptr) {
        switch (op) {
        case CompareOp::Lt: return *ln < *rn;
        case CompareOp::Le: return *ln <= *rn;
        case CompareOp::Gt: return *ln > *rn;
        case CompareOp::Ge: return *ln >= *rn;
        default: return false;
        }
    }
    const auto* ls = std::get_if<Symbol>(&l);
    const auto* rs = std::get_if<Symbol>(&r);
    if (ls != nullptr && rs != nullptr) {
        switch (op) {
        case CompareOp::Lt: return ls->name < rs->name;
        case CompareOp::Le: return ls->name <= rs->name;
        case CompareOp::Gt: return ls->name > rs->name;
        case CompareOp::Ge: return ls->name >= rs->name;
        default: return false;
        }
    }
    return false;
}

/// Bare unbound variable usable as an assignment target.
const std::string* assignTarget(const ArithExpr& expr, const Binding& binding)
{
    if (expr.node == ArithExpr::Node::VarRef && expr.name != "_" && !binding.lookup(expr.name)) {
        return &expr.name;
    }
    return nullptr;
}

std::vector<Binding> evalBuiltin(const BuiltinAtom& builtin, const Binding& binding)
{
    if (builtin.op == CompareOp::Eq) {
        if (const auto* target = assignTarget(builtin.lhs, binding)) {
            auto v = evalArith(builtin.rhs, binding);
            if (!v) {
                return {};
            }
            Binding extended = binding;
            extended.bind(*target, *v);
            return {extended};
        }
        if (const auto* target = assignTarget(builtin.rhs, binding)) {
            auto v = evalArith(builtin.lhs, binding);
            if (!v) {
                return {};
            }
            Binding extended = binding;
            extended.bind(*target, *v);
            return {extended};
        }
    }
    auto l = evalArith(builtin.lhs, binding);
    auto r = evalArith(builtin.rhs, binding);
    if (!l || !r) {
        return {};
    }
    if (compareValues(builtin.op, *l, *r)) {
        return {binding};
    }
    return {};
}

bool timeSlotMatches(const std::optional<std::variant<Variable, Time>>& at, Time occurred,
                     Binding& binding)
{
    if (!at) {
        return true;
    }
    if (const auto* var = std::get_if<Variable>(&*at)) {
        if (var->anonymous()) {
            return true;
        }
        return binding.bind(var->name, Value(occurred.seconds()));
    }
    return std::get<Time>(*at) == occurred;
}

std::vector<Binding> evalPast(const Snapshot& snapshot, const PastAtom& past, const Binding& binding)
{
    static constexpr std::array<EventKind, 3> kObservable = {EventKind::External, EventKind::Action,
                                                             EventKind::Internal};
    std::vector<Binding> out;
    const auto arity = static_cast<std::uint32_t>(past.term.args.size());
    for (EventKind kind : kObservable) {
        if (past.kind && *past.kind != kind) {
            continue;
        }
        auto occ = snapshot.currentPast(past.term.functor, arity, kind);
        if (!occ) {
            continue;
        }
        Binding candidate = binding;
        if (unify(past.term, occ->term, candidate) && timeSlotMatches(past.at, occ->t, candidate)) {
            out.push_back(std::move(candidate));
        }
    }
    return out;
}

void requireGroundForNegation(const Literal& lit, const Binding& binding)
{
    std::vector<std::string> vars;
    collectVariables(lit, vars);
    for (const auto& name : vars) {
        if (!binding.lookup(name)) {
            throw QueryError("unbound variable " + name + " in negated literal");
        }
    }
}

} // namespace

std::vector<Binding> queryLiteral(const Snapshot& snapshot, const Literal& lit, const Binding& binding)
{
    if (!lit.positive) {
        requireGroundForNegation(lit, binding);
        Literal positive = lit;
        positive.positive = true;
        const bool any = !queryLiteral(snapshot, positive, binding).empty();
        if (any) {
            return {};
        }
        return {binding};
    }

    if (const auto* fact = std::get_if<FactAtom>(&lit.body)) {
        std::vector<Binding> out;
        snapshot.matchFacts(applyBinding(fact->term, binding), binding,
                            [&](const Binding& b) { out.push_back(b); });
        return out;
    }
    if (const auto* past = std::get_if<PastAtom>(&lit.body)) {
        PastAtom grounded = *past;
        grounded.term = applyBinding(grounded.term, binding);
        return evalPast(snapshot, grounded, binding);
    }
    if (const auto* now = std::get_if<NowAtom>(&lit.body)) {
        Binding extended = binding;
        if (now->var.anonymous() || extended.bind(now->var.name, Value(snapshot.t().seconds()))) {
            return {extended};
        }
        return {};
    }
    return evalBuiltin(std::get<BuiltinAtom>(lit.body), binding);
}

std::vector<Binding> solveAll(const Snapshot& snapshot, std::span<const Literal> literals,
                              const Binding& binding)
{
    std::vector<Binding> frontier = {binding};
    for (const Literal& lit : literals) {
        std::vector<Binding> next;
        for (const Binding& b : frontier) {
            auto extensions = queryLiteral(snapshot, lit, b);
            next.insert(next.end(), extensions.begin(), extensions.end());
        }
        if (next.empty()) {
            return {};
        }
        frontier = std::move(next);
    }
    return frontier;
}

namespace {

bool solveFirst(const Snapshot& snapshot, std::span<const Literal> literals, const Binding& binding,
                Binding& solution)
{
    if (literals.empty()) {
        solution = binding;
        return true;
    }
    auto extensions = queryLiteral(snapshot, literals.front(), binding);
    for (const Binding& b : extensions) {
        if (solveFirst(snapshot, literals.subspan(1), b, solution)) {
            return true;
        }
    }
    return false;
}

} // namespace

bool holds(const Snapshot& snapshot, std::span<const Literal> literals, const Binding& binding)
{
    Binding ignored;
    return solveFirst(snapshot, literals, binding, ignored);
}

std::optional<Binding> firstSolution(const Snapshot& snapshot, std::span<const Literal> literals,
                                     const Binding& binding)
{
    Binding solution;
    if (solveFirst(snapshot, literals, binding, solution)) {
        return solution;
    }
    return std::nullopt;
}

} // namespace ailtl
