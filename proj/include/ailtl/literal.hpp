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
#ifndef AILTL_LITERAL_HPP
#define AILTL_LITERAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ailtl/event.hpp"
#include "ailtl/source.hpp"
#include "ailtl/term.hpp"
#include "ailtl/time.hpp"

namespace ailtl {

/// Integer expression over bound variables, literals and named constants.
/// Symbols are legal leaves so that comparisons against named amounts
/// parse; arithmetic on them fails at evaluation time.
struct ArithExpr {
    enum class Node { Number, SymbolRef, VarRef, Add, Sub, Mul, Div };

    Node node = Node::Number;
    std::int64_t number = 0;
    std::string name; // symbol or variable name
    std::shared_ptr<ArithExpr> lhs;
    std::shared_ptr<ArithExpr> rhs;

    static ArithExpr num(std::int64_t v);
    static ArithExpr sym(std::string name);
    static ArithExpr var(std::string name);
    static ArithExpr bin(Node op, ArithExpr l, ArithExpr r);
};

bool operator==(const ArithExpr& a, const ArithExpr& b);

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* compareOpName(CompareOp op);

/// `f(a,b)` against the fact store.
struct FactAtom {
    Term term;

    bool operator==(const FactAtom&) const = default;
};

/// Reference to the latest remembered version of an observable event.
/// `at` constrains or binds its timestamp; absent means "any time".
struct PastAtom {
    Term term;
    std::optional<EventKind> kind; // nullopt: any observable kind
    std::optional<std::variant<Variable, Time>> at;

    bool operator==(const PastAtom&) const = default;
};

/// `now(T)`: binds or checks the current state time.
struct NowAtom {
    Variable var;

    bool operator==(const NowAtom&) const = default;
};

/// Comparison between two integer expressions. `=` with one unbound bare
/// variable side acts as an assignment.
struct BuiltinAtom {
    CompareOp op = CompareOp::Eq;
    ArithExpr lhs;
    ArithExpr rhs;

    bool operator==(const BuiltinAtom&) const = default;
};

using LiteralBody = std::variant<FactAtom, PastAtom, NowAtom, BuiltinAtom>;

struct Literal {
    bool positive = true;
    LiteralBody body;
    SourceSpan span;

    bool operator==(const Literal& other) const
    {
        return positive == other.positive && body == other.body;
    }
};

/// Variable names appearing anywhere in the construct. Anonymous `_` is
/// skipped.
void collectVariables(const Term& term, std::vector<std::string>& out);
void collectVariables(const ArithExpr& expr, std::vector<std::string>& out);
void collectVariables(const Literal& lit, std::vector<std::string>& out);

/// Variables that a successful positive match of the literal would bind:
/// term arguments, the `at` slot, `now` arguments, and the assigned side of
/// `=`.
void collectBindableVariables(const Literal& lit, std::vector<std::string>& out);

std::string formatArith(const ArithExpr& expr);
std::string formatLiteral(const Literal& lit);

} // namespace ailtl

#endif
