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
#include "ailtl/literal.hpp"

namespace ailtl {

ArithExpr ArithExpr::num(std::int64_t v)
{
    ArithExpr e;
    e.node = Node::Number;
    e.number = v;
    return e;
}

ArithExpr ArithExpr::sym(std::string name)
{
    ArithExpr e;
    e.node = Node::SymbolRef;
    e.name = std::move(name);
    return e;
}

ArithExpr ArithExpr::var(std::string name)
{
    ArithExpr e;
    e.node = Node::VarRef;
    e.name = std::move(name);
    return e;
}

ArithExpr ArithExpr::bin(Node op, ArithExpr l, ArithExpr r)
{
    ArithExpr e;
    e.node = op;
    e.lhs = std::make_shared<ArithExpr>(std::move(l));
    e.rhs = std::make_shared<ArithExpr>(std::move(r));
    return e;
}

bool operator==(const ArithExpr& a, const ArithExpr& b)
{
    if (a.node != b.node) {
        return false;
    }
    switch (a.node) {
    case ArithExpr::Node::Number:
        return a.number == b.number;
    case ArithExpr::Node::SymbolRef:
    case ArithExpr::Node::VarRef:
        return a.name == b.name;
    default:
        return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
}

const char* compareOpName(CompareOp op)
{
    switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    }
    return "?";
}

namespace {

void pushVar(const std::string& name, std::vector<std::string>& out)
{
    if (name != "_") {
        out.push_back(name);
    }
}

} // namespace

void collectVariables(const Term& term, std::vector<std::string>& out)
{
    for (const auto& arg : term.args) {
        if (const auto* var = std::get_if<Variable>(&arg)) {
            pushVar(var->name, out);
        }
    }
}

void collectVariables(const ArithExpr& expr, std::vector<std::string>& out)
{
    switch (expr.node) {
    case ArithExpr::Node::VarRef:
        pushVar(expr.name, out);
        return;
    case ArithExpr::Node::Number:
    case ArithExpr::Node::SymbolRef:
        return;
    default:
        collectVariables(*expr.lhs, out);
        collectVariables(*expr.rhs, out);
    }
}

void collectVariables(const Literal& lit, std::vector<std::string>& out)
{
    if (const auto* fact = std::get_if<FactAtom>(&lit.body)) {
        collectVariables(fact->term, out);
    } else if (const auto* past = std::get_if<PastAtom>(&lit.body)) {
        collectVariables(past->term, out);
        if (past->at) {
            if (const auto* var = std::get_if<Variable>(&*past->at)) {
                pushVar(var->name, out);
            }
        }
    } else if (const auto* now = std::get_if<NowAtom>(&lit.body)) {
        pushVar(now->var.name, out);
    } else if (const auto* builtin = std::get_if<BuiltinAtom>(&lit.body)) {
        collectVariables(builtin->lhs, out);
        collectVariables(builtin->rhs, out);
    }
}

void collectBindableVariables(const Literal& lit, std::vector<std::string>& out)
{
    if (!lit.positive) {
        return;
    }
    if (const auto* builtin = std::get_if<BuiltinAtom>(&lit.body)) {
        // `X = expr` and `expr = X` can bind the bare variable side.
        if (builtin->op == CompareOp::Eq) {
            if (builtin->lhs.node == ArithExpr::Node::VarRef) {
                pushVar(builtin->lhs.name, out);
            }
            if (builtin->rhs.node == ArithExpr::Node::VarRef) {
                pushVar(builtin->rhs.name, out);
            }
        }
        return;
    }
    collectVariables(lit, out);
}

std::string formatArith(const ArithExpr& expr)
{
    switch (expr.node) {
    case ArithExpr::Node::Number:
        return std::to_string(expr.number);
    case ArithExpr::Node::SymbolRef:
    case ArithExpr::Node::VarRef:
        return expr.name;
    case ArithExpr::Node::Add:
        return formatArith(*expr.lhs) + " + " + formatArith(*expr.rhs);
    case ArithExpr::Node::Sub:
        return formatArith(*expr.lhs) + " - " + formatArith(*expr.rhs);
    case ArithExpr::Node::Mul:
    case ArithExpr::Node::Div: {
        auto side = [](const ArithExpr& e) {
            const bool additive = e.node == ArithExpr::Node::Add || e.node == ArithExpr::Node::Sub;
            return additive ? "(" + formatArith(e) + ")" : formatArith(e);
        };
        const char* op = expr.node == ArithExpr::Node::Mul ? " * " : " / ";
        return side(*expr.lhs) + op + side(*expr.rhs);
    }
    }
    return "?";
}

std::string formatLiteral(const Literal& lit)
{
    std::string out;
    if (!lit.positive) {
        out += "not ";
    }
    if (const auto* fact = std::get_if<FactAtom>(&lit.body)) {
        out += formatTerm(fact->term);
    } else if (const auto* past = std::get_if<PastAtom>(&lit.body)) {
        out += past->term.functor;
        out += "_P";
        if (past->kind) {
            switch (*past->kind) {
            case EventKind::External: out += 'E'; break;
            case EventKind::Action: out += 'A'; break;
            case EventKind::Internal: out += 'I'; break;
            default: break;
            }
        }
        if (!past->term.args.empty()) {
            out += '(';
            for (std::size_t i = 0; i < past->term.args.size(); ++i) {
                if (i > 0) {
                    out += ',';
                }
                out += formatTermArg(past->term.args[i]);
            }
            out += ')';
        }
        if (past->at) {
            out += " at ";
            if (const auto* var = std::get_if<Variable>(&*past->at)) {
                out += var->name;
            } else {
                out += formatTime(std::get<Time>(*past->at));
            }
        }
    } else if (const auto* now = std::get_if<NowAtom>(&lit.body)) {
        out += "now(" + now->var.name + ")";
    } else if (const auto* builtin = std::get_if<BuiltinAtom>(&lit.body)) {
        out += formatArith(builtin->lhs);
        out += ' ';
        out += compareOpName(builtin->op);
        out += ' ';
        out += formatArith(builtin->rhs);
    }
    return out;
}

} // namespace ailtl
