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
#include "ailtl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ailtl/query.hpp"

namespace ailtl {

namespace {

enum class Tok {
    End,
    Ident,    // lowercase-first identifier
    UIdent,   // uppercase- or underscore-first: variables and operator names
    Int,      // integer, possibly written with a duration suffix
    LParen,
    RParen,
    Comma,
    Semicolon,
    Colon,        // :
    ColonColon,   // ::
    Colon3,       // :::
    Colon4,       // ::::
    Slash,        // /
    SlashSlash,   // //
    Pipe,         // |
    PipePipe,     // ||
    Lt,
    Le,
    Gt,           // also "before" in patterns
    Ge,
    GtGt,         // >>
    Eq,
    Ne,
    Star,
    Plus,
    Minus,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int64_t value = 0;
    SourceSpan span;
};

const char* tokName(Tok k) {
    switch (k) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::UIdent: return "variable";
        case Tok::Int: return "integer";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Semicolon: return "';'";
        case Tok::Colon: return "':'";
        case Tok::ColonColon: return "'::'";
        case Tok::Colon3: return "':::'";
        case Tok::Colon4: return "'::::'";
        case Tok::Slash: return "'/'";
        case Tok::SlashSlash: return "'//'";
        case Tok::Pipe: return "'|'";
        case Tok::PipePipe: return "'||'";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::GtGt: return "'>>'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'!='";
        case Tok::Star: return "'*'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skipSpace();
            Token tok = next();
            out.push_back(tok);
            if (tok.kind == Tok::End) break;
        }
        return out;
    }

private:
    void skipSpace() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 1;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
    }

    Token next() {
        Token tok;
        tok.span = SourceSpan{line_, col_, 1};
        if (pos_ >= text_.size()) {
            tok.kind = Tok::End;
            return tok;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return lexNumber(tok);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lexWord(tok);
        switch (c) {
            case '(': return punct(tok, Tok::LParen, 1);
            case ')': return punct(tok, Tok::RParen, 1);
            case ',': return punct(tok, Tok::Comma, 1);
            case ';': return punct(tok, Tok::Semicolon, 1);
            case '*': return punct(tok, Tok::Star, 1);
            case '+': return punct(tok, Tok::Plus, 1);
            case '-': return punct(tok, Tok::Minus, 1);
            case ':': {
                size_t run = 0;
                while (pos_ + run < text_.size() && text_[pos_ + run] == ':') ++run;
                if (run >= 4) return punct(tok, Tok::Colon4, 4);
                if (run == 3) return punct(tok, Tok::Colon3, 3);
                if (run == 2) return punct(tok, Tok::ColonColon, 2);
                return punct(tok, Tok::Colon, 1);
            }
            case '/':
                if (peekChar(1) == '/') return punct(tok, Tok::SlashSlash, 2);
                return punct(tok, Tok::Slash, 1);
            case '|':
                if (peekChar(1) == '|') return punct(tok, Tok::PipePipe, 2);
                return punct(tok, Tok::Pipe, 1);
            case '<':
                if (peekChar(1) == '=') return punct(tok, Tok::Le, 2);
                return punct(tok, Tok::Lt, 1);
            case '>':
                if (peekChar(1) == '>') return punct(tok, Tok::GtGt, 2);
                if (peekChar(1) == '=') return punct(tok, Tok::Ge, 2);
                return punct(tok, Tok::Gt, 1);
            case '=': return punct(tok, Tok::Eq, 1);
            case '!':
                if (peekChar(1) == '=') return punct(tok, Tok::Ne, 2);
                break;
            default: break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", tok.span);
    }

    char peekChar(size_t ahead) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    Token punct(Token tok, Tok kind, size_t len) {
        tok.kind = kind;
        tok.text = text_.substr(pos_, len);
        tok.span.length = static_cast<std::uint32_t>(len);
        advance(len);
        return tok;
    }

    Token lexNumber(Token tok) {
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            ++col_;
        }
        std::string digits = text_.substr(start, pos_ - start);
        std::string suffix;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            suffix += text_[pos_];
            ++pos_;
            ++col_;
        }
        tok.kind = Tok::Int;
        tok.text = digits + suffix;
        tok.span.length = static_cast<std::uint32_t>(tok.text.size());
        int64_t base = 0;
        try {
            base = std::stoll(digits);
        } catch (const std::exception&) {
            throw ParseError("integer out of range", tok.span);
        }
        int64_t unit = 1;
        if (!suffix.empty()) {
            auto u = durationUnitSeconds(suffix);
            if (!u) throw ParseError("unknown duration unit '" + suffix + "'", tok.span);
            unit = *u;
        }
        if (base > 0 && unit > 0 && base > INT64_MAX / unit)
            throw ParseError("duration out of range", tok.span);
        tok.value = base * unit;
        return tok;
    }

    Token lexWord(Token tok) {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            ++col_;
        }
        tok.text = text_.substr(start, pos_ - start);
        tok.span.length = static_cast<std::uint32_t>(tok.text.size());
        char first = tok.text[0];
        tok.kind = (std::isupper(static_cast<unsigned char>(first)) || first == '_')
                       ? Tok::UIdent
                       : Tok::Ident;
        return tok;
    }

    void advance(size_t n) {
        pos_ += n;
        col_ += static_cast<std::uint32_t>(n);
    }

    const std::string& text_;
    size_t pos_ = 0;
    std::uint32_t line_ = 1;
    std::uint32_t col_ = 1;
};

bool isOpName(const std::string& s) {
    return s == "NOW" || s == "NEXT" || s == "EVENTUALLY" || s == "ALWAYS" ||
           s == "ALWAYS_S" || s == "NEVER" || s == "NEVER_B" || s == "NEVER_A" ||
           s == "SOMETIMES";
}

// Past-event suffixes on functor names, e.g. trained_P, alarm_PE.
std::optional<std::pair<std::string, std::optional<EventKind>>>
splitPastSuffix(const std::string& name) {
    auto strip = [&](const char* suffix,
                     std::optional<EventKind> kind)
        -> std::optional<std::pair<std::string, std::optional<EventKind>>> {
        std::string s(suffix);
        if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0)
            return std::make_pair(name.substr(0, name.size() - s.size()), kind);
        return std::nullopt;
    };
    if (auto r = strip("_PE", EventKind::External)) return r;
    if (auto r = strip("_PA", EventKind::Action)) return r;
    if (auto r = strip("_PI", EventKind::Internal)) return r;
    if (auto r = strip("_P", std::nullopt)) return r;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(Lexer(text).run()) {}

    RuleSet parseRuleSet() {
        RuleSet rs;
        for (;;) {
            if (at(Tok::End)) break;
            if (atKeyword("default")) {
                parseDefault(rs);
            } else if (atKeyword("rule")) {
                rs.order.push_back({false, rs.rules.size()});
                rs.rules.push_back(parseRule(rs));
            } else if (atKeyword("expr")) {
                rs.order.push_back({true, rs.exprs.size()});
                rs.exprs.push_back(parseExpr(rs));
            } else {
                fail("expected 'rule', 'expr' or 'default'");
            }
        }
        validate(rs);
        return rs;
    }

    Term parseBareGroundTerm() {
        Term t = parseTermLiteral();
        expect(Tok::End);
        if (!t.ground()) fail("term must be ground");
        return t;
    }

    EventPattern parseBarePattern() {
        EventPattern p = parsePattern();
        expect(Tok::End);
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, peek().span);
    }

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos_ + ahead;
        if (i >= tokens_.size()) i = tokens_.size() - 1;
        return tokens_[i];
    }

    bool at(Tok kind) const { return peek().kind == kind; }

    bool atKeyword(const char* word) const {
        return at(Tok::Ident) && peek().text == word;
    }

    Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    Token expect(Tok kind) {
        if (!at(kind))
            fail(std::string("expected ") + tokName(kind) + ", found " + tokName(peek().kind));
        return take();
    }

    bool accept(Tok kind) {
        if (!at(kind)) return false;
        take();
        return true;
    }

    Token expectKeyword(const char* word) {
        if (!atKeyword(word)) fail(std::string("expected '") + word + "'");
        return take();
    }

    // ---- top-level declarations ----

    void parseDefault(RuleSet& rs) {
        expectKeyword("default");
        if (atKeyword("k")) {
            take();
            Token n = expect(Tok::Int);
            if (n.value == 0) throw ParseError("check period must be positive", n.span);
            rs.defaultCheckEvery = Time(n.value);
        } else if (atKeyword("prio")) {
            take();
            Token n = expect(Tok::Int);
            rs.defaultPriority = static_cast<int>(n.value);
        } else {
            fail("expected 'k' or 'prio' after 'default'");
        }
    }

    RuleSpec parseRule(const RuleSet& rs) {
        Token kw = expectKeyword("rule");
        RuleSpec rule;
        rule.span = kw.span;
        rule.name = expect(Tok::Ident).text;
        rule.priority = rs.defaultPriority;
        if (atKeyword("prio")) {
            take();
            rule.priority = static_cast<int>(expect(Tok::Int).value);
        }
        expect(Tok::Colon);
        rule.body = parseContextual();
        if (accept(Tok::Slash)) rule.repair = parseRepairList();
        if (accept(Tok::SlashSlash)) rule.improvement = parseRepairList();
        return rule;
    }

    EvolutionaryExpr parseExpr(const RuleSet& rs) {
        Token kw = expectKeyword("expr");
        EvolutionaryExpr expr;
        expr.span = kw.span;
        expr.name = expect(Tok::Ident).text;
        expr.priority = rs.defaultPriority;
        if (atKeyword("prio")) {
            take();
            expr.priority = static_cast<int>(expect(Tok::Int).value);
        }
        expect(Tok::Colon);
        expr.precondition = parsePattern();
        expect(Tok::Colon);
        expr.body = parseContextual();
        if (accept(Tok::Colon3)) expr.expected = parsePattern();
        if (accept(Tok::Colon4)) expr.breaking = parsePattern();
        if (accept(Tok::Pipe)) expr.repairViolation = parseRepairList();
        if (accept(Tok::PipePipe)) expr.repairBroken = parseRepairList();
        return expr;
    }

    // ---- contextual formulas ----

    ContextualFormula parseContextual() {
        ContextualFormula f;
        f.op = parseOp();
        if (accept(Tok::LParen)) {
            f.phi.push_back(parseLiteral());
            while (accept(Tok::Comma)) f.phi.push_back(parseLiteral());
            expect(Tok::RParen);
        } else {
            f.phi.push_back(parseLiteral());
        }
        if (accept(Tok::ColonColon)) {
            f.context.push_back(parseLiteral());
            while (accept(Tok::Comma)) f.context.push_back(parseLiteral());
        }
        return f;
    }

    IntervalOp parseOp() {
        if (!at(Tok::UIdent) || !isOpName(peek().text))
            fail("expected an interval operator");
        Token name = take();
        IntervalOp op;
        op.span = name.span;
        if (name.text == "NOW") {
            op.kind = OpKind::Now;
            // `NOW(T)` names the evaluation instant; `NOW (lit, ...)` is a
            // formula body, told apart by what sits inside the parentheses.
            if (at(Tok::LParen) && peek(1).kind == Tok::UIdent &&
                !isOpName(peek(1).text) && peek(2).kind == Tok::RParen) {
                take();
                op.nowVar = Variable{take().text};
                take();
            }
            return op;
        }
        expect(Tok::LParen);
        std::vector<BoundArg> bounds;
        bounds.push_back(parseBound());
        if (accept(Tok::Comma)) bounds.push_back(parseBound());
        std::optional<BoundArg> tail;
        if (accept(Tok::Semicolon)) tail = parseBound();
        expect(Tok::RParen);

        auto need = [&](size_t n, bool tailRequired, bool tailAllowed) {
            if (bounds.size() != n)
                throw ParseError(name.text + " takes " + std::to_string(n) +
                                     (n == 1 ? " bound" : " bounds"),
                                 name.span);
            if (tailRequired && !tail)
                throw ParseError(name.text + " requires a frequency", name.span);
            if (!tailAllowed && tail)
                throw ParseError(name.text + " does not take a check period", name.span);
        };

        if (name.text == "SOMETIMES") {
            need(bounds.size() == 2 ? 2 : 1, true, true);
            op.kind = bounds.size() == 2 ? OpKind::SometimesBetween : OpKind::Sometimes;
            op.m = bounds[0];
            if (bounds.size() == 2) op.n = bounds[1];
            op.f = tail;
            return op;
        }

        if (name.text == "NEXT") {
            need(1, false, true);
            op.kind = OpKind::Next;
        } else if (name.text == "EVENTUALLY") {
            need(bounds.size() == 2 ? 2 : 1, false, true);
            op.kind = bounds.size() == 2 ? OpKind::EventuallyBetween : OpKind::Eventually;
        } else if (name.text == "ALWAYS") {
            need(bounds.size() == 2 ? 2 : 1, false, true);
            op.kind = bounds.size() == 2 ? OpKind::AlwaysBetween : OpKind::Always;
        } else if (name.text == "ALWAYS_S") {
            need(bounds.size() == 2 ? 2 : 1, false, true);
            op.kind = bounds.size() == 2 ? OpKind::AlwaysStrongBetween : OpKind::AlwaysStrong;
        } else if (name.text == "NEVER_B") {
            need(1, false, true);
            op.kind = OpKind::NeverBefore;
        } else if (name.text == "NEVER_A") {
            need(1, false, true);
            op.kind = OpKind::NeverAfter;
        } else if (name.text == "NEVER") {
            need(2, false, true);
            op.kind = OpKind::NeverBetween;
        }
        op.m = bounds[0];
        if (bounds.size() == 2) op.n = bounds[1];
        op.checkEvery = tail;
        return op;
    }

    BoundArg parseBound() {
        if (at(Tok::Int)) return Time(take().value);
        if (at(Tok::UIdent)) {
            Token v = take();
            if (isOpName(v.text)) fail("operator name used as a bound");
            return Variable{v.text};
        }
        fail("expected a time bound (integer or variable)");
    }

    // ---- literals ----

    Literal parseLiteral() {
        Literal lit;
        lit.span = peek().span;
        if (atKeyword("not")) {
            take();
            lit.positive = false;
        }
        if (at(Tok::UIdent) && isOpName(peek().text) && peek(1).kind == Tok::LParen)
            fail("interval operators cannot nest");
        if (atKeyword("now") && peek(1).kind == Tok::LParen) {
            take();
            take();
            Token v = expect(Tok::UIdent);
            expect(Tok::RParen);
            lit.body = NowAtom{Variable{v.text}};
            return lit;
        }
        if (at(Tok::Ident) && peek(1).kind == Tok::LParen) {
            lit.body = parseFactOrPast();
            return lit;
        }
        if (at(Tok::Ident)) {
            // Bare name: a comparison operand or a zero-argument atom.
            if (isCompareAhead(1) || isArithContinuation(1)) {
                lit.body = parseBuiltin();
                return lit;
            }
            lit.body = parseFactOrPast();
            return lit;
        }
        lit.body = parseBuiltin();
        return lit;
    }

    bool isCompareAhead(size_t ahead) const {
        switch (peek(ahead).kind) {
            case Tok::Lt:
            case Tok::Le:
            case Tok::Ge:
            case Tok::Eq:
            case Tok::Ne:
                return true;
            case Tok::Gt:
                return true;
            default:
                return false;
        }
    }

    bool isArithContinuation(size_t ahead) const {
        switch (peek(ahead).kind) {
            case Tok::Plus:
            case Tok::Minus:
            case Tok::Star:
                return true;
            case Tok::Slash:
                // A slash only continues arithmetic when a numeric operand
                // follows; otherwise it opens a repair clause.
                switch (peek(ahead + 1).kind) {
                    case Tok::Int:
                    case Tok::UIdent:
                    case Tok::LParen:
                        return true;
                    default:
                        return false;
                }
            default:
                return false;
        }
    }

    LiteralBody parseFactOrPast() {
        Token name = expect(Tok::Ident);
        auto past = splitPastSuffix(name.text);
        std::vector<TermArg> args;
        if (accept(Tok::LParen)) {
            if (!at(Tok::RParen)) {
                args.push_back(parseTermArg());
                while (accept(Tok::Comma)) args.push_back(parseTermArg());
            }
            expect(Tok::RParen);
        }
        if (!past) return FactAtom{Term{name.text, std::move(args)}};

        PastAtom atom;
        atom.kind = past->second;
        if (atKeyword("at")) {
            take();
            atom.at = parseTimeSlot();
        } else if (!args.empty()) {
            // Without an explicit `at`, the final argument is the timestamp.
            TermArg last = args.back();
            args.pop_back();
            if (auto* v = std::get_if<Variable>(&last)) {
                atom.at = *v;
            } else if (auto* n = std::get_if<int64_t>(&last)) {
                if (*n < 0) throw ParseError("negative timestamp", name.span);
                atom.at = Time(*n);
            } else {
                throw ParseError("past-event timestamp must be a variable or a time", name.span);
            }
        }
        atom.term = Term{past->first, std::move(args)};
        return atom;
    }

    std::variant<Variable, Time> parseTimeSlot() {
        if (at(Tok::Int)) return Time(take().value);
        if (at(Tok::UIdent)) {
            Token v = take();
            if (isOpName(v.text)) fail("operator name used as a timestamp");
            return Variable{v.text};
        }
        fail("expected a timestamp (integer or variable)");
    }

    LiteralBody parseBuiltin() {
        ArithExpr lhs = parseArith();
        CompareOp op;
        switch (peek().kind) {
            case Tok::Lt: op = CompareOp::Lt; break;
            case Tok::Le: op = CompareOp::Le; break;
            case Tok::Gt: op = CompareOp::Gt; break;
            case Tok::Ge: op = CompareOp::Ge; break;
            case Tok::Eq: op = CompareOp::Eq; break;
            case Tok::Ne: op = CompareOp::Ne; break;
            default: fail("expected a comparison operator");
        }
        take();
        ArithExpr rhs = parseArith();
        return BuiltinAtom{op, std::move(lhs), std::move(rhs)};
    }

    ArithExpr parseArith() {
        ArithExpr lhs = parseArithTerm();
        for (;;) {
            if (at(Tok::Plus)) {
                take();
                lhs = ArithExpr::bin(ArithExpr::Node::Add, std::move(lhs), parseArithTerm());
            } else if (at(Tok::Minus)) {
                take();
                lhs = ArithExpr::bin(ArithExpr::Node::Sub, std::move(lhs), parseArithTerm());
            } else {
                return lhs;
            }
        }
    }

    ArithExpr parseArithTerm() {
        ArithExpr lhs = parseArithPrimary();
        for (;;) {
            if (at(Tok::Star)) {
                take();
                lhs = ArithExpr::bin(ArithExpr::Node::Mul, std::move(lhs), parseArithPrimary());
            } else if (at(Tok::Slash) && (peek(1).kind == Tok::Int ||
                                          peek(1).kind == Tok::UIdent ||
                                          peek(1).kind == Tok::LParen)) {
                // `/` followed by a lowercase name starts a repair clause.
                take();
                lhs = ArithExpr::bin(ArithExpr::Node::Div, std::move(lhs), parseArithPrimary());
            } else {
                return lhs;
            }
        }
    }

    ArithExpr parseArithPrimary() {
        if (at(Tok::Int)) return ArithExpr::num(take().value);
        if (at(Tok::UIdent)) {
            Token v = take();
            if (isOpName(v.text)) fail("operator name used in arithmetic");
            return ArithExpr::var(v.text);
        }
        if (at(Tok::Ident)) return ArithExpr::sym(take().text);
        if (accept(Tok::LParen)) {
            ArithExpr e = parseArith();
            expect(Tok::RParen);
            return e;
        }
        fail("expected an arithmetic operand");
    }

    TermArg parseTermArg() {
        if (at(Tok::Int)) return take().value;
        if (at(Tok::Ident)) return Symbol{take().text};
        if (at(Tok::UIdent)) {
            Token v = take();
            if (isOpName(v.text)) fail("operator name used as an argument");
            return Variable{v.text};
        }
        fail("expected a term argument");
    }

    Term parseTermLiteral() {
        Token name = expect(Tok::Ident);
        std::vector<TermArg> args;
        if (accept(Tok::LParen)) {
            if (!at(Tok::RParen)) {
                args.push_back(parseTermArg());
                while (accept(Tok::Comma)) args.push_back(parseTermArg());
            }
            expect(Tok::RParen);
        }
        return Term{name.text, std::move(args)};
    }

    // ---- repairs ----

    std::vector<RepairAtom> parseRepairList() {
        std::vector<RepairAtom> out;
        out.push_back(parseRepairAtom());
        while (accept(Tok::Comma)) out.push_back(parseRepairAtom());
        return out;
    }

    RepairAtom parseRepairAtom() {
        if ((atKeyword("assert") || atKeyword("retract")) && peek(1).kind == Tok::LParen) {
            bool isAssert = peek().text == "assert";
            take();
            take();
            Term inner = parseTermLiteral();
            expect(Tok::RParen);
            return RepairAtom{isAssert ? RepairAtom::Kind::Assert : RepairAtom::Kind::Retract,
                              std::move(inner)};
        }
        return RepairAtom{RepairAtom::Kind::Emit, parseTermLiteral()};
    }

    // ---- event patterns ----

    EventPattern parsePattern() {
        EventPattern pattern;
        pattern.elements.push_back(parsePatternElement(Connective::AnyOrder));
        for (;;) {
            Connective link;
            if (at(Tok::Comma)) {
                link = Connective::AnyOrder;
            } else if (at(Tok::GtGt)) {
                link = Connective::Before;
            } else if (at(Tok::Gt)) {
                link = Connective::ImmediatelyBefore;
            } else {
                break;
            }
            take();
            pattern.elements.push_back(parsePatternElement(link));
        }
        return pattern;
    }

    PatternElement parsePatternElement(Connective link) {
        PatternElement el;
        el.link = link;
        Token start = peek();
        if (at(Tok::UIdent) && peek().text == "_") {
            take();
            el.wildcard = true;
            el.event = Term{"_", {}};
        } else {
            Token name = expect(Tok::Ident);
            std::string functor = name.text;
            if (auto past = splitPastSuffix(functor)) {
                functor = past->first;
                el.pastMarker = true;
            }
            std::vector<TermArg> args;
            if (accept(Tok::LParen)) {
                if (!at(Tok::RParen)) {
                    args.push_back(parseTermArg());
                    while (accept(Tok::Comma)) args.push_back(parseTermArg());
                }
                expect(Tok::RParen);
            }
            el.event = Term{functor, std::move(args)};
        }
        if (at(Tok::Star)) {
            take();
            el.mult = Multiplicity::Star;
        } else if (at(Tok::Plus)) {
            take();
            el.mult = Multiplicity::Plus;
        }
        if (el.wildcard && el.mult != Multiplicity::One)
            throw ParseError("wildcards cannot carry '*' or '+'", start.span);
        if (atKeyword("at")) {
            take();
            Token v = expect(Tok::UIdent);
            if (el.mult != Multiplicity::One)
                throw ParseError("'at' cannot apply to a repeated element", v.span);
            if (v.text == "_") throw ParseError("'at' needs a named variable", v.span);
            el.atVar = Variable{v.text};
        }
        return el;
    }

    // ---- validation ----

    static void addTermVars(const Term& t, std::set<std::string>& out) {
        std::vector<std::string> names;
        collectVariables(t, names);
        out.insert(names.begin(), names.end());
    }

    static void addLiteralVars(const Literal& lit, std::set<std::string>& out) {
        std::vector<std::string> names;
        collectVariables(lit, names);
        out.insert(names.begin(), names.end());
    }

    static std::set<std::string> patternVars(const EventPattern& p) {
        std::set<std::string> out;
        for (const auto& el : p.elements) {
            addTermVars(el.event, out);
            if (el.atVar) out.insert(el.atVar->name);
        }
        return out;
    }

    // Variables a context can supply: anything occurring in a non-negated
    // context literal, plus pattern variables for expressions.
    static std::set<std::string> contextSources(const ContextualFormula& f,
                                                const std::set<std::string>& extra) {
        std::set<std::string> out = extra;
        for (const auto& lit : f.context)
            if (lit.positive) addLiteralVars(lit, out);
        if (f.op.nowVar) out.insert(f.op.nowVar->name);
        return out;
    }

    static std::set<std::string> phiPositiveVars(const ContextualFormula& f) {
        std::set<std::string> out;
        for (const auto& lit : f.phi)
            if (lit.positive) addLiteralVars(lit, out);
        return out;
    }

    void checkFormula(const std::string& owner, const ContextualFormula& f,
                      const std::set<std::string>& extraSources, SourceSpan span) const {
        std::set<std::string> sources = contextSources(f, extraSources);
        std::set<std::string> phiVars = phiPositiveVars(f);

        auto mustBeBound = [&](const std::string& name, const char* where, bool allowPhi) {
            if (sources.count(name)) return;
            if (allowPhi && phiVars.count(name)) return;
            throw ParseError(owner + ": variable " + name + " in " + where +
                                 " is not bound by the context",
                             span);
        };

        for (const auto& v : freeVariables(f.op)) mustBeBound(v, "a time bound", false);
        auto negatedVars = [&](const Literal& lit, bool allowPhi) {
            std::vector<std::string> names;
            collectVariables(lit, names);
            for (const auto& n : names) mustBeBound(n, "a negated literal", allowPhi);
        };
        for (const auto& lit : f.phi)
            if (!lit.positive) negatedVars(lit, true);
        for (const auto& lit : f.context)
            if (!lit.positive) negatedVars(lit, false);

        if (f.op.checkEvery) {
            if (auto* t = std::get_if<Time>(&*f.op.checkEvery); t && t->seconds() == 0)
                throw ParseError(owner + ": check period must be positive", span);
        }
        if (f.op.ground()) {
            try {
                interestInterval(f.op, Time(0));
            } catch (const FormulaError& e) {
                throw ParseError(owner + ": " + e.what(), span);
            }
        }
    }

    void validate(const RuleSet& rs) const {
        std::set<std::string> names;
        for (const auto& r : rs.rules)
            if (!names.insert(r.name).second)
                throw ParseError("duplicate rule name '" + r.name + "'", r.span);
        for (const auto& e : rs.exprs)
            if (!names.insert(e.name).second)
                throw ParseError("duplicate rule name '" + e.name + "'", e.span);

        for (const auto& r : rs.rules) {
            checkFormula("rule " + r.name, r.body, {}, r.span);
            std::set<std::string> sources = contextSources(r.body, {});
            std::set<std::string> phiVars = phiPositiveVars(r.body);
            auto checkRepair = [&](const std::vector<RepairAtom>& atoms) {
                for (const auto& a : atoms) {
                    std::vector<std::string> names;
                    collectVariables(a.atom, names);
                    for (const auto& n : names)
                        if (!sources.count(n) && !phiVars.count(n))
                            throw ParseError("rule " + r.name + ": repair variable " + n +
                                                 " has no binding source",
                                             r.span);
                }
            };
            checkRepair(r.repair);
            checkRepair(r.improvement);
        }
        for (const auto& e : rs.exprs) {
            auto requiresEvent = [&](const EventPattern& p, const char* slot) {
                for (const auto& elem : p.elements)
                    if (elem.mult != Multiplicity::Star) return;
                throw ParseError("expr " + e.name + ": " + slot +
                                     " pattern must require at least one event",
                                 e.span);
            };
            requiresEvent(e.precondition, "precondition");
            if (e.expected) requiresEvent(*e.expected, "expected");
            if (e.breaking) requiresEvent(*e.breaking, "breaking");
            checkFormula("expr " + e.name, e.body, patternVars(e.precondition), e.span);
            std::set<std::string> sources =
                contextSources(e.body, patternVars(e.precondition));
            for (const auto& v : phiPositiveVars(e.body)) sources.insert(v);
            if (e.expected)
                for (const auto& v : patternVars(*e.expected)) sources.insert(v);
            if (e.breaking)
                for (const auto& v : patternVars(*e.breaking)) sources.insert(v);
            auto checkRepair = [&](const std::vector<RepairAtom>& atoms) {
                for (const auto& a : atoms) {
                    std::vector<std::string> names;
                    collectVariables(a.atom, names);
                    for (const auto& n : names)
                        if (!sources.count(n))
                            throw ParseError("expr " + e.name + ": repair variable " + n +
                                                 " has no binding source",
                                             e.span);
                }
            };
            checkRepair(e.repairViolation);
            checkRepair(e.repairBroken);
        }
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
};

// ---- rendering ----

void renderTermArgs(std::ostringstream& os, const Term& t) {
    os << t.functor;
    if (!t.args.empty()) {
        os << '(';
        for (size_t i = 0; i < t.args.size(); ++i) {
            if (i) os << ',';
            os << formatTermArg(t.args[i]);
        }
        os << ')';
    }
}

void renderBound(std::ostringstream& os, const BoundArg& b) {
    if (auto* t = std::get_if<Time>(&b))
        os << t->seconds();
    else
        os << std::get<Variable>(b).name;
}

void renderOp(std::ostringstream& os, const IntervalOp& op) {
    switch (op.kind) {
        case OpKind::Now:
            os << "NOW";
            if (op.nowVar) os << '(' << op.nowVar->name << ')';
            return;
        case OpKind::Next: os << "NEXT"; break;
        case OpKind::Eventually:
        case OpKind::EventuallyBetween: os << "EVENTUALLY"; break;
        case OpKind::Always:
        case OpKind::AlwaysBetween: os << "ALWAYS"; break;
        case OpKind::AlwaysStrong:
        case OpKind::AlwaysStrongBetween: os << "ALWAYS_S"; break;
        case OpKind::NeverBefore: os << "NEVER_B"; break;
        case OpKind::NeverAfter: os << "NEVER_A"; break;
        case OpKind::NeverBetween: os << "NEVER"; break;
        case OpKind::Sometimes:
        case OpKind::SometimesBetween: os << "SOMETIMES"; break;
    }
    os << '(';
    renderBound(os, *op.m);
    if (op.n) {
        os << ',';
        renderBound(os, *op.n);
    }
    if (op.f) {
        os << ';';
        renderBound(os, *op.f);
    } else if (op.checkEvery) {
        os << ';';
        renderBound(os, *op.checkEvery);
    }
    os << ')';
}

void renderFormula(std::ostringstream& os, const ContextualFormula& f) {
    renderOp(os, f.op);
    os << ' ';
    if (f.phi.size() > 1) {
        os << '(';
        for (size_t i = 0; i < f.phi.size(); ++i) {
            if (i) os << ", ";
            os << formatLiteral(f.phi[i]);
        }
        os << ')';
    } else {
        os << formatLiteral(f.phi.front());
    }
    if (!f.context.empty()) {
        os << " :: ";
        for (size_t i = 0; i < f.context.size(); ++i) {
            if (i) os << ", ";
            os << formatLiteral(f.context[i]);
        }
    }
}

void renderRepairs(std::ostringstream& os, const std::vector<RepairAtom>& atoms) {
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) os << ", ";
        switch (atoms[i].kind) {
            case RepairAtom::Kind::Emit: break;
            case RepairAtom::Kind::Assert: os << "assert("; break;
            case RepairAtom::Kind::Retract: os << "retract("; break;
        }
        renderTermArgs(os, atoms[i].atom);
        if (atoms[i].kind != RepairAtom::Kind::Emit) os << ')';
    }
}

void renderPatternTo(std::ostringstream& os, const EventPattern& pattern) {
    for (size_t i = 0; i < pattern.elements.size(); ++i) {
        const PatternElement& el = pattern.elements[i];
        if (i) {
            switch (el.link) {
                case Connective::AnyOrder: os << " , "; break;
                case Connective::Before: os << " >> "; break;
                case Connective::ImmediatelyBefore: os << " > "; break;
            }
        }
        if (el.wildcard) {
            os << '_';
        } else {
            os << el.event.functor;
            if (el.pastMarker) os << "_P";
            if (!el.event.args.empty()) {
                os << '(';
                for (size_t j = 0; j < el.event.args.size(); ++j) {
                    if (j) os << ',';
                    os << formatTermArg(el.event.args[j]);
                }
                os << ')';
            }
        }
        if (el.mult == Multiplicity::Star) os << '*';
        if (el.mult == Multiplicity::Plus) os << '+';
        if (el.atVar) os << " at " << el.atVar->name;
    }
}

} // namespace

RuleSet parseRules(const std::string& text) {
    Parser parser(text);
    return parser.parseRuleSet();
}

Term parseGroundTerm(const std::string& text) {
    Parser parser(text);
    return parser.parseBareGroundTerm();
}

EventPattern parseEventPattern(const std::string& text) {
    Parser parser(text);
    return parser.parseBarePattern();
}

std::string render(const RuleSpec& rule) {
    std::ostringstream os;
    os << "rule " << rule.name << " prio " << rule.priority << ": ";
    renderFormula(os, rule.body);
    if (!rule.repair.empty()) {
        os << " / ";
        renderRepairs(os, rule.repair);
    }
    if (!rule.improvement.empty()) {
        os << " // ";
        renderRepairs(os, rule.improvement);
    }
    return os.str();
}

std::string render(const EventPattern& pattern) {
    std::ostringstream os;
    renderPatternTo(os, pattern);
    return os.str();
}

std::string render(const EvolutionaryExpr& expr) {
    std::ostringstream os;
    os << "expr " << expr.name << " prio " << expr.priority << ": ";
    renderPatternTo(os, expr.precondition);
    os << " : ";
    renderFormula(os, expr.body);
    if (expr.expected) {
        os << " ::: ";
        renderPatternTo(os, *expr.expected);
    }
    if (expr.breaking) {
        os << " :::: ";
        renderPatternTo(os, *expr.breaking);
    }
    if (!expr.repairViolation.empty()) {
        os << " | ";
        renderRepairs(os, expr.repairViolation);
    }
    if (!expr.repairBroken.empty()) {
        os << " || ";
        renderRepairs(os, expr.repairBroken);
    }
    return os.str();
}

std::string render(const RuleSet& ruleSet) {
    std::ostringstream os;
    if (ruleSet.defaultCheckEvery)
        os << "default k " << ruleSet.defaultCheckEvery->seconds() << '\n';
    if (ruleSet.defaultPriority != 100)
        os << "default prio " << ruleSet.defaultPriority << '\n';
    for (const auto& ref : ruleSet.order) {
        if (ref.isExpr)
            os << render(ruleSet.exprs[ref.index]) << '\n';
        else
            os << render(ruleSet.rules[ref.index]) << '\n';
    }
    return os.str();
}

// ---- traces ----

namespace {

TraceEvent parseTraceJson(const std::string& line, std::uint32_t lineNo) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON event: ") + e.what(),
                         SourceSpan{lineNo, 1, 1});
    }
    if (!j.is_object() || !j.contains("t") || !j.contains("kind") || !j.contains("term"))
        throw ParseError("JSON event needs \"t\", \"kind\" and \"term\"",
                         SourceSpan{lineNo, 1, 1});
    if (!j["t"].is_number_integer() || j["t"].get<int64_t>() < 0)
        throw ParseError("\"t\" must be a non-negative integer", SourceSpan{lineNo, 1, 1});
    auto kind = eventKindFromName(j["kind"].get<std::string>());
    if (!kind)
        throw ParseError("unknown event kind '" + j["kind"].get<std::string>() + "'",
                         SourceSpan{lineNo, 1, 1});
    Term term;
    try {
        term = parseGroundTerm(j["term"].get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(std::string("bad event term: ") + e.what(), SourceSpan{lineNo, 1, 1});
    }
    return TraceEvent{Time(j["t"].get<int64_t>()), *kind, std::move(term)};
}

TraceEvent parseTracePlain(const std::string& line, std::uint32_t lineNo) {
    std::istringstream is(line);
    std::string tText, kindText, termText;
    is >> tText >> kindText;
    std::getline(is, termText);
    size_t first = termText.find_first_not_of(" \t");
    termText = first == std::string::npos ? "" : termText.substr(first);
    if (tText.empty() || kindText.empty() || termText.empty())
        throw ParseError("expected 't kind term'", SourceSpan{lineNo, 1, 1});
    int64_t t = 0;
    try {
        size_t used = 0;
        t = std::stoll(tText, &used);
        if (used != tText.size() || t < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError("bad timestamp '" + tText + "'", SourceSpan{lineNo, 1, 1});
    }
    auto kind = eventKindFromName(kindText);
    if (!kind)
        throw ParseError("unknown event kind '" + kindText + "'", SourceSpan{lineNo, 1, 1});
    Term term;
    try {
        term = parseGroundTerm(termText);
    } catch (const ParseError& e) {
        throw ParseError(std::string("bad event term: ") + e.what(), SourceSpan{lineNo, 1, 1});
    }
    return TraceEvent{Time(t), *kind, std::move(term)};
}

} // namespace

std::vector<TraceEvent> parseTrace(const std::string& text) {
    std::vector<TraceEvent> out;
    std::istringstream is(text);
    std::string line;
    std::uint32_t lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        size_t last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body[0] == '#') continue;
        TraceEvent ev = body[0] == '{' ? parseTraceJson(body, lineNo)
                                       : parseTracePlain(body, lineNo);
        if (!out.empty() && ev.t < out.back().t)
            throw ParseError("timestamp goes backwards", SourceSpan{lineNo, 1, 1});
        out.push_back(std::move(ev));
    }
    return out;
}

std::string renderTrace(const std::vector<TraceEvent>& events) {
    std::ostringstream os;
    for (const auto& ev : events) {
        os << ev.t.seconds() << ' ' << eventKindName(ev.kind) << ' ';
        renderTermArgs(os, ev.term);
        os << '\n';
    }
    return os.str();
}

} // namespace ailtl
