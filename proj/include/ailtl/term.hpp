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
#ifndef AILTL_TERM_HPP
#define AILTL_TERM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ailtl {

/// A logic variable. Names start with an upper-case letter or underscore;
/// the reserved name "_" is the anonymous variable and never binds.
struct Variable {
    std::string name;

    bool anonymous() const { return name == "_"; }
    auto operator<=>(const Variable&) const = default;
};

/// A lower-case constant such as `c7` or `alert_operator`.
struct Symbol {
    std::string name;

    auto operator<=>(const Symbol&) const = default;
};

/// A ground value: either a symbolic constant or a (possibly time-valued)
/// integer. Trace timestamps flowing into terms appear as plain integers in
/// canonical seconds.
using Value = std::variant<Symbol, std::int64_t>;

/// One argument position of a term.
using TermArg = std::variant<Symbol, std::int64_t, Variable>;

/// A flat first-order term: functor plus scalar arguments. Nesting is not
/// part of the event language.
struct Term {
    std::string functor;
    std::vector<TermArg> args;

    std::size_t arity() const { return args.size(); }
    bool ground() const;

    auto operator<=>(const Term&) const = default;
};

/// An accumulated substitution, kept sorted by variable name so enumeration
/// order is stable.
class Binding {
public:
    std::optional<Value> lookup(const std::string& var) const;
    /// Adds var -> value. Returns false if var is already bound to a
    /// different value.
    bool bind(const std::string& var, const Value& value);
    bool empty() const { return slots_.empty(); }
    std::size_t size() const { return slots_.size(); }

    const std::vector<std::pair<std::string, Value>>& slots() const { return slots_; }

    /// Canonical "A=1,B=c7" rendering used for instance identity and reports.
    std::string signature() const;

    auto operator<=>(const Binding&) const = default;

private:
    std::vector<std::pair<std::string, Value>> slots_;
};

TermArg toArg(const Value& v);

/// Unifies a pattern term against a ground term, extending `binding` in
/// place. On failure the binding may be partially extended, so callers
/// hand in a copy.
bool unify(const Term& pattern, const Term& ground, Binding& binding);

/// Replaces bound variables by their values; unbound variables are kept.
Term applyBinding(const Term& term, const Binding& binding);

std::string formatValue(const Value& v);
std::string formatTermArg(const TermArg& a);
std::string formatTerm(const Term& t);

} // namespace ailtl

#endif
