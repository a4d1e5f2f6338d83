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
#include "ailtl/term.hpp"

#include <algorithm>

namespace ailtl {

bool Term::ground() const
{
    return std::none_of(args.begin(), args.end(),
                        [](const TermArg& a) { return std::holds_alternative<Variable>(a); });
}

std::optional<Value> Binding::lookup(const std::string& var) const
{
    auto it = std::lower_bound(slots_.begin(), slots_.end(), var,
                               [](const auto& slot, const std::string& name) { return slot.first < name; });
    if (it != slots_.end() && it->first == var) {
        return it->second;
    }
    return std::nullopt;
}

bool Binding::bind(const std::string& var, const Value& value)
{
    auto it = std::lower_bound(slots_.begin(), slots_.end(), var,
                               [](const auto& slot, const std::string& name) { return slot.first < name; });
    if (it != slots_.end() && it->first == var) {
        return it->second == value;
    }
    slots_.insert(it, {var, value});
    return true;
}

std::string Binding::signature() const
{
    std::string out;
    for (const auto& [name, value] : slots_) {
        if (!out.empty()) {
            out += ',';
        }
        out += name;
        out += '=';
        out += formatValue(value);
    }
    return out;
}

TermArg toArg(const Value& v)
{
    if (const auto* sym = std::get_if<Symbol>(&v)) {
        return *sym;
    }
    return std::get<std::int64_t>(v);
}

namespace {

std::optional<Value> argValue(const TermArg& a)
{
    if (const auto* sym = std::get_if<Symbol>(&a)) {
        return Value(*sym);
    }
    if (const auto* num = std::get_if<std::int64_t>(&a)) {
        return Value(*num);
    }
    return std::nullopt;
}

} // namespace

bool unify(const Term& pattern, const Term& ground, Binding& binding)
{
    if (pattern.functor != ground.functor || pattern.args.size() != ground.args.size()) {
        return false;
    }
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const auto groundValue = argValue(ground.args[i]);
        if (!groundValue) {
            return false;
        }
        if (const auto* var = std::get_if<Variable>(&pattern.args[i])) {
            if (var->anonymous()) {
                continue;
            }
            if (!binding.bind(var->name, *groundValue)) {
                return false;
            }
        } else if (argValue(pattern.args[i]) != groundValue) {
            return false;
        }
    }
    return true;
}

Term applyBinding(const Term& term, const Binding& binding)
{
    Term out = term;
    for (auto& arg : out.args) {
        if (const auto* var = std::get_if<Variable>(&arg)) {
            if (var->anonymous()) {
                continue;
            }
            if (auto value = binding.lookup(var->name)) {
                arg = toArg(*value);
            }
        }
    }
    return out;
}

std::string formatValue(const Value& v)
{
    if (const auto* sym = std::get_if<Symbol>(&v)) {
        return sym->name;
    }
    return std::to_string(std::get<std::int64_t>(v));
}

std::string formatTermArg(const TermArg& a)
{
    if (const auto* var = std::get_if<Variable>(&a)) {
        return var->name;
    }
    if (const auto* sym = std::get_if<Symbol>(&a)) {
        return sym->name;
    }
    return std::to_string(std::get<std::int64_t>(a));
}

std::string formatTerm(const Term& t)
{
    if (t.args.empty()) {
        return t.functor;
    }
    std::string out = t.functor;
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += formatTermArg(t.args[i]);
    }
    out += ')';
    return out;
}

} // namespace ailtl
