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
#ifndef AILTL_QUERY_HPP
#define AILTL_QUERY_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "ailtl/literal.hpp"
#include "ailtl/timeline.hpp"

namespace ailtl {

/// Groundness or type failure during query evaluation, e.g. an unbound
/// variable reaching a comparison or a negated literal.
class QueryError : public std::runtime_error {
public:
    explicit QueryError(const std::string& what) : std::runtime_error(what) {}
};

/// All extensions of `binding` that satisfy one literal at the snapshot.
/// Positive atoms enumerate matches in canonical order; negation is
/// negation as failure and requires the literal to be ground under the
/// binding.
std::vector<Binding> queryLiteral(const Snapshot& snapshot, const Literal& lit, const Binding& binding);

/// Left-to-right conjunction solving. Returns every solution.
std::vector<Binding> solveAll(const Snapshot& snapshot, std::span<const Literal> literals,
                              const Binding& binding);

/// True iff at least one solution exists; stops at the first.
bool holds(const Snapshot& snapshot, std::span<const Literal> literals, const Binding& binding);

/// First solution in enumeration order, if any.
std::optional<Binding> firstSolution(const Snapshot& snapshot, std::span<const Literal> literals,
                                     const Binding& binding);

} // namespace ailtl

#endif
