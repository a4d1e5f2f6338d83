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
#ifndef AILTL_MATCHER_HPP
#define AILTL_MATCHER_HPP

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ailtl/formula.hpp"
#include "ailtl/term.hpp"
#include "ailtl/time.hpp"

namespace ailtl {

enum class MatchStatus { Empty, Partial, Complete, Incompatible };

const char* matchStatusName(MatchStatus s);

/// Incremental matcher for event patterns.
///
/// A pattern is a chain of groups: maximal runs of comma-linked elements,
/// separated by `>>` (before) or `>` (immediately before). Elements of one
/// group may arrive in any order. An event that shares functor and arity
/// with any non-wildcard element is relevant to the pattern; a relevant
/// event that no live alternative can consume refutes the match. Irrelevant
/// events pass through freely, except that they void an adjacency
/// obligation raised by `>`.
///
/// The matcher tracks every viable alternative at once. Complete and
/// Incompatible are absorbing; after either, feed() is a no-op.
class Matcher {
public:
    explicit Matcher(const EventPattern& pattern);

    MatchStatus status() const { return status_; }

    /// Pattern variable bindings of the first alternative that completed,
    /// including `at` time variables. Empty unless status() is Complete.
    const Binding& binding() const { return completed_; }

    MatchStatus feed(const Term& event, Time t);

    /// What is still left to match: consumed one-shot elements are dropped
    /// and a `+` element that has consumed becomes `*`. Bound variables are
    /// substituted in. Computed from the least advanced live alternative;
    /// for a Complete matcher the residual is the empty pattern, and for an
    /// Incompatible one it is the original pattern.
    ///
    /// The residual is a diagnostic summary, not a resumable state: functors
    /// of fully consumed elements leave its alphabet, so a fresh matcher on
    /// the residual treats their reappearance as irrelevant where this
    /// matcher would rule the alternative out.
    EventPattern residual() const;

    const EventPattern& pattern() const { return pattern_; }

private:
    struct Group {
        std::size_t first;
        std::size_t last;       // inclusive
        Connective link;        // how this group attaches to its predecessor
    };

    struct Config {
        std::size_t group = 0;                // == groups.size() when done
        std::vector<std::uint32_t> counts;    // per element of current group
        Binding binding;
        bool adjacent = false;  // next fed event must be consumed
    };

    bool relevant(const Term& event) const;
    bool groupComplete(const Config& c) const;
    bool saturated(const Config& c) const;
    void closeChain(Config c, bool consumedNow, std::vector<Config>& out) const;
    void adopt(std::vector<Config> next);

    EventPattern pattern_;
    std::vector<Group> groups_;
    std::set<std::pair<std::string, std::size_t>> alphabet_;
    std::vector<Config> configs_;
    MatchStatus status_ = MatchStatus::Empty;
    Binding completed_;
    bool consumedAny_ = false;
};

/// Folds a whole event list through a fresh matcher.
MatchStatus matchStatus(const EventPattern& pattern,
                        const std::vector<std::pair<Term, Time>>& events);

bool matches(const EventPattern& pattern,
             const std::vector<std::pair<Term, Time>>& events);

} // namespace ailtl

#endif
