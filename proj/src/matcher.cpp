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
#include "ailtl/matcher.hpp"

#include <algorithm>

namespace ailtl {

namespace {

std::uint32_t minRequired(Multiplicity m) {
    return m == Multiplicity::Star ? 0 : 1;
}

bool hasCapacity(Multiplicity m, std::uint32_t count) {
    return m == Multiplicity::One ? count < 1 : true;
}

} // namespace

const char* matchStatusName(MatchStatus s) {
    switch (s) {
        case MatchStatus::Empty: return "empty";
        case MatchStatus::Partial: return "partial";
        case MatchStatus::Complete: return "complete";
        case MatchStatus::Incompatible: return "incompatible";
    }
    return "?";
}

Matcher::Matcher(const EventPattern& pattern) : pattern_(pattern) {
    const auto& els = pattern_.elements;
    for (std::size_t i = 0; i < els.size(); ++i) {
        if (i == 0 || els[i].link != Connective::AnyOrder) {
            groups_.push_back({i, i, i == 0 ? Connective::AnyOrder : els[i].link});
        } else {
            groups_.back().last = i;
        }
        if (!els[i].wildcard)
            alphabet_.insert({els[i].event.functor, els[i].event.args.size()});
    }

    Config start;
    if (!groups_.empty())
        start.counts.assign(groups_[0].last - groups_[0].first + 1, 0);
    std::vector<Config> initial;
    closeChain(std::move(start), false, initial);
    adopt(std::move(initial));
}

bool Matcher::relevant(const Term& event) const {
    return alphabet_.count({event.functor, event.args.size()}) != 0;
}

bool Matcher::groupComplete(const Config& c) const {
    if (c.group >= groups_.size()) return true;
    const Group& g = groups_[c.group];
    for (std::size_t i = g.first; i <= g.last; ++i)
        if (c.counts[i - g.first] < minRequired(pattern_.elements[i].mult)) return false;
    return true;
}

// A config whose group can absorb nothing further is useless on its own:
// it cannot consume, and the committed successor it would eventually close
// into is emitted by closeChain in the same call.
bool Matcher::saturated(const Config& c) const {
    if (c.group >= groups_.size()) return false;
    const Group& g = groups_[c.group];
    for (std::size_t i = g.first; i <= g.last; ++i)
        if (hasCapacity(pattern_.elements[i].mult, c.counts[i - g.first])) return false;
    return true;
}

// Emits c and, while the current group is satisfied, the configurations that
// commit to it and move on. Closing must happen here, at consumption time:
// an adjacency obligation from `>` is anchored to the event just consumed.
// A group that closes without consuming anything passes its own entry
// obligation through to an immediately-linked successor.
void Matcher::closeChain(Config c, bool consumedNow, std::vector<Config>& out) const {
    if (!saturated(c)) out.push_back(c);
    while (c.group < groups_.size() && groupComplete(c)) {
        std::uint32_t total = 0;
        for (std::uint32_t n : c.counts) total += n;
        Config next;
        next.group = c.group + 1;
        next.binding = c.binding;
        if (next.group < groups_.size()) {
            const Group& g = groups_[next.group];
            next.counts.assign(g.last - g.first + 1, 0);
            if (g.link == Connective::ImmediatelyBefore)
                next.adjacent = (consumedNow && total > 0) ? true : c.adjacent;
        }
        out.push_back(next);
        c = std::move(next);
    }
}

void Matcher::adopt(std::vector<Config> next) {
    configs_.clear();
    for (auto& c : next) {
        bool dup = false;
        for (const auto& seen : configs_)
            if (seen.group == c.group && seen.counts == c.counts &&
                seen.adjacent == c.adjacent && seen.binding == c.binding) {
                dup = true;
                break;
            }
        if (!dup) configs_.push_back(std::move(c));
    }

    for (const auto& c : configs_) {
        if (c.group >= groups_.size()) {
            status_ = MatchStatus::Complete;
            completed_ = c.binding;
            return;
        }
    }
    if (configs_.empty()) {
        status_ = MatchStatus::Incompatible;
        return;
    }
    status_ = consumedAny_ ? MatchStatus::Partial : MatchStatus::Empty;
}

MatchStatus Matcher::feed(const Term& event, Time t) {
    if (status_ == MatchStatus::Complete || status_ == MatchStatus::Incompatible)
        return status_;

    const bool rel = relevant(event);
    std::vector<Config> next;
    bool consumedHere = false;

    for (const Config& c : configs_) {
        const Group& g = groups_[c.group];
        for (std::size_t i = g.first; i <= g.last; ++i) {
            const PatternElement& el = pattern_.elements[i];
            if (!hasCapacity(el.mult, c.counts[i - g.first])) continue;
            Binding b = c.binding;
            if (!el.wildcard && !unify(el.event, event, b)) continue;
            if (el.atVar && !b.bind(el.atVar->name, Value{t.seconds()})) continue;
            Config consumed = c;
            consumed.binding = std::move(b);
            consumed.counts[i - g.first] += 1;
            consumed.adjacent = false;
            consumedHere = true;
            closeChain(std::move(consumed), true, next);
        }
        if (!rel && !c.adjacent) next.push_back(c);
    }

    consumedAny_ = consumedAny_ || consumedHere;
    adopt(std::move(next));
    return status_;
}

EventPattern Matcher::residual() const {
    if (status_ == MatchStatus::Complete) return EventPattern{};
    if (status_ == MatchStatus::Incompatible) return pattern_;

    // The least advanced alternative keeps the most of the pattern and so
    // the most of its alphabet; anything a further-advanced alternative
    // could still do is recovered by re-closing the residual from scratch.
    const Config* best = &configs_.front();
    auto progress = [](const Config& c) {
        std::uint32_t total = 0;
        for (std::uint32_t n : c.counts) total += n;
        return std::make_pair(c.group, total);
    };
    for (const auto& c : configs_)
        if (progress(c) < progress(*best)) best = &c;

    EventPattern out;
    const Group& g = groups_[best->group];
    for (std::size_t i = g.first; i < pattern_.elements.size(); ++i) {
        PatternElement el = pattern_.elements[i];
        if (i <= g.last) {
            std::uint32_t count = best->counts[i - g.first];
            if (count > 0) {
                if (el.mult == Multiplicity::One) continue;
                el.mult = Multiplicity::Star;
            }
        }
        el.event = applyBinding(el.event, best->binding);
        if (out.elements.empty()) el.link = Connective::AnyOrder;
        out.elements.push_back(std::move(el));
    }
    return out;
}

MatchStatus matchStatus(const EventPattern& pattern,
                        const std::vector<std::pair<Term, Time>>& events) {
    Matcher m(pattern);
    for (const auto& [term, t] : events) {
        if (m.status() == MatchStatus::Complete || m.status() == MatchStatus::Incompatible)
            break;
        m.feed(term, t);
    }
    return m.status();
}

bool matches(const EventPattern& pattern,
             const std::vector<std::pair<Term, Time>>& events) {
    return matchStatus(pattern, events) == MatchStatus::Complete;
}

} // namespace ailtl
