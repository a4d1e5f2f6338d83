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
#include "ailtl/timeline.hpp"

#include <algorithm>

namespace ailtl {

using detail::FactChange;
using detail::FunctorKey;
using detail::Occurrence;
using detail::StateInfo;
using detail::TimelineData;

namespace {

FunctorKey keyOf(const Term& term)
{
    return {term.functor, static_cast<std::uint32_t>(term.args.size())};
}

/// Last change visible below the watermark, or nullptr.
const FactChange* lastChange(const std::vector<FactChange>& changes, std::uint64_t seqBound)
{
    auto it = std::upper_bound(changes.begin(), changes.end(), seqBound,
                               [](std::uint64_t bound, const FactChange& c) { return bound <= c.seq; });
    if (it == changes.begin()) {
        return nullptr;
    }
    return &*std::prev(it);
}

} // namespace

bool Snapshot::hasFact(const Term& fact) const
{
    auto outer = data_->facts.find(keyOf(fact));
    if (outer == data_->facts.end()) {
        return false;
    }
    auto inner = outer->second.find(fact.args);
    if (inner == outer->second.end()) {
        return false;
    }
    const FactChange* change = lastChange(inner->second, seqBound_);
    return change != nullptr && change->asserted;
}

void Snapshot::matchFacts(const Term& pattern, const Binding& binding,
                          const std::function<void(const Binding&)>& yield) const
{
    auto outer = data_->facts.find(keyOf(pattern));
    if (outer == data_->facts.end()) {
        return;
    }
    for (const auto& [args, changes] : outer->second) {
        const FactChange* change = lastChange(changes, seqBound_);
        if (change == nullptr || !change->asserted) {
            continue;
        }
        Binding candidate = binding;
        if (unify(pattern, Term{pattern.functor, args}, candidate)) {
            yield(candidate);
        }
    }
}

std::optional<PastEvent> Snapshot::currentPast(const std::string& functor, std::uint32_t arity,
                                               std::optional<EventKind> kind) const
{
    auto it = data_->past.find(FunctorKey{functor, arity});
    if (it == data_->past.end()) {
        return std::nullopt;
    }
    const auto& occs = it->second;
    auto end = std::upper_bound(occs.begin(), occs.end(), seqBound_,
                                [](std::uint64_t bound, const Occurrence& o) { return bound <= o.seq; });
    for (auto rit = std::make_reverse_iterator(end); rit != occs.rend(); ++rit) {
        if (!kind || rit->kind == *kind) {
            return PastEvent{rit->term, rit->kind, rit->t};
        }
    }
    return std::nullopt;
}

std::vector<PastEvent> Snapshot::occurrencesSince(Time since) const
{
    std::vector<PastEvent> out;
    for (std::uint64_t seq = 0; seq < seqBound_ && seq < data_->events.size(); ++seq) {
        const TraceEvent& ev = data_->events[seq];
        if (ev.t >= since && leavesPastEvent(ev.kind)) {
            out.push_back(PastEvent{ev.term, ev.kind, ev.t});
        }
    }
    return out;
}

History Snapshot::history() const
{
    History h;
    for (const auto& [key, occs] : data_->past) {
        (void)key;
        auto end = std::upper_bound(occs.begin(), occs.end(), seqBound_,
                                    [](std::uint64_t bound, const Occurrence& o) { return bound <= o.seq; });
        // Latest occurrence per kind is current; everything older is a
        // superseded version.
        std::map<EventKind, const Occurrence*> latest;
        for (auto it = occs.begin(); it != end; ++it) {
            latest[it->kind] = &*it;
        }
        for (auto it = occs.begin(); it != end; ++it) {
            PastEvent pe{it->term, it->kind, it->t};
            if (latest[it->kind] == &*it) {
                h.current.push_back(pe);
            } else {
                h.superseded.push_back(pe);
            }
        }
    }
    return h;
}

std::vector<Term> Snapshot::factList() const
{
    std::vector<Term> out;
    for (const auto& [key, byArgs] : data_->facts) {
        for (const auto& [args, changes] : byArgs) {
            const FactChange* change = lastChange(changes, seqBound_);
            if (change != nullptr && change->asserted) {
                out.push_back(Term{key.functor, args});
            }
        }
    }
    return out;
}

Timeline::Timeline() : data_(std::make_shared<TimelineData>()) {}

Snapshot Timeline::ingest(const TraceEvent& ev)
{
    if (!ev.term.ground()) {
        throw IngestError("event term is not ground: " + formatTerm(ev.term));
    }
    if (!data_->states.empty() && ev.t < data_->states.back().t) {
        throw IngestError("timestamp regression: " + formatTime(ev.t) + " after " +
                          formatTime(data_->states.back().t));
    }

    const auto seq = static_cast<std::uint64_t>(data_->events.size());
    if (data_->states.empty() || ev.t > data_->states.back().t) {
        data_->states.push_back(StateInfo{ev.t, seq});
    }
    const auto stateIndex = static_cast<std::uint32_t>(data_->states.size() - 1);

    switch (ev.kind) {
    case EventKind::External:
    case EventKind::Action:
    case EventKind::Internal:
        data_->past[keyOf(ev.term)].push_back(Occurrence{ev.term, ev.t, ev.kind, seq, stateIndex});
        break;
    case EventKind::AssertFact:
        data_->facts[keyOf(ev.term)][ev.term.args].push_back(FactChange{seq, stateIndex, true});
        break;
    case EventKind::RetractFact: {
        auto& changes = data_->facts[keyOf(ev.term)][ev.term.args];
        if (changes.empty() || !changes.back().asserted) {
            throw IngestError("retract of absent fact: " + formatTerm(ev.term));
        }
        changes.push_back(FactChange{seq, stateIndex, false});
        break;
    }
    }
    data_->events.push_back(ev);
    return Snapshot(data_, stateIndex, ev.t, seq + 1);
}

Snapshot Timeline::state(std::uint32_t index) const
{
    const std::uint64_t bound = (index + 1 < data_->states.size()) ? data_->states[index + 1].firstSeq
                                                                   : data_->events.size();
    return Snapshot(data_, index, data_->states[index].t, bound);
}

Snapshot Timeline::last() const
{
    if (empty()) {
        throw IngestError("empty timeline has no states");
    }
    return state(static_cast<std::uint32_t>(data_->states.size() - 1));
}

std::optional<Snapshot> Timeline::snapshotAt(Time t, AtMode mode) const
{
    const auto& states = data_->states;
    auto it = std::lower_bound(states.begin(), states.end(), t,
                               [](const StateInfo& s, Time bound) { return s.t < bound; });
    if (mode == AtMode::FirstAtOrAfter) {
        if (it == states.end()) {
            return std::nullopt;
        }
        return state(static_cast<std::uint32_t>(it - states.begin()));
    }
    // LastAtOrBefore: step back when we overshot.
    if (it != states.end() && it->t == t) {
        return state(static_cast<std::uint32_t>(it - states.begin()));
    }
    if (it == states.begin()) {
        return std::nullopt;
    }
    return state(static_cast<std::uint32_t>(std::prev(it) - states.begin()));
}

} // namespace ailtl
