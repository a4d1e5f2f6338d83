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
#ifndef AILTL_EVENT_HPP
#define AILTL_EVENT_HPP

#include <optional>
#include <string>

#include "ailtl/term.hpp"
#include "ailtl/time.hpp"

namespace ailtl {

/// What a trace line describes.
///
/// External, Action and Internal events are observations and leave a past
/// event behind; AssertFact and RetractFact edit the fact store of the next
/// state.
enum class EventKind {
    External,
    Action,
    Internal,
    AssertFact,
    RetractFact,
};

/// True for the kinds that are recorded as past events.
bool leavesPastEvent(EventKind kind);

const char* eventKindName(EventKind kind);
std::optional<EventKind> eventKindFromName(const std::string& name);

/// One timed trace entry. The term must be ground.
struct TraceEvent {
    Time t;
    EventKind kind = EventKind::External;
    Term term;

    auto operator<=>(const TraceEvent&) const = default;
};

/// A remembered occurrence of an observable event.
struct PastEvent {
    Term term;
    EventKind kind = EventKind::External;
    Time t;

    auto operator<=>(const PastEvent&) const = default;
};

} // namespace ailtl

#endif
