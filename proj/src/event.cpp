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
#include "ailtl/event.hpp"

namespace ailtl {

bool leavesPastEvent(EventKind kind)
{
    switch (kind) {
    case EventKind::External:
    case EventKind::Action:
    case EventKind::Internal:
        return true;
    case EventKind::AssertFact:
    case EventKind::RetractFact:
        return false;
    }
    return false;
}

const char* eventKindName(EventKind kind)
{
    switch (kind) {
    case EventKind::External: return "external";
    case EventKind::Action: return "action";
    case EventKind::Internal: return "internal";
    case EventKind::AssertFact: return "assert";
    case EventKind::RetractFact: return "retract";
    }
    return "?";
}

std::optional<EventKind> eventKindFromName(const std::string& name)
{
    if (name == "external") return EventKind::External;
    if (name == "action") return EventKind::Action;
    if (name == "internal") return EventKind::Internal;
    if (name == "assert") return EventKind::AssertFact;
    if (name == "retract") return EventKind::RetractFact;
    return std::nullopt;
}

} // namespace ailtl
