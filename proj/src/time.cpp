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
#include "ailtl/time.hpp"

namespace ailtl {

std::optional<std::int64_t> durationUnitSeconds(const std::string& suffix)
{
    if (suffix == "s") return 1;
    if (suffix == "m") return 60;
    if (suffix == "h") return 3600;
    if (suffix == "d") return 86400;
    if (suffix == "mo") return 2592000;
    return std::nullopt;
}

std::string formatTime(Time t)
{
    return std::to_string(t.seconds());
}

} // namespace ailtl
