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
#ifndef AILTL_TIME_HPP
#define AILTL_TIME_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ailtl {

/// Error raised by time construction or arithmetic.
class TimeError : public std::runtime_error {
public:
    explicit TimeError(const std::string& what) : std::runtime_error(what) {}
};

/// A point on the trace clock, measured in whole seconds since the origin.
///
/// All duration suffixes of the rule language normalize to seconds on input
/// (s = 1, m = 60, h = 3600, d = 86400, mo = 2592000), so one integer field
/// is enough. Values are never negative and all arithmetic is overflow
/// checked.
class Time {
public:
    Time() = default;

    explicit Time(std::int64_t seconds) : seconds_(seconds)
    {
        if (seconds < 0) {
            throw TimeError("negative time value: " + std::to_string(seconds));
        }
    }

    std::int64_t seconds() const { return seconds_; }

    Time plusSeconds(std::int64_t delta) const
    {
        std::int64_t out = 0;
        if (__builtin_add_overflow(seconds_, delta, &out)) {
            throw TimeError("time arithmetic overflow");
        }
        return Time(out);
    }

    auto operator<=>(const Time&) const = default;

private:
    std::int64_t seconds_ = 0;
};

/// Seconds per unit for the duration suffixes accepted by the parser.
std::optional<std::int64_t> durationUnitSeconds(const std::string& suffix);

/// Renders a time as its canonical source form (a bare seconds count).
std::string formatTime(Time t);

} // namespace ailtl

#endif
