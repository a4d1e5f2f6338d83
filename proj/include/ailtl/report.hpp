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
#ifndef AILTL_REPORT_HPP
#define AILTL_REPORT_HPP

#include <string>
#include <vector>

#include "ailtl/monitor.hpp"

namespace ailtl {

/// Deterministic JSON rendering: fixed key order, two-space indent,
/// trailing newline. Two identical runs produce identical bytes.
std::string reportJson(const MonitorReport& rep);

/// Line-oriented rendering for terminals. Color uses ANSI escapes and is
/// off unless requested.
std::string reportText(const MonitorReport& rep, bool color = false);

std::string crossCheckJson(const std::vector<CrossCheck>& checks);
std::string crossCheckText(const std::vector<CrossCheck>& checks, bool color = false);

/// True when every non-skipped entry agrees with the reference.
bool allAgree(const std::vector<CrossCheck>& checks);

} // namespace ailtl

#endif
