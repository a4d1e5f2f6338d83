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
#ifndef AILTL_SCENARIOS_HPP
#define AILTL_SCENARIOS_HPP

#include <string>
#include <vector>

#include "ailtl/event.hpp"
#include "ailtl/monitor.hpp"

namespace ailtl {

/// A self-contained demonstration run: a rule file, a trace and the verdict
/// the run must end with. Several scenarios can share one rule file.
struct Scenario {
    std::string name;
    std::string description;
    std::string rulesFile;
    std::string rules;
    std::vector<TraceEvent> trace;
    Coherence expect = Coherence::Coherent;
};

const std::vector<Scenario>& builtinScenarios();
const Scenario* findScenario(const std::string& name);

} // namespace ailtl

#endif
