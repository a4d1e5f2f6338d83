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
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "ailtl/monitor.hpp"
#include "ailtl/parser.hpp"
#include "ailtl/report.hpp"
#include "ailtl/scenarios.hpp"

using namespace ailtl;

namespace {

std::string golden(const std::string& file) {
    std::string path = std::string(AILTL_GOLDEN_DIR) + "/" + file;
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const MonitorReport& reportFor(Monitor& monitor, const Scenario& sc) {
    for (const auto& ev : sc.trace) monitor.ingest(ev);
    return monitor.finish();
}

} // namespace

// The checked-in files pin every byte of the public output formats. A
// mismatch here means an output format changed; if that was intended,
// regenerate with `ailtl gen --dir tests/golden --reports`.
TEST_CASE("each scenario reproduces its checked-in files byte for byte") {
    std::set<std::string> rulesSeen;
    for (const Scenario& sc : builtinScenarios()) {
        CAPTURE(sc.name);
        if (rulesSeen.insert(sc.rulesFile).second)
            CHECK(sc.rules == golden(sc.rulesFile));
        CHECK(renderTrace(sc.trace) == golden(sc.name + ".trace"));

        Monitor monitor(parseRules(sc.rules));
        const MonitorReport& rep = reportFor(monitor, sc);
        CHECK(reportJson(rep) == golden(sc.name + ".report.json"));
        CHECK(reportText(rep, false) == golden(sc.name + ".report.txt"));
    }
}

TEST_CASE("golden rule files survive a parse-render round trip") {
    std::set<std::string> rulesSeen;
    for (const Scenario& sc : builtinScenarios()) {
        if (!rulesSeen.insert(sc.rulesFile).second) continue;
        CAPTURE(sc.rulesFile);
        std::string canonical = render(parseRules(golden(sc.rulesFile)));
        CHECK(render(parseRules(canonical)) == canonical);
    }
}

TEST_CASE("golden traces parse back to the scenario events") {
    for (const Scenario& sc : builtinScenarios()) {
        CAPTURE(sc.name);
        CHECK(parseTrace(golden(sc.name + ".trace")) == sc.trace);
    }
}
