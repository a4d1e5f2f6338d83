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
#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ailtl/monitor.hpp"
#include "ailtl/parser.hpp"
#include "ailtl/report.hpp"
#include "ailtl/scenarios.hpp"
#include "ailtl/time.hpp"

namespace {

using namespace ailtl;

std::string readInput(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    buf << in.rdbuf();
    return buf.str();
}

void writeFile(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
}

// "90", "5m", "8h": a count with an optional duration suffix.
std::int64_t parseDuration(const std::string& text) {
    std::size_t digits = 0;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits])))
        ++digits;
    if (digits == 0) throw std::runtime_error("bad duration: " + text);
    std::int64_t count = std::stoll(text.substr(0, digits));
    std::string suffix = text.substr(digits);
    if (suffix.empty()) return count;
    auto unit = durationUnitSeconds(suffix);
    if (!unit) throw std::runtime_error("bad duration unit: " + suffix);
    return count * *unit;
}

bool colorAllowed() {
    const char* v = std::getenv("AILTL_COLOR");
    return v == nullptr || std::string(v) != "0";
}

const MonitorReport& runTrace(Monitor& monitor, const std::vector<TraceEvent>& trace,
                              std::optional<std::int64_t> until) {
    for (const auto& ev : trace) {
        if (until && ev.t.seconds() > *until) break;
        monitor.ingest(ev);
    }
    return monitor.finish();
}

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    writeFile(outPath, text);
}

struct CheckArgs {
    std::string rules;
    std::string trace;
    std::string format = "text";
    std::string out;
    std::string until;
    bool color = false;
};

int runCheck(const CheckArgs& args) {
    Monitor monitor(parseRules(readInput(args.rules)));
    std::optional<std::int64_t> until;
    if (!args.until.empty()) until = parseDuration(args.until);
    const MonitorReport& rep = runTrace(monitor, parseTrace(readInput(args.trace)), until);
    bool color = args.color && colorAllowed() && args.out.empty();
    emit(args.format == "json" ? reportJson(rep) : reportText(rep, color), args.out);
    return coherenceExitCode(rep.coherence);
}

int runOracle(const CheckArgs& args) {
    Monitor monitor(parseRules(readInput(args.rules)));
    std::optional<std::int64_t> until;
    if (!args.until.empty()) until = parseDuration(args.until);
    runTrace(monitor, parseTrace(readInput(args.trace)), until);
    auto checks = monitor.crossValidate();
    bool color = args.color && colorAllowed() && args.out.empty();
    emit(args.format == "json" ? crossCheckJson(checks) : crossCheckText(checks, color),
         args.out);
    return allAgree(checks) ? 0 : 1;
}

struct GenArgs {
    std::string dir;
    std::string scenario;
    bool list = false;
    bool reports = false;
};

int runGen(const GenArgs& args) {
    const auto& all = builtinScenarios();
    if (args.list) {
        std::size_t width = 0;
        for (const auto& sc : all) width = std::max(width, sc.name.size());
        for (const auto& sc : all) {
            std::cout << sc.name << std::string(width - sc.name.size() + 2, ' ')
                      << sc.description << "  [" << sc.rulesFile << "]\n";
        }
        return 0;
    }

    std::vector<const Scenario*> picked;
    if (args.scenario.empty()) {
        for (const auto& sc : all) picked.push_back(&sc);
    } else {
        const Scenario* sc = findScenario(args.scenario);
        if (!sc) throw std::runtime_error("unknown scenario: " + args.scenario);
        picked.push_back(sc);
    }

    std::filesystem::path dir(args.dir);
    std::filesystem::create_directories(dir);
    for (const Scenario* sc : picked) {
        writeFile(dir / sc->rulesFile, sc->rules);
        writeFile(dir / (sc->name + ".trace"), renderTrace(sc->trace));
        if (args.reports) {
            Monitor monitor(parseRules(sc->rules));
            const MonitorReport& rep = runTrace(monitor, sc->trace, std::nullopt);
            writeFile(dir / (sc->name + ".report.json"), reportJson(rep));
            writeFile(dir / (sc->name + ".report.txt"), reportText(rep, false));
        }
        std::cout << sc->name << "\n";
    }
    return 0;
}

int runRender(const std::string& rulesPath) {
    std::cout << render(parseRules(readInput(rulesPath)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks timed event traces against interval temporal rules"};
    app.require_subcommand(1);
    app.footer("Exit codes: check 0 coherent, 1 weakly coherent, 2 incoherent;\n"
               "oracle 0 all verdicts agree, 1 disagreement; any error 3.");

    CheckArgs check;
    CLI::App* checkCmd =
        app.add_subcommand("check", "Run a rule file over a trace and report verdicts");
    checkCmd->add_option("--rules", check.rules, "Rule file")->required();
    checkCmd->add_option("--trace", check.trace, "Trace file, or - for stdin")->required();
    checkCmd->add_option("--format", check.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    checkCmd->add_option("--out", check.out, "Write the report here instead of stdout");
    checkCmd->add_option("--until", check.until,
                         "Ignore trace events after this time, e.g. 900 or 15m");
    checkCmd->add_flag("--color", check.color, "ANSI colors (text format, stdout only)");

    CheckArgs oracle;
    CLI::App* oracleCmd = app.add_subcommand(
        "oracle", "Re-check every settled verdict against a from-scratch evaluation");
    oracleCmd->add_option("--rules", oracle.rules, "Rule file")->required();
    oracleCmd->add_option("--trace", oracle.trace, "Trace file, or - for stdin")->required();
    oracleCmd->add_option("--format", oracle.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    oracleCmd->add_option("--out", oracle.out, "Write the comparison here instead of stdout");
    oracleCmd->add_option("--until", oracle.until,
                          "Ignore trace events after this time, e.g. 900 or 15m");
    oracleCmd->add_flag("--color", oracle.color, "ANSI colors (text format, stdout only)");

    GenArgs gen;
    CLI::App* genCmd =
        app.add_subcommand("gen", "Write the built-in demonstration rule and trace files");
    genCmd->add_flag("--list", gen.list, "List scenarios and exit");
    genCmd->add_option("--scenario", gen.scenario, "Only this scenario (default: all)");
    genCmd->add_option("--dir", gen.dir, "Output directory");
    genCmd->add_flag("--reports", gen.reports, "Also write each scenario's reports");

    std::string renderRules;
    CLI::App* renderCmd =
        app.add_subcommand("render", "Parse a rule file and print its canonical form");
    renderCmd->add_option("--rules", renderRules, "Rule file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (checkCmd->parsed()) return runCheck(check);
        if (oracleCmd->parsed()) return runOracle(oracle);
        if (genCmd->parsed()) {
            if (!gen.list && gen.dir.empty())
                throw std::runtime_error("gen needs --dir (or --list)");
            return runGen(gen);
        }
        if (renderCmd->parsed()) return runRender(renderRules);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
