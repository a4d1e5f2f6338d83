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
#include "ailtl/report.hpp"

#include <sstream>

#include <json.hpp>

namespace ailtl {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* outcomeColor(Outcome o) {
    switch (o) {
        case Outcome::Holds:
        case Outcome::Discharged: return "\033[32m";
        case Outcome::Violated:
        case Outcome::Broken: return "\033[31m";
        case Outcome::WeakHolds: return "\033[33m";
        case Outcome::Pending: break;
    }
    return "";
}

const char* coherenceColor(Coherence c) {
    switch (c) {
        case Coherence::Coherent: return "\033[32m";
        case Coherence::WeaklyCoherent: return "\033[33m";
        case Coherence::Incoherent: return "\033[31m";
    }
    return "";
}

std::string paint(const std::string& word, const char* code, bool color) {
    if (!color || !*code) return word;
    return std::string(code) + word + "\033[0m";
}

ordered_json instanceJson(const InstanceRecord& rec) {
    ordered_json j;
    j["owner"] = rec.owner;
    j["kind"] = rec.isExpression ? "expression" : "rule";
    j["binding"] = rec.binding.signature();
    j["activated_at"] = rec.activatedAt.seconds();
    j["outcome"] = outcomeName(rec.outcome);
    if (rec.decidedAt) j["decided_at"] = rec.decidedAt->seconds();
    else j["decided_at"] = nullptr;
    j["dispatched"] = rec.dispatched;
    if (rec.note) j["note"] = *rec.note;
    else j["note"] = nullptr;
    return j;
}

} // namespace

std::string reportJson(const MonitorReport& rep) {
    ordered_json j;
    j["coherence"] = coherenceName(rep.coherence);
    j["exit_code"] = coherenceExitCode(rep.coherence);
    j["states"] = rep.states;
    if (rep.firstState) {
        j["span"] = ordered_json{{"from", rep.firstState->seconds()},
                                 {"to", rep.lastState->seconds()}};
    } else {
        j["span"] = nullptr;
    }
    j["declarations"] = ordered_json::array();
    for (const auto& d : rep.declarations) {
        j["declarations"].push_back(ordered_json{{"name", d.name},
                                                 {"kind", d.isExpression ? "expression" : "rule"},
                                                 {"activations", d.activations}});
    }
    j["instances"] = ordered_json::array();
    for (const auto& rec : rep.instances) j["instances"].push_back(instanceJson(rec));
    j["dispatched"] = ordered_json::array();
    for (const auto& ev : rep.dispatched) {
        j["dispatched"].push_back(ordered_json{{"t", ev.t.seconds()},
                                               {"kind", eventKindName(ev.kind)},
                                               {"term", formatTerm(ev.term)}});
    }
    j["diagnostics"] = ordered_json::array();
    for (const auto& d : rep.diagnostics) {
        j["diagnostics"].push_back(
            ordered_json{{"at", d.at.seconds()}, {"message", d.message}});
    }
    return j.dump(2) + "\n";
}

std::string reportText(const MonitorReport& rep, bool color) {
    std::ostringstream os;
    os << "coherence: "
       << paint(coherenceName(rep.coherence), coherenceColor(rep.coherence), color) << '\n';
    os << "states: " << rep.states;
    if (rep.firstState)
        os << " (t " << rep.firstState->seconds() << " .. " << rep.lastState->seconds()
           << ")";
    os << '\n';
    for (const auto& d : rep.declarations) {
        os << '\n' << (d.isExpression ? "expr " : "rule ") << d.name << ": ";
        if (d.activations == 0) os << "no activations\n";
        else os << d.activations << (d.activations == 1 ? " activation\n" : " activations\n");
        for (const auto& rec : rep.instances) {
            if (rec.owner != d.name) continue;
            os << "  [" << rec.binding.signature() << "] activated at "
               << rec.activatedAt.seconds() << " -> "
               << paint(outcomeName(rec.outcome), outcomeColor(rec.outcome), color);
            if (rec.decidedAt) os << " at " << rec.decidedAt->seconds();
            os << '\n';
            if (rec.note) os << "    note: " << *rec.note << '\n';
            if (!rec.dispatched.empty()) {
                os << "    dispatched: ";
                for (std::size_t i = 0; i < rec.dispatched.size(); ++i) {
                    if (i) os << ", ";
                    os << rec.dispatched[i];
                }
                os << '\n';
            }
        }
    }
    if (!rep.dispatched.empty()) {
        os << "\ndispatched events:\n";
        for (const auto& ev : rep.dispatched)
            os << "  " << ev.t.seconds() << ' ' << eventKindName(ev.kind) << ' '
               << formatTerm(ev.term) << '\n';
    }
    if (!rep.diagnostics.empty()) {
        os << "\ndiagnostics:\n";
        for (const auto& d : rep.diagnostics)
            os << "  " << d.at.seconds() << ' ' << d.message << '\n';
    }
    return os.str();
}

std::string crossCheckJson(const std::vector<CrossCheck>& checks) {
    ordered_json j;
    j["checked"] = 0;
    j["skipped"] = 0;
    j["mismatches"] = 0;
    j["entries"] = ordered_json::array();
    int checked = 0;
    int skipped = 0;
    int mismatches = 0;
    for (const auto& c : checks) {
        ordered_json e;
        e["owner"] = c.owner;
        e["binding"] = c.binding;
        e["incremental"] = outcomeName(c.incremental);
        if (c.skipped) {
            e["reference"] = nullptr;
            e["match"] = nullptr;
            ++skipped;
        } else {
            e["reference"] = oracleVerdictName(c.reference);
            e["match"] = c.match;
            ++checked;
            if (!c.match) ++mismatches;
        }
        j["entries"].push_back(std::move(e));
    }
    j["checked"] = checked;
    j["skipped"] = skipped;
    j["mismatches"] = mismatches;
    return j.dump(2) + "\n";
}

std::string crossCheckText(const std::vector<CrossCheck>& checks, bool color) {
    std::ostringstream os;
    int checked = 0;
    int skipped = 0;
    int mismatches = 0;
    for (const auto& c : checks) {
        os << c.owner << " [" << c.binding << "]: " << outcomeName(c.incremental);
        if (c.skipped) {
            os << " (pattern-decided, skipped)\n";
            ++skipped;
            continue;
        }
        os << " / reference " << oracleVerdictName(c.reference) << ": ";
        ++checked;
        if (c.match) {
            os << paint("agree", "\033[32m", color) << '\n';
        } else {
            os << paint("MISMATCH", "\033[31m", color) << '\n';
            ++mismatches;
        }
    }
    os << "agreement: " << (checked - mismatches) << '/' << checked << " checked, "
       << skipped << " skipped\n";
    return os.str();
}

bool allAgree(const std::vector<CrossCheck>& checks) {
    for (const auto& c : checks)
        if (!c.skipped && !c.match) return false;
    return true;
}

} // namespace ailtl
