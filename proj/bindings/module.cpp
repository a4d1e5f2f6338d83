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

// Python face of the engine. Times cross the boundary as plain integer
// seconds, enum-like values as their canonical lower-case names, and
// bindings as their "A=1,B=c7" signatures; everything else mirrors the C++
// surface one to one.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ailtl/monitor.hpp"
#include "ailtl/parser.hpp"
#include "ailtl/report.hpp"
#include "ailtl/scenarios.hpp"

namespace py = pybind11;
using namespace ailtl;

namespace {

std::optional<std::int64_t> seconds(const std::optional<Time>& t) {
    if (!t) return std::nullopt;
    return t->seconds();
}

TraceEvent makeEvent(std::int64_t t, const std::string& kind, const std::string& term) {
    auto k = eventKindFromName(kind);
    if (!k) throw py::value_error("unknown event kind: " + kind);
    return TraceEvent{Time(t), *k, parseGroundTerm(term)};
}

} // namespace

PYBIND11_MODULE(_native, m) {
    m.doc() = "Checks timed agent event traces against interval temporal rules.";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);

    py::class_<Term>(m, "Term")
        .def(py::init(&parseGroundTerm), py::arg("text"))
        .def_readonly("functor", &Term::functor)
        .def_property_readonly("arity", &Term::arity)
        .def("__str__", &formatTerm)
        .def("__repr__", [](const Term& t) { return "Term('" + formatTerm(t) + "')"; })
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; });

    py::class_<TraceEvent>(m, "TraceEvent")
        .def(py::init(&makeEvent), py::arg("t"), py::arg("kind"), py::arg("term"))
        .def_property_readonly("t", [](const TraceEvent& e) { return e.t.seconds(); })
        .def_property_readonly("kind",
                               [](const TraceEvent& e) { return eventKindName(e.kind); })
        .def_readonly("term", &TraceEvent::term)
        .def("__repr__",
             [](const TraceEvent& e) {
                 return "TraceEvent(" + std::to_string(e.t.seconds()) + ", '" +
                        eventKindName(e.kind) + "', '" + formatTerm(e.term) + "')";
             })
        .def("__eq__", [](const TraceEvent& a, const TraceEvent& b) { return a == b; });

    py::class_<RuleSet>(m, "RuleSet")
        .def(py::init(&parseRules), py::arg("text"))
        .def("__len__", [](const RuleSet& rs) { return rs.order.size(); })
        .def("render", [](const RuleSet& rs) { return render(rs); })
        .def("__eq__", [](const RuleSet& a, const RuleSet& b) { return a == b; })
        .def("__repr__", [](const RuleSet& rs) {
            return "RuleSet(" + std::to_string(rs.rules.size()) + " rules, " +
                   std::to_string(rs.exprs.size()) + " expressions)";
        });

    py::class_<InstanceRecord>(m, "Instance")
        .def_readonly("owner", &InstanceRecord::owner)
        .def_readonly("is_expression", &InstanceRecord::isExpression)
        .def_property_readonly(
            "binding", [](const InstanceRecord& r) { return r.binding.signature(); })
        .def_property_readonly(
            "activated_at", [](const InstanceRecord& r) { return r.activatedAt.seconds(); })
        .def_property_readonly("outcome",
                               [](const InstanceRecord& r) { return outcomeName(r.outcome); })
        .def_property_readonly("decided_at",
                               [](const InstanceRecord& r) { return seconds(r.decidedAt); })
        .def_readonly("dispatched", &InstanceRecord::dispatched)
        .def_readonly("note", &InstanceRecord::note)
        .def("__repr__", [](const InstanceRecord& r) {
            return "Instance('" + r.owner + "', " + outcomeName(r.outcome) + ")";
        });

    py::class_<MonitorReport>(m, "Report")
        .def_property_readonly(
            "coherence", [](const MonitorReport& r) { return coherenceName(r.coherence); })
        .def_property_readonly(
            "exit_code", [](const MonitorReport& r) { return coherenceExitCode(r.coherence); })
        .def_readonly("states", &MonitorReport::states)
        .def_property_readonly("first_state",
                               [](const MonitorReport& r) { return seconds(r.firstState); })
        .def_property_readonly("last_state",
                               [](const MonitorReport& r) { return seconds(r.lastState); })
        .def_readonly("instances", &MonitorReport::instances)
        .def_readonly("dispatched", &MonitorReport::dispatched)
        .def("json", &reportJson)
        .def("text", &reportText, py::arg("color") = false)
        .def("__repr__", [](const MonitorReport& r) {
            return std::string("Report(") + coherenceName(r.coherence) + ", " +
                   std::to_string(r.states) + " states)";
        });

    py::class_<CrossCheck>(m, "CrossCheck")
        .def_readonly("owner", &CrossCheck::owner)
        .def_readonly("binding", &CrossCheck::binding)
        .def_property_readonly(
            "incremental", [](const CrossCheck& c) { return outcomeName(c.incremental); })
        .def_property_readonly(
            "reference", [](const CrossCheck& c) { return oracleVerdictName(c.reference); })
        .def_readonly("skipped", &CrossCheck::skipped)
        .def_readonly("match", &CrossCheck::match)
        .def("__repr__", [](const CrossCheck& c) {
            return "CrossCheck('" + c.owner + "', " + (c.match ? "match" : "MISMATCH") + ")";
        });

    py::class_<Monitor>(m, "Monitor")
        .def(py::init([](const RuleSet& rs) { return new Monitor(rs); }), py::arg("rules"))
        .def(py::init([](const std::string& text) { return new Monitor(parseRules(text)); }),
             py::arg("rules_text"))
        .def("ingest", [](Monitor& mo, const TraceEvent& ev) { mo.ingest(ev); },
             py::arg("event"))
        .def(
            "ingest_all",
            [](Monitor& mo, const std::vector<TraceEvent>& evs) {
                for (const auto& ev : evs) mo.ingest(ev);
            },
            py::arg("events"))
        .def("finish", [](Monitor& mo) { return MonitorReport(mo.finish()); })
        .def("cross_validate", &Monitor::crossValidate);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("description", &Scenario::description)
        .def_readonly("rules_file", &Scenario::rulesFile)
        .def_readonly("rules", &Scenario::rules)
        .def_readonly("trace", &Scenario::trace)
        .def_property_readonly("expect",
                               [](const Scenario& s) { return coherenceName(s.expect); })
        .def("__repr__", [](const Scenario& s) { return "Scenario('" + s.name + "')"; });

    m.def("parse_rules", &parseRules, py::arg("text"),
          "Parses rule text into a validated rule set.");
    m.def("render_rules", [](const RuleSet& rs) { return render(rs); }, py::arg("rules"),
          "Canonical text for a rule set; parsing it back yields an equal set.");
    m.def("parse_trace", &parseTrace, py::arg("text"),
          "Parses trace text, one event per line, timestamps non-decreasing.");
    m.def("render_trace", &renderTrace, py::arg("events"),
          "Canonical plain-format trace text.");
    m.def("parse_term", &parseGroundTerm, py::arg("text"), "Parses one ground term.");
    m.def("cross_check_json", &crossCheckJson, py::arg("checks"));
    m.def("cross_check_text", &crossCheckText, py::arg("checks"), py::arg("color") = false);
    m.def("all_agree", &allAgree, py::arg("checks"),
          "True when every non-skipped entry agrees with the reference.");
    m.def("scenarios", &builtinScenarios, py::return_value_policy::copy,
          "The bundled demonstration runs.");
    m.def(
        "scenario",
        [](const std::string& name) {
            const Scenario* sc = findScenario(name);
            if (!sc) throw py::key_error(name);
            return *sc;
        },
        py::arg("name"));
    m.def(
        "check",
        [](const std::string& rulesText, const std::string& traceText) {
            Monitor mo(parseRules(rulesText));
            for (const auto& ev : parseTrace(traceText)) mo.ingest(ev);
            return MonitorReport(mo.finish());
        },
        py::arg("rules"), py::arg("trace"),
        "One-shot run: parse both texts, ingest every event, finish.");

    m.attr("__version__") = "0.1.0";
}
