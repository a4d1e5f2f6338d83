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
#ifndef AILTL_PARSER_HPP
#define AILTL_PARSER_HPP

#include <string>
#include <vector>

#include "ailtl/event.hpp"
#include "ailtl/formula.hpp"
#include "ailtl/source.hpp"

namespace ailtl {

/// Parses rule text into a validated rule set. Throws ParseError with a
/// source location on syntax errors and on semantic violations such as
/// duplicate names or context-binding gaps.
RuleSet parseRules(const std::string& text);

/// Parses a trace. Each non-comment line is either
///   `t kind functor(arg,...)`
/// or a JSON object `{"t":..,"kind":"..","term":".."}`. Timestamps must be
/// non-decreasing. Throws ParseError naming the line on any defect.
std::vector<TraceEvent> parseTrace(const std::string& text);

/// Canonical text for a rule set. parseRules(render(rs)) == rs.
std::string render(const RuleSet& ruleSet);

std::string render(const RuleSpec& rule);
std::string render(const EvolutionaryExpr& expr);
std::string render(const EventPattern& pattern);

/// Canonical plain-format trace text, one event per line.
std::string renderTrace(const std::vector<TraceEvent>& events);

/// Parses one ground term, e.g. "withdraw(c7,200)".
Term parseGroundTerm(const std::string& text);

/// Parses a standalone event pattern, e.g. "pay(X) >> ship(X) at T".
/// Unlike the pattern slots of an expr declaration, a standalone pattern
/// may consist of starred elements only.
EventPattern parseEventPattern(const std::string& text);

} // namespace ailtl

#endif
