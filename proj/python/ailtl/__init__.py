# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Checks timed agent event traces against interval temporal rules.

The heavy lifting lives in the compiled ``ailtl._native`` module; this
package re-exports its surface unchanged. Quick start::

    import ailtl

    report = ailtl.check("rule r: ALWAYS(0, 300) battery_ok\n",
                         "0 internal tick\n300 internal tick\n")
    print(report.coherence, report.exit_code)
"""

from ailtl._native import (
    CrossCheck,
    IngestError,
    Instance,
    Monitor,
    ParseError,
    Report,
    RuleSet,
    Scenario,
    Term,
    TraceEvent,
    __version__,
    all_agree,
    check,
    cross_check_json,
    cross_check_text,
    parse_rules,
    parse_term,
    parse_trace,
    render_rules,
    render_trace,
    scenario,
    scenarios,
)

__all__ = [
    "CrossCheck",
    "IngestError",
    "Instance",
    "Monitor",
    "ParseError",
    "Report",
    "RuleSet",
    "Scenario",
    "Term",
    "TraceEvent",
    "__version__",
    "all_agree",
    "check",
    "cross_check_json",
    "cross_check_text",
    "parse_rules",
    "parse_term",
    "parse_trace",
    "render_rules",
    "render_trace",
    "scenario",
    "scenarios",
]
