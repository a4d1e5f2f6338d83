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

"""End-to-end exercise of the Python surface against a built module."""

import ailtl


def main() -> None:
    # Parsing reaches the canonical fixed point in one render.
    rules = ailtl.parse_rules("rule r: ALWAYS(0, 5m) battery_ok / recharge\n")
    canon = rules.render()
    assert ailtl.parse_rules(canon).render() == canon
    assert len(rules) == 1

    # A monitored run that fails mid-window, with the repair dispatched.
    trace = ailtl.parse_trace(
        "0 assert battery_ok\n"
        "0 internal tick\n"
        "120 retract battery_ok\n"
        "120 internal tick\n"
    )
    mon = ailtl.Monitor(rules)
    mon.ingest_all(trace)
    rep = mon.finish()
    assert rep.coherence == "incoherent" and rep.exit_code == 2
    (inst,) = rep.instances
    assert inst.owner == "r" and inst.outcome == "violated"
    assert inst.decided_at == 120
    assert inst.dispatched == ["action recharge"]
    assert len(rep.dispatched) == 1

    # The incremental verdict agrees with the reference evaluation.
    checks = mon.cross_validate()
    assert checks and ailtl.all_agree(checks)
    assert checks[0].incremental == "violated" and checks[0].reference == "false"

    # The one-shot helper reproduces the same report bytes.
    assert ailtl.check(canon, ailtl.render_trace(trace)).json() == rep.json()

    # Events and terms construct directly.
    ev = ailtl.TraceEvent(7, "external", "pay(o1,50)")
    assert ev.t == 7 and ev.kind == "external"
    assert ev.term.functor == "pay" and ev.term.arity == 2

    # Bundled scenarios play back to their recorded coherence.
    names = [sc.name for sc in ailtl.scenarios()]
    assert "cash_no_exit" in names and "mail_kept" in names
    sc = ailtl.scenario("cash_refill")
    mon = ailtl.Monitor(ailtl.parse_rules(sc.rules))
    mon.ingest_all(sc.trace)
    assert mon.finish().coherence == sc.expect

    # Defects surface as the package's exception types.
    try:
        ailtl.parse_rules("rule broken: WHENEVER x\n")
    except ailtl.ParseError:
        pass
    else:
        raise AssertionError("ParseError expected")
    try:
        ailtl.scenario("no_such_scenario")
    except KeyError:
        pass
    else:
        raise AssertionError("KeyError expected")

    print("python smoke: ok")


if __name__ == "__main__":
    main()
