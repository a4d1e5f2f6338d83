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
#include "ailtl/scenarios.hpp"

#include <algorithm>

namespace ailtl {

namespace {

constexpr std::int64_t kMinute = 60;
constexpr std::int64_t kHour = 3600;
constexpr std::int64_t kDay = 86400;

const char* kCashRules = R"(# Cash machine supervision.
#
# Customers must leave within five minutes of entering. After a refill the
# content has to stay above the minimum for eight hours; a robbery ends
# that obligation, and the police are called when it explains a shortfall.

rule exit_check: EVENTUALLY(T, T1; 30s) exit_customer_P(T2) :: enter_customer_P(T), T1 = T + 5m, T2 > T, T2 <= T1 / alert_operator

expr refill: fill_machine(Q) at T : ALWAYS(T, T1; 30s) (machine_content(B), minimum(M), B > M) :: T1 = T + 8h :::: robbery(A) | fill_machine(Q), reconsider_quantity(Q) || call_police
)";

const char* kCashSlowRules = R"(# Cash machine supervision with a sparse ten-minute inspection schedule.
# A shortfall between two inspections goes unseen unless a robbery forces
# an immediate check.

expr refill: fill_machine(Q) at T : ALWAYS(T, T1; 10m) (machine_content(B), minimum(M), B > M) :: T1 = T + 8h :::: robbery(A) | fill_machine(Q), reconsider_quantity(Q) || call_police
)";

const char* kDietRules = R"(# A diet begun must show a result between four and seven weeks in. Missing
# the window tightens the regime; making it earns a reward.

rule diet prio 10: EVENTUALLY(D2, D3; 1d) weight_ok :: start_diet_P(D1), D2 = D1 + 26d, D3 = D2 + 20d / stricter_diet // reward_cheat_meal
)";

const char* kMailRules = R"(# While mail is expected, the mailbox must have been checked within the
# last five minutes, tested every five minutes.

rule mail_watch: SOMETIMES(T; 5m) (check_mail_P at TC, now(TN), TN < TC + 5m) :: expect_mail_P at T
)";

const char* kSavingsRules = R"(# A deposit should have grown by ten percent within thirty days, otherwise
# the difference is transferred in.

rule savings: EVENTUALLY(T, T1; 1d) have_money(S1) :: deposit_P(S, T), S1 = (S * 110) / 100, T1 = T + 30d / transfer_funds(S1)
)";

const char* kCheckupRules = R"(# A car used for long trips must stay in working order for half a year
# after each service, checked daily.

rule checkup: ALWAYS(T, T1; 1d) work_ok(Car) :: service_P(Car, T), T1 = T + 180d, long_trips(Car) / schedule_service(Car)
)";

struct TraceBuilder {
    std::vector<TraceEvent> events;

    void at(std::int64_t t, EventKind kind, Term term) {
        events.push_back({Time(t), kind, std::move(term)});
    }
    void tick(std::int64_t from, std::int64_t to, std::int64_t step) {
        for (std::int64_t t = from; t <= to; t += step)
            events.push_back({Time(t), EventKind::Internal, Term{"tick", {}}});
    }
    void setFact(std::int64_t t, Term fact) { at(t, EventKind::AssertFact, std::move(fact)); }
    void swapFact(std::int64_t t, Term out, Term in) {
        at(t, EventKind::RetractFact, std::move(out));
        at(t, EventKind::AssertFact, std::move(in));
    }
    std::vector<TraceEvent> take() {
        std::stable_sort(events.begin(), events.end(),
                         [](const TraceEvent& a, const TraceEvent& b) { return a.t < b.t; });
        return std::move(events);
    }
};

Term t0(const char* f) { return Term{f, {}}; }
Term t1(const char* f, std::int64_t v) { return Term{f, {v}}; }
Term ts(const char* f, const char* sym) { return Term{f, {Symbol{sym}}}; }

void cashMachineStart(TraceBuilder& b, std::int64_t quantity) {
    b.setFact(0, t1("machine_content", quantity));
    b.setFact(0, t1("minimum", 200));
    b.at(0, EventKind::Internal, t1("fill_machine", quantity));
}

std::vector<Scenario> makeScenarios() {
    std::vector<Scenario> out;

    {
        TraceBuilder b;
        b.tick(0, 450, 30);
        b.at(100, EventKind::External, t0("enter_customer"));
        out.push_back({"cash_no_exit",
                       "a customer enters and never leaves; the five-minute exit window "
                       "closes and the operator is alerted",
                       "cash.ailtl", kCashRules, b.take(), Coherence::Incoherent});
    }
    {
        TraceBuilder b;
        cashMachineStart(b, 2000);
        b.tick(0, 300, 30);
        b.at(100, EventKind::External, t0("enter_customer"));
        b.at(250, EventKind::External, t0("exit_customer"));
        b.tick(1800, 30600, 1800);
        out.push_back({"cash_happy",
                       "the customer leaves in time and the refill keeps the machine "
                       "above the minimum for the whole eight hours",
                       "cash.ailtl", kCashRules, b.take(), Coherence::Coherent});
    }
    {
        TraceBuilder b;
        cashMachineStart(b, 2000);
        b.tick(0, 2400, 30);
        b.swapFact(600, t1("machine_content", 2000), t1("machine_content", 1500));
        b.swapFact(1200, t1("machine_content", 1500), t1("machine_content", 1000));
        b.swapFact(1800, t1("machine_content", 1000), t1("machine_content", 500));
        b.swapFact(2400, t1("machine_content", 500), t1("machine_content", 0));
        out.push_back({"cash_refill",
                       "withdrawals drain the machine; the content check fails and a "
                       "refill of the original quantity is requested",
                       "cash.ailtl", kCashRules, b.take(), Coherence::Incoherent});
    }
    {
        TraceBuilder b;
        cashMachineStart(b, 2000);
        b.tick(0, 2100, 30);
        b.swapFact(600, t1("machine_content", 2000), t1("machine_content", 1500));
        b.swapFact(1200, t1("machine_content", 1500), t1("machine_content", 1000));
        b.swapFact(1800, t1("machine_content", 1000), t1("machine_content", 500));
        b.at(2000, EventKind::External, ts("robbery", "r9"));
        out.push_back({"cash_robbery",
                       "a robbery ends the refill obligation while the content is still "
                       "fine, so nobody is blamed",
                       "cash.ailtl", kCashRules, b.take(), Coherence::Coherent});
    }
    {
        TraceBuilder b;
        cashMachineStart(b, 2000);
        b.tick(0, 2700, 100);
        b.swapFact(2500, t1("machine_content", 2000), t1("machine_content", 100));
        b.at(2700, EventKind::External, ts("robbery", "r2"));
        out.push_back({"cash_robbery_broken",
                       "the shortfall falls between two sparse inspections, but the "
                       "robbery forces an immediate check and the police are called",
                       "cash_slow.ailtl", kCashSlowRules, b.take(), Coherence::Incoherent});
    }
    {
        TraceBuilder b;
        b.at(0, EventKind::Internal, t0("start_diet"));
        b.tick(0, 48 * kDay, kDay);
        b.setFact(20 * kDay, t0("weight_ok"));
        out.push_back({"diet_met",
                       "the goal weight is reached early and still holds when the "
                       "window opens, earning the reward",
                       "diet.ailtl", kDietRules, b.take(), Coherence::Coherent});
    }
    {
        TraceBuilder b;
        b.at(0, EventKind::Internal, t0("start_diet"));
        b.tick(0, 48 * kDay, kDay);
        out.push_back({"diet_missed",
                       "the window passes without the goal weight, so the regime is "
                       "tightened",
                       "diet.ailtl", kDietRules, b.take(), Coherence::Incoherent});
    }
    {
        TraceBuilder b;
        b.at(0, EventKind::External, t0("expect_mail"));
        b.tick(0, 1800, 5 * kMinute);
        for (std::int64_t t = 0; t <= 1800; t += 5 * kMinute)
            b.at(t, EventKind::Internal, t0("check_mail"));
        out.push_back({"mail_kept",
                       "the mailbox is checked at every five-minute checkpoint; the "
                       "open-ended duty simply outlives the trace",
                       "mail.ailtl", kMailRules, b.take(), Coherence::WeaklyCoherent});
    }
    {
        TraceBuilder b;
        b.at(0, EventKind::External, t0("expect_mail"));
        b.tick(0, 1800, 5 * kMinute);
        for (std::int64_t t = 0; t <= 1800; t += 5 * kMinute)
            if (t != 900) b.at(t, EventKind::Internal, t0("check_mail"));
        out.push_back({"mail_missed",
                       "one five-minute checkpoint passes without a fresh check and the "
                       "duty fails right there",
                       "mail.ailtl", kMailRules, b.take(), Coherence::Incoherent});
    }
    {
        TraceBuilder b;
        b.at(0, EventKind::Internal, t1("deposit", 1000));
        b.tick(0, 31 * kDay, kDay);
        b.setFact(10 * kDay, t1("have_money", 1050));
        out.push_back({"savings_missed",
                       "the balance never reaches the ten-percent target, so the "
                       "computed difference is transferred",
                       "savings.ailtl", kSavingsRules, b.take(), Coherence::Incoherent});
    }
    {
        TraceBuilder b;
        b.setFact(0, ts("long_trips", "car1"));
        b.setFact(0, ts("work_ok", "car1"));
        b.at(0, EventKind::Internal, ts("service", "car1"));
        b.tick(0, 60 * kDay, kDay);
        b.at(40 * kDay, EventKind::RetractFact, ts("work_ok", "car1"));
        out.push_back({"checkup_breakdown",
                       "the serviced car breaks down inside the half-year warranty "
                       "window and a new service is scheduled",
                       "checkup.ailtl", kCheckupRules, b.take(), Coherence::Incoherent});
    }
    return out;
}

} // namespace

const std::vector<Scenario>& builtinScenarios() {
    static const std::vector<Scenario> scenarios = makeScenarios();
    return scenarios;
}

const Scenario* findScenario(const std::string& name) {
    for (const auto& s : builtinScenarios())
        if (s.name == name) return &s;
    return nullptr;
}

} // namespace ailtl
