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
#include "ailtl/oracle.hpp"

#include "ailtl/query.hpp"

namespace ailtl {

const char* oracleVerdictName(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::True: return "true";
        case OracleVerdict::False: return "false";
        case OracleVerdict::Undetermined: return "undetermined";
    }
    return "?";
}

OracleVerdict oracleScale(Verdict v) {
    switch (v) {
        case Verdict::Holds: return OracleVerdict::True;
        case Verdict::Violated: return OracleVerdict::False;
        default: return OracleVerdict::Undetermined;
    }
}

namespace {

struct Scope {
    const std::vector<Snapshot>& states;
    const std::vector<Literal>& phi;
    const Binding& binding;
    Time activation;
    std::optional<std::int64_t> k;

    bool inScope(const Snapshot& s) const { return s.t() >= activation; }

    bool dueAt(Time t) const {
        return !k || (t.seconds() - activation.seconds()) % *k == 0;
    }

    bool phiAt(const Snapshot& s) const { return holds(s, phi, binding); }

    /// First state at or after the given instant, ignoring pre-activation
    /// states.
    const Snapshot* firstAtOrAfter(Time t) const {
        for (const auto& s : states)
            if (inScope(s) && s.t() >= t) return &s;
        return nullptr;
    }

    std::optional<Time> end() const {
        std::optional<Time> out;
        for (const auto& s : states)
            if (inScope(s)) out = s.t();
        return out;
    }

    /// Any due in-scope state within [lo, hi] where phi has the given value?
    bool dueSample(Time lo, std::optional<Time> hi, bool value) const {
        for (const auto& s : states) {
            if (!inScope(s) || s.t() < lo) continue;
            if (hi && s.t() > *hi) break;
            if (!dueAt(s.t())) continue;
            if (phiAt(s) == value) return true;
        }
        return false;
    }
};

OracleVerdict coverage(const Scope& sc, Time needed, OracleVerdict covered) {
    auto end = sc.end();
    if (end && *end >= needed) return covered;
    return OracleVerdict::Undetermined;
}

OracleVerdict sometimesChain(const Scope& sc, Time first, std::optional<Time> last,
                             std::int64_t f) {
    Time checkpoint = first;
    for (;;) {
        if (last && checkpoint > *last) return OracleVerdict::True;
        const Snapshot* s = sc.firstAtOrAfter(checkpoint);
        if (!s) return OracleVerdict::Undetermined;
        if (!sc.phiAt(*s)) return OracleVerdict::False;
        // One reading covers every checkpoint that state overtook.
        const std::int64_t gap = s->t().seconds() - checkpoint.seconds();
        checkpoint = checkpoint.plusSeconds((gap / f + 1) * f);
    }
}

} // namespace

OracleVerdict oracleFormula(const IntervalOp& op, const std::vector<Literal>& phi,
                            const Binding& binding, const std::vector<Snapshot>& states,
                            Time activation) {
    const InterestInterval itv = interestInterval(op, activation);
    Scope sc{states, phi, binding, activation, std::nullopt};
    if (op.checkEvery) sc.k = boundTime(*op.checkEvery).seconds();

    switch (op.kind) {
        case OpKind::Now:
        case OpKind::Next: {
            const Snapshot* s = sc.firstAtOrAfter(itv.v);
            if (!s) return OracleVerdict::Undetermined;
            return sc.phiAt(*s) ? OracleVerdict::True : OracleVerdict::False;
        }

        case OpKind::Eventually:
        case OpKind::EventuallyBetween:
            if (sc.dueSample(itv.v, itv.w, true)) return OracleVerdict::True;
            return coverage(sc, *itv.crucial, OracleVerdict::False);

        case OpKind::Always:
        case OpKind::AlwaysBetween:
            if (sc.dueSample(itv.v, itv.w, false)) return OracleVerdict::False;
            if (!itv.crucial) return OracleVerdict::Undetermined;
            return coverage(sc, *itv.crucial, OracleVerdict::True);

        case OpKind::NeverBefore: {
            if (boundTime(*op.m).seconds() > 0 && sc.dueSample(Time(0), itv.w, true))
                return OracleVerdict::False;
            return coverage(sc, *itv.crucial, OracleVerdict::True);
        }

        case OpKind::NeverBetween:
            if (sc.dueSample(itv.v, itv.w, true)) return OracleVerdict::False;
            return coverage(sc, *itv.crucial, OracleVerdict::True);

        case OpKind::NeverAfter:
            if (sc.dueSample(itv.v, std::nullopt, true)) return OracleVerdict::False;
            return OracleVerdict::Undetermined;

        case OpKind::AlwaysStrong: {
            const Time m = boundTime(*op.m);
            if (m.seconds() > 0 &&
                sc.dueSample(Time(0), Time(m.seconds() - 1), true))
                return OracleVerdict::False;
            if (sc.dueSample(m, std::nullopt, false)) return OracleVerdict::False;
            return OracleVerdict::Undetermined;
        }

        case OpKind::AlwaysStrongBetween: {
            const Time m = boundTime(*op.m);
            const Time n = boundTime(*op.n);
            if (m.seconds() > 0 &&
                sc.dueSample(Time(0), Time(m.seconds() - 1), true))
                return OracleVerdict::False;
            if (sc.dueSample(m, n, false)) return OracleVerdict::False;
            const Snapshot* past = sc.firstAtOrAfter(n.plusSeconds(1));
            if (!past) return OracleVerdict::Undetermined;
            return sc.phiAt(*past) ? OracleVerdict::False : OracleVerdict::True;
        }

        case OpKind::Sometimes:
            return sometimesChain(sc, boundTime(*op.m), std::nullopt,
                                  boundTime(*op.f).seconds());
        case OpKind::SometimesBetween:
            return sometimesChain(sc, boundTime(*op.m), itv.w, boundTime(*op.f).seconds());
    }
    return OracleVerdict::Undetermined;
}

} // namespace ailtl
