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
#include "ailtl/evaluator.hpp"

#include "ailtl/query.hpp"

namespace ailtl {

const char* verdictName(Verdict v) {
    switch (v) {
        case Verdict::Provisional: return "provisional";
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::WeakHolds: return "weak-holds";
    }
    return "?";
}

ContextSplit splitContext(const ContextualFormula& formula,
                          const std::set<std::string>& extraSources) {
    std::set<std::string> phiVars;
    for (const auto& lit : formula.phi) {
        if (!lit.positive) continue;
        std::vector<std::string> names;
        collectVariables(lit, names);
        phiVars.insert(names.begin(), names.end());
    }

    // Anything some context literal can bind on its own is available at
    // activation time; only variables the event match alone can supply force
    // their constraints to wait for it.
    std::set<std::string> sources = extraSources;
    if (formula.op.nowVar) sources.insert(formula.op.nowVar->name);
    for (const auto& lit : formula.context) {
        std::vector<std::string> names;
        collectBindableVariables(lit, names);
        sources.insert(names.begin(), names.end());
    }

    ContextSplit out;
    for (const auto& lit : formula.context) {
        std::vector<std::string> names;
        collectVariables(lit, names);
        bool deferred = false;
        for (const auto& n : names) {
            if (phiVars.count(n) && !sources.count(n)) {
                deferred = true;
                break;
            }
        }
        (deferred ? out.deferred : out.activation).push_back(lit);
    }
    return out;
}

OpInstance::OpInstance(IntervalOp op, std::vector<Literal> phi, Binding binding,
                       Time activation)
    : op_(std::move(op)),
      phi_(std::move(phi)),
      binding_(std::move(binding)),
      activation_(activation),
      interval_(interestInterval(op_, activation)) {
    if (op_.kind == OpKind::Sometimes || op_.kind == OpKind::SometimesBetween) {
        nextCheckpoint_ = boundTime(*op_.m);
        if (op_.kind == OpKind::SometimesBetween) lastCheckpoint_ = interval_.w;
    }
}

bool OpInstance::due(Time t) const {
    if (op_.kind == OpKind::Sometimes || op_.kind == OpKind::SometimesBetween) return true;
    if (!op_.checkEvery) return true;
    const std::int64_t k = boundTime(*op_.checkEvery).seconds();
    return (t.seconds() - activation_.seconds()) % k == 0;
}

bool OpInstance::phiTrue(const Snapshot& state) {
    lastSolution_ = firstSolution(state, phi_, binding_);
    return lastSolution_.has_value();
}

void OpInstance::decide(Verdict v) {
    verdict_ = v;
    if (v == Verdict::Holds && lastSolution_) witness_ = lastSolution_;
}

Verdict OpInstance::step(const Snapshot& state, bool force) {
    if (verdict_ != Verdict::Provisional) return verdict_;
    const Time t = state.t();
    if (t < activation_) return verdict_;
    const bool sampled = force || due(t);

    switch (op_.kind) {
        case OpKind::Now:
        case OpKind::Next:
            if (t >= interval_.v) decide(phiTrue(state) ? Verdict::Holds : Verdict::Violated);
            break;

        case OpKind::Eventually:
        case OpKind::EventuallyBetween:
            if (t > *interval_.w) {
                decide(Verdict::Violated);
            } else if (t >= interval_.v && sampled && phiTrue(state)) {
                decide(Verdict::Holds);
            }
            break;

        case OpKind::Always:
        case OpKind::AlwaysBetween:
            if (interval_.w && t > *interval_.w) {
                decide(Verdict::Holds);
            } else if (t >= interval_.v && sampled && !phiTrue(state)) {
                decide(Verdict::Violated);
            }
            break;

        case OpKind::NeverBefore:
            if (t > *interval_.w) {
                decide(Verdict::Holds);
            } else if (boundTime(*op_.m).seconds() > 0 && sampled && phiTrue(state)) {
                decide(Verdict::Violated);
            }
            break;

        case OpKind::NeverBetween:
            if (t > *interval_.w) {
                decide(Verdict::Holds);
            } else if (t >= interval_.v && sampled && phiTrue(state)) {
                decide(Verdict::Violated);
            }
            break;

        case OpKind::NeverAfter:
            if (t >= interval_.v && sampled && phiTrue(state)) decide(Verdict::Violated);
            break;

        case OpKind::AlwaysStrong:
            if (t < boundTime(*op_.m)) {
                if (sampled && phiTrue(state)) decide(Verdict::Violated);
            } else if (sampled && !phiTrue(state)) {
                decide(Verdict::Violated);
            }
            break;

        case OpKind::AlwaysStrongBetween:
            // The formula must hold exactly over [m, n]: it may not hold
            // before m, and the first state past n must refute it.
            if (t > boundTime(*op_.n)) {
                decide(phiTrue(state) ? Verdict::Violated : Verdict::Holds);
            } else if (t < boundTime(*op_.m)) {
                if (sampled && phiTrue(state)) decide(Verdict::Violated);
            } else if (sampled && !phiTrue(state)) {
                decide(Verdict::Violated);
            }
            break;

        case OpKind::Sometimes:
        case OpKind::SometimesBetween:
            if (t >= nextCheckpoint_ && (!lastCheckpoint_ || nextCheckpoint_ <= *lastCheckpoint_)) {
                if (!phiTrue(state)) {
                    decide(Verdict::Violated);
                } else {
                    const std::int64_t f = boundTime(*op_.f).seconds();
                    const std::int64_t gap = t.seconds() - nextCheckpoint_.seconds();
                    nextCheckpoint_ = nextCheckpoint_.plusSeconds((gap / f + 1) * f);
                    if (lastCheckpoint_ && nextCheckpoint_ > *lastCheckpoint_)
                        decide(Verdict::Holds);
                }
            }
            break;
    }
    return verdict_;
}

Verdict OpInstance::finalize(Time end) {
    if (verdict_ != Verdict::Provisional) return verdict_;
    if (interval_.crucial && end >= *interval_.crucial) {
        switch (op_.kind) {
            case OpKind::Now:
            case OpKind::Next:
            case OpKind::Eventually:
            case OpKind::EventuallyBetween:
                verdict_ = Verdict::Violated;
                break;
            default:
                verdict_ = Verdict::Holds;
                break;
        }
    } else {
        verdict_ = Verdict::WeakHolds;
    }
    return verdict_;
}

} // namespace ailtl
