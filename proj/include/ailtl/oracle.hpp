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
#ifndef AILTL_ORACLE_HPP
#define AILTL_ORACLE_HPP

#include <vector>

#include "ailtl/evaluator.hpp"
#include "ailtl/formula.hpp"
#include "ailtl/timeline.hpp"

namespace ailtl {

/// Three-valued reference answer computed over a complete, finite run.
/// Undetermined means the run ended before the property could commit.
enum class OracleVerdict { True, False, Undetermined };

const char* oracleVerdictName(OracleVerdict v);

/// Reference semantics for one ground operator obligation, written as
/// quantifiers over the full state list rather than as an incremental
/// automaton. States before the activation instant are out of scope; the
/// check period k restricts in-window sampling to states due since
/// activation, exactly as the incremental side does.
///
/// The intended correspondence with OpInstance run to completion plus
/// finalize() is: Holds <-> True, Violated <-> False,
/// WeakHolds <-> Undetermined.
OracleVerdict oracleFormula(const IntervalOp& op, const std::vector<Literal>& phi,
                            const Binding& binding, const std::vector<Snapshot>& states,
                            Time activation);

/// Maps an incremental verdict onto the oracle scale.
OracleVerdict oracleScale(Verdict v);

} // namespace ailtl

#endif
