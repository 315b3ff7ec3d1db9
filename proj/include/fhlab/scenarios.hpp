#pragma once

#include <functional>
#include <map>
#include <string>

#include "fhlab/harness.hpp"

namespace fhlab::harness {

using ScenarioFn = std::function<ExperimentResult(const ExperimentConfig&)>;

// Registered scenarios keyed by name:
//   peller-dichotomy, gfh-power-bounded, hilbert-foguel-kreiss,
//   kreiss-witness, lemma-suite.
const std::map<std::string, ScenarioFn>& scenario_registry();

}  // namespace fhlab::harness
