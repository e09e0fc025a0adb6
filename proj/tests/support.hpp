// Copyright 2026 The zpf-teleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared generators for property tests.

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "zpf/optics.hpp"
#include "zpf/stochastic.hpp"

namespace zpf::testing {

inline complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng)};
}

// Haar-like random U(2): e^{i phi} [[a, b], [-b*, a*]].
inline JonesMap random_unitary(std::mt19937_64& rng) {
    complex a = random_complex(rng), b = random_complex(rng);
    const double r = std::sqrt(std::norm(a) + std::norm(b));
    a /= r;
    b /= r;
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const complex ph = std::polar(1.0, u(rng));
    return {ph * a, ph * b, -ph * std::conj(b), ph * std::conj(a)};
}

// Random form with up to `max_terms` terms over variables [0, n_vars).
inline StochasticAmplitude random_form(std::mt19937_64& rng, BasisVariable::Id n_vars, int max_terms = 3) {
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<BasisVariable::Id> var(0, n_vars - 1);
    std::bernoulli_distribution conj(0.5);
    StochasticAmplitude f;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
        const auto id = var(rng);
        const complex c = random_complex(rng);
        f += conj(rng) ? StochasticAmplitude::conjugate_variable(id, c) : StochasticAmplitude::variable(id, c);
    }
    return f;
}

inline Ensemble make_ensemble(int n, VariableKind kind = VariableKind::crystal_zpf) {
    Ensemble e;
    for (int i = 0; i < n; ++i) e.add("x" + std::to_string(i), kind);
    return e;
}

}  // namespace zpf::testing
