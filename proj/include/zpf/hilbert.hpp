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

// State-vector description of the same protocol: two photons, each with a
// path (a, b) and a polarization (H, V). Used to cross-check the
// stochastic-amplitude probabilities.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string_view>

#include "zpf/detection.hpp"
#include "zpf/optics.hpp"
#include "zpf/rome.hpp"

namespace zpf {

enum class Path { a, b };

struct HilbertState {
    static constexpr std::size_t kDim = 16;
    static constexpr double kNormTolerance = 1e-12;

    std::array<complex, kDim> amplitudes{};

    static constexpr std::size_t index(Path p1, Polarization s1, Path p2, Polarization s2) noexcept {
        auto bit = [](bool b) { return static_cast<std::size_t>(b); };
        return (bit(p1 == Path::b) << 3) | (bit(s1 == Polarization::V) << 2) | (bit(p2 == Path::b) << 1) |
               bit(s2 == Polarization::V);
    }

    [[nodiscard]] complex& at(Path p1, Polarization s1, Path p2, Polarization s2) noexcept {
        return amplitudes[index(p1, s1, p2, s2)];
    }
    [[nodiscard]] complex at(Path p1, Polarization s1, Path p2, Polarization s2) const noexcept {
        return amplitudes[index(p1, s1, p2, s2)];
    }

    [[nodiscard]] double norm2() const noexcept {
        double s = 0.0;
        for (const auto& c : amplitudes) s += std::norm(c);
        return s;
    }
};

// (i/sqrt2)(|a1>|a2> + |b1>|b2>)(alpha|H>_1 + beta|V>_1)|V>_2
inline HilbertState prepare(complex alpha, complex beta) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > HilbertState::kNormTolerance) {
        throw std::invalid_argument("unnormalized input qubit");
    }
    HilbertState s;
    const complex w = kI / std::numbers::sqrt2;
    for (Path p : {Path::a, Path::b}) {
        s.at(p, Polarization::H, p, Polarization::V) = w * alpha;
        s.at(p, Polarization::V, p, Polarization::V) = w * beta;
    }
    return s;
}

inline HilbertState prepare(const JonesMap& preparer) { return prepare(preparer.a, preparer.c); }

enum class BellBranch { c_plus, c_minus, d_plus, d_minus };

inline constexpr std::array<BellBranch, 4> kBellBranches{BellBranch::c_plus, BellBranch::c_minus, BellBranch::d_plus,
                                                         BellBranch::d_minus};

inline std::string_view to_string(BellBranch b) noexcept {
    switch (b) {
        case BellBranch::c_plus: return "c+";
        case BellBranch::c_minus: return "c-";
        case BellBranch::d_plus: return "d+";
        case BellBranch::d_minus: break;
    }
    return "d-";
}

// Photon-1 Bell vectors, c+- = (|a1 V> +- |b1 H>)/sqrt2, d+- = (|a1 H> +- |b1 V>)/sqrt2,
// as (a-H, a-V, b-H, b-V) coefficients.
inline std::array<double, 4> bell_vector(BellBranch b) noexcept {
    const double r = 1.0 / std::numbers::sqrt2;
    switch (b) {
        case BellBranch::c_plus: return {0.0, r, r, 0.0};
        case BellBranch::c_minus: return {0.0, r, -r, 0.0};
        case BellBranch::d_plus: return {r, 0.0, 0.0, r};
        case BellBranch::d_minus: break;
    }
    return {r, 0.0, 0.0, -r};
}

// Photon-2 path ket of one branch (photon 2 is V throughout).
struct BranchAmplitude {
    BellBranch branch;
    complex a2{}, b2{};

    [[nodiscard]] double norm2() const noexcept { return std::norm(a2) + std::norm(b2); }
};

using BellDecomposition = std::array<BranchAmplitude, 4>;

inline BellDecomposition bell_decompose(const HilbertState& s) {
    if (std::abs(s.norm2() - 1.0) > HilbertState::kNormTolerance) throw std::invalid_argument("state not normalized");
    for (Path p1 : {Path::a, Path::b}) {
        for (auto s1 : {Polarization::H, Polarization::V}) {
            for (Path p2 : {Path::a, Path::b}) {
                if (std::abs(s.at(p1, s1, p2, Polarization::H)) > HilbertState::kNormTolerance) {
                    throw std::invalid_argument("state outside the model subspace");
                }
            }
        }
    }
    constexpr std::array<std::pair<Path, Polarization>, 4> photon1{
        {{Path::a, Polarization::H}, {Path::a, Polarization::V}, {Path::b, Polarization::H}, {Path::b, Polarization::V}}};
    BellDecomposition out{};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto v = bell_vector(kBellBranches[k]);
        BranchAmplitude br{kBellBranches[k]};
        for (std::size_t j = 0; j < 4; ++j) {
            br.a2 += v[j] * s.at(photon1[j].first, photon1[j].second, Path::a, Polarization::V);
            br.b2 += v[j] * s.at(photon1[j].first, photon1[j].second, Path::b, Polarization::V);
        }
        out[k] = br;
    }
    return out;
}

// Inverse of bell_decompose: sum over branches of |bell> (x) ket.
inline HilbertState recompose(const BellDecomposition& d) {
    constexpr std::array<std::pair<Path, Polarization>, 4> photon1{
        {{Path::a, Polarization::H}, {Path::a, Polarization::V}, {Path::b, Polarization::H}, {Path::b, Polarization::V}}};
    HilbertState s;
    for (const auto& br : d) {
        const auto v = bell_vector(br.branch);
        for (std::size_t j = 0; j < 4; ++j) {
            s.at(photon1[j].first, photon1[j].second, Path::a, Polarization::V) += v[j] * br.a2;
            s.at(photon1[j].first, photon1[j].second, Path::b, Polarization::V) += v[j] * br.b2;
        }
    }
    return s;
}

// The analyser sends c+ to DT-, c- to DT+, d+ to DR-, d- to DR+.
inline Detector detector_of(BellBranch b) noexcept {
    switch (b) {
        case BellBranch::c_plus: return Detector::DT_minus;
        case BellBranch::c_minus: return Detector::DT_plus;
        case BellBranch::d_plus: return Detector::DR_minus;
        case BellBranch::d_minus: break;
    }
    return Detector::DR_plus;
}

// Phase acquired by each branch between the Bell projection and the detector.
inline complex analyser_phase(BellBranch b) noexcept {
    switch (b) {
        case BellBranch::c_plus: return 1.0;
        case BellBranch::c_minus: return -kI;
        case BellBranch::d_plus: return -kI;
        case BellBranch::d_minus: break;
    }
    return 1.0;
}

// Global phase in front of each detector's ket.
inline complex detection_phase(Detector d) noexcept {
    switch (d) {
        case Detector::DT_minus: return kI;
        case Detector::DT_plus: return -1.0;
        case Detector::DR_minus: return 1.0;
        case Detector::DR_plus: break;
    }
    return -kI;
}

struct DetectionBranch {
    Detector detector;
    complex phase;                // detection_phase(detector)
    std::array<complex, 2> ket;   // photon-2 polarization (H, V), unit norm
    std::array<complex, 2> full;  // phase * ket / 2, as it appears in the state
};

// Bob maps photon-2 momentum onto polarization, b2 -> H and a2 -> V.
inline std::array<DetectionBranch, 4> detection_amplitudes(const HilbertState& s) {
    const auto branches = bell_decompose(s);
    std::array<DetectionBranch, 4> out{};
    for (const auto& br : branches) {
        const Detector d = detector_of(br.branch);
        const complex w = analyser_phase(br.branch);
        const std::array<complex, 2> full{w * br.b2, w * br.a2};
        const complex unit = 2.0 / detection_phase(d);
        DetectionBranch db{d, detection_phase(d), {unit * full[0], unit * full[1]}, full};
        for (std::size_t k = 0; k < kAliceDetectors.size(); ++k) {
            if (kAliceDetectors[k] == d) out[k] = db;
        }
    }
    return out;
}

inline const DetectionBranch& branch_for(const std::array<DetectionBranch, 4>& branches, Detector d) {
    for (const auto& b : branches) {
        if (b.detector == d) return b;
    }
    throw std::out_of_range("no branch for detector");
}
void branch_for(std::array<DetectionBranch, 4>&&, Detector) = delete;

// |<port| M |ket>|^2 for the detector's branch; DB projects on H, DB-perp on V.
inline double born_joint_probability(const HilbertState& s, Detector d, const JonesMap& bob_analyzer, Port port) {
    const auto branches = detection_amplitudes(s);
    const auto out = bob_analyzer * branch_for(branches, d).full;
    return std::norm(out[port == Port::DB ? 0 : 1]);
}

}  // namespace zpf
