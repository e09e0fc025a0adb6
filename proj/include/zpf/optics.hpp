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

// Linear optical elements acting on stochastic field amplitudes.
//
// All functions here are pure: they take beams by const reference and
// return new beams. Element bookkeeping (which vacuum inputs were opened,
// in which part of the setup) lives in network.hpp.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "zpf/stochastic.hpp"

namespace zpf {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

// Row-major 2x2 complex matrix on (H, V) polarization amplitudes.
struct JonesMap {
    complex a{1.0}, b{}, c{}, d{1.0};

    static JonesMap identity() noexcept { return {}; }

    [[nodiscard]] JonesMap adjoint() const noexcept {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }

    [[nodiscard]] std::array<complex, 2> operator*(const std::array<complex, 2>& x) const noexcept {
        return {a * x[0] + b * x[1], c * x[0] + d * x[1]};
    }

    friend JonesMap operator*(const JonesMap& l, const JonesMap& r) noexcept {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend JonesMap operator*(complex s, const JonesMap& m) noexcept {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }

    // max over the three unitarity conditions |a|^2+|b|^2 = 1,
    // |c|^2+|d|^2 = 1 and a c* + b d* = 0.
    [[nodiscard]] double unitarity_residual() const noexcept {
        const double r1 = std::abs(std::norm(a) + std::norm(b) - 1.0);
        const double r2 = std::abs(std::norm(c) + std::norm(d) - 1.0);
        const double r3 = std::abs(a * std::conj(c) + b * std::conj(d));
        return std::max({r1, r2, r3});
    }

    [[nodiscard]] bool is_unitary(double tol = 1e-12) const noexcept { return unitarity_residual() <= tol; }

    [[nodiscard]] static double distance(const JonesMap& x, const JonesMap& y) noexcept {
        return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b), std::abs(x.c - y.c), std::abs(x.d - y.d)});
    }
};

// Polarization rotator R(theta), angle measured from the horizontal.
inline JonesMap rotator(double theta) noexcept {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
}

// Wave retarder: phase phi on V relative to H.
inline JonesMap retarder(double phi) noexcept { return {1.0, 0.0, 0.0, std::polar(1.0, phi)}; }

// Quarter-wave plate with fast axis at gamma from the horizontal,
// R(gamma) diag(1, i) R(-gamma).
inline JonesMap quarter_wave(double gamma) noexcept {
    const double c = std::cos(gamma), s = std::sin(gamma);
    const complex off = complex{1.0, -1.0} * (s * c);
    return {c * c + kI * (s * s), off, off, s * s + kI * (c * c)};
}

// Equal phase on both components (path-length phase shifter).
inline JonesMap phase_shift(double phi) noexcept {
    const complex p = std::polar(1.0, phi);
    return {p, 0.0, 0.0, p};
}

enum class JonesCheck { unitary, diagnostic };

struct PolarizedBeam {
    StochasticAmplitude h;
    StochasticAmplitude v;
    std::string path;
    double path_length = 0.0;  // m
    double omega = 0.0;        // rad/s

    [[nodiscard]] const StochasticAmplitude& component(int pol) const { return pol == 0 ? h : v; }
};

inline PolarizedBeam apply_jones(const JonesMap& m, const PolarizedBeam& beam, JonesCheck check = JonesCheck::unitary) {
    if (check == JonesCheck::unitary && !m.is_unitary()) throw std::invalid_argument("unitarity violation");
    PolarizedBeam out = beam;
    out.h = m.a * beam.h + m.b * beam.v;
    out.v = m.c * beam.h + m.d * beam.v;
    return out;
}

// Global phase factor on both components (mirror, phase plate).
inline PolarizedBeam scale(const PolarizedBeam& beam, complex phase) {
    PolarizedBeam out = beam;
    out.h *= phase;
    out.v *= phase;
    return out;
}

inline constexpr complex kReflectionPhase = kI;
inline constexpr complex kDefaultMirrorPhase = kI;

inline PolarizedBeam mirror(const PolarizedBeam& beam, complex phase = kDefaultMirrorPhase) {
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw std::invalid_argument("mirror phase must be unimodular");
    return scale(beam, phase);
}

// Free propagation over r12 metres: F(r2, t) = F(r1, t - r12/c) exp(i omega r12 / c).
inline PolarizedBeam propagate(const PolarizedBeam& beam, double r12) {
    if (r12 < 0.0) throw std::invalid_argument("propagation distance must be nonnegative");
    PolarizedBeam out = scale(beam, std::polar(1.0, beam.omega * r12 / kSpeedOfLight));
    out.path_length += r12;
    return out;
}

enum class PbsOrientation { transmit_v, transmit_h };

struct PbsPorts {
    PolarizedBeam transmitted;
    PolarizedBeam reflected;
};

// Two-input polarizing beam-splitter. `in` and `other` enter opposite faces;
// reflection multiplies by i.
//   transmit_v: transmitted = (i other.h, in.v), reflected = (i in.h, other.v)
//   transmit_h: transmitted = (in.h, i other.v), reflected = (other.h, i in.v)
inline PbsPorts pbs_combine(const PolarizedBeam& in, const PolarizedBeam& other, PbsOrientation orientation) {
    PbsPorts out{in, in};
    if (orientation == PbsOrientation::transmit_v) {
        out.transmitted.h = kReflectionPhase * other.h;
        out.transmitted.v = in.v;
        out.reflected.h = kReflectionPhase * in.h;
        out.reflected.v = other.v;
    } else {
        out.transmitted.h = in.h;
        out.transmitted.v = kReflectionPhase * other.v;
        out.reflected.h = other.h;
        out.reflected.v = kReflectionPhase * in.v;
    }
    return out;
}

// Pure zeropoint beam: each component is exactly one unit-weight,
// unconjugated idle basis variable, and the two variables differ.
inline bool is_vacuum_pure(const PolarizedBeam& beam, const Ensemble& ens) {
    auto single = [&](const StochasticAmplitude& f) -> const StochasticAmplitude::Key* {
        if (f.size() != 1) return nullptr;
        const auto& [key, c] = *f.terms().begin();
        if (key.conjugated || std::abs(c - complex{1.0}) > 1e-15) return nullptr;
        if (!ens.contains(key.id) || ens.at(key.id).kind != VariableKind::idle_zpf) return nullptr;
        return &key;
    };
    const auto* kh = single(beam.h);
    const auto* kv = single(beam.v);
    return kh && kv && kh->id != kv->id;
}

// Beam-splitter with one idle (vacuum) input.
inline PbsPorts polarizing_beamsplitter(const PolarizedBeam& in, const PolarizedBeam& idle, PbsOrientation orientation,
                                        const Ensemble& ens) {
    if (!is_vacuum_pure(idle, ens)) throw std::invalid_argument("idle input is not a pure zeropoint beam");
    return pbs_combine(in, idle, orientation);
}

// Balanced non-polarizing beam-splitter:
//   out_plus  = (i b1 + b2) / sqrt(2)
//   out_minus = (b1 + i b2) / sqrt(2)
inline std::pair<PolarizedBeam, PolarizedBeam> balanced_beamsplitter(const PolarizedBeam& b1, const PolarizedBeam& b2) {
    const double r = 1.0 / std::numbers::sqrt2;
    PolarizedBeam plus = b1, minus = b1;
    plus.h = r * (kI * b1.h + b2.h);
    plus.v = r * (kI * b1.v + b2.v);
    minus.h = r * (b1.h + kI * b2.h);
    minus.v = r * (b1.v + kI * b2.v);
    return {plus, minus};
}

}  // namespace zpf
