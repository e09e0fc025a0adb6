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

// Down-conversion source: two polarization-entangled beams, then the two
// source PBSs that turn polarization entanglement into path entanglement.

#pragma once

#include <cmath>
#include <stdexcept>

#include "zpf/network.hpp"
#include "zpf/optics.hpp"
#include "zpf/stochastic.hpp"

namespace zpf {

struct CrystalParams {
    double g = 1.0;       // coupling
    complex pump{1.0};    // laser amplitude V
    complex nu0{1.0};     // cross-correlation kernel at zero delay
    double mu0 = 1.0;     // autocorrelation kernel at zero delay
    double tau = 1e-12;   // correlation time, s
    double omega = 0.0;   // carrier tag of the down-converted beams, rad/s

    void validate() const {
        if (!(g > 0.0)) throw std::invalid_argument("coupling g must be positive");
        if (!(mu0 > 0.0)) throw std::invalid_argument("mu(0) must be positive");
        if (!(tau >= 0.0)) throw std::invalid_argument("correlation time must be nonnegative");
        if (std::norm(nu0) > mu0 * (1.0 + 1e-12)) throw std::invalid_argument("|nu(0)|^2 must not exceed mu(0)");
    }

    // <F_s F_r> = <F_q F_p>
    [[nodiscard]] complex cross_correlation() const noexcept { return g * pump * nu0; }
    // <F_s F_s*> - <ZPF>, same for p, q, r
    [[nodiscard]] double autocorrelation_excess() const noexcept { return g * g * std::norm(pump) * mu0 / 2.0; }
    // g^2 |V|^2 |nu(0)|^2 / 2; common prefactor of joint probabilities.
    [[nodiscard]] double joint_scale() const noexcept { return g * g * std::norm(pump) * std::norm(nu0) / 2.0; }
};

// nu(tau) with a Gaussian profile of width tau_c. Only used for the
// coherence-window demonstration; the optical network evaluates at zero delay.
inline complex cross_correlation_kernel(const CrystalParams& p, double delay) noexcept {
    if (p.tau <= 0.0) return delay == 0.0 ? p.nu0 : complex{};
    return p.nu0 * std::exp(-delay * delay / (2.0 * p.tau * p.tau));
}

struct CrystalModes {
    BasisVariable::Id k1h, k1v, k2h, k2v;
};

struct EntangledPair {
    PolarizedBeam beam1;  // (F_s, F_p)
    PolarizedBeam beam2;  // (F_q, F_r)
    CrystalModes modes;
    StochasticAmplitude fs, fp, fq, fr;
};

struct SourceOutput {
    PolarizedBeam a1, b1, a2, b2;
    EntangledPair pair;
    PolarizedBeam zpf1, zpf2;  // idle inputs of the two source PBSs
};

// Effective first-order two-mode squeezer:
//   F_s = a_{k1H} + x a*_{k2V}    F_r = a_{k2V} + y a*_{k1H}
//   F_p = a_{k1V} + x a*_{k2H}    F_q = a_{k2H} + y a*_{k1V}
// with x + y = 2 g V nu0 and |x|^2 = |y|^2 = g^2 |V|^2 mu0. For the default
// nu0 = mu0 = 1 this is x = y = g V.
inline EntangledPair emit_entangled_pair(Network& net, const CrystalParams& p) {
    p.validate();
    const complex gv = p.g * p.pump;
    complex x = gv * p.nu0, y = gv * p.nu0;
    const double spread2 = p.mu0 - std::norm(p.nu0);
    if (spread2 > 0.0) {
        const complex dir = std::abs(p.nu0) > 0.0 ? kI * p.nu0 / std::abs(p.nu0) : kI;
        const complex delta = gv * std::sqrt(spread2) * dir;
        x += delta;
        y -= delta;
    }

    EntangledPair out;
    out.modes.k1h = net.add_crystal_variable("k1,H");
    out.modes.k1v = net.add_crystal_variable("k1,V");
    out.modes.k2h = net.add_crystal_variable("k2,H");
    out.modes.k2v = net.add_crystal_variable("k2,V");
    const auto& m = out.modes;
    using SA = StochasticAmplitude;
    out.fs = SA::variable(m.k1h) + SA::conjugate_variable(m.k2v, x);
    out.fp = SA::variable(m.k1v) + SA::conjugate_variable(m.k2h, x);
    out.fq = SA::variable(m.k2h) + SA::conjugate_variable(m.k1v, y);
    out.fr = SA::variable(m.k2v) + SA::conjugate_variable(m.k1h, y);

    out.beam1 = PolarizedBeam{out.fs, out.fp, "1", 0.0, p.omega};
    out.beam2 = PolarizedBeam{out.fq, out.fr, "2", 0.0, p.omega};
    Support emitted = support_of(out.beam1);
    emitted.merge(support_of(out.beam2));
    net.log_crystal("crystal", {m.k1h, m.k1v, m.k2h, m.k2v}, std::move(emitted));
    return out;
}

// PBS1 on beam 1 and PBS2 on beam 2, both transmitting V. Reflected ports
// (horizontal) go to the preparer; transmitted ports (vertical) go to Bob.
inline SourceOutput momentum_entangle(Network& net, const EntangledPair& pair, const PolarizedBeam& idle1,
                                      const PolarizedBeam& idle2) {
    SourceOutput out;
    out.pair = pair;
    out.zpf1 = idle1;
    out.zpf2 = idle2;
    auto p1 = net.pbs("PBS1", pair.beam1, idle1, PbsOrientation::transmit_v, "b2", "a1");
    auto p2 = net.pbs("PBS2", pair.beam2, idle2, PbsOrientation::transmit_v, "a2", "b1");
    out.a1 = p1.reflected;
    out.b2 = p1.transmitted;
    out.b1 = p2.reflected;
    out.a2 = p2.transmitted;
    return out;
}

inline SourceOutput build_source(Network& net, const CrystalParams& p) {
    net.enter(Region::source);
    auto pair = emit_entangled_pair(net, p);
    auto z1 = net.vacuum("ZPF1");
    auto z2 = net.vacuum("ZPF2");
    return momentum_entangle(net, pair, z1, z2);
}

}  // namespace zpf
