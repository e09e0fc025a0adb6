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

// The Rome teleportation setup end to end.
//
//   source      crystal, PBS1/PBS2 (momentum entanglement)
//   preparer    one Jones map P on both a1 and b1
//   analyser    PBS3/PBS4, 90 degree rotators, mirrors, BS_T/BS_R, DT+-, DR+-
//   bob_station rotator on b2, mirror on a2, PBS_Bob
//   verification Bob map, PBS_vs, DB and DB-perp
//
// Angles are radians throughout this header.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "zpf/detection.hpp"
#include "zpf/ledger.hpp"
#include "zpf/network.hpp"
#include "zpf/optics.hpp"
#include "zpf/source.hpp"

namespace zpf {

struct PreparerSpec {
    enum class Kind { linear, elliptical, generic };

    Kind kind = Kind::generic;
    double angle = 0.0;  // theta (linear) or gamma (elliptical)
    JonesMap custom;

    static PreparerSpec linear(double theta) { return {Kind::linear, theta, {}}; }
    static PreparerSpec elliptical(double gamma) { return {Kind::elliptical, gamma, {}}; }
    static PreparerSpec generic(const JonesMap& m) { return {Kind::generic, 0.0, m}; }

    [[nodiscard]] JonesMap matrix() const {
        switch (kind) {
            case Kind::linear: return rotator(angle);
            case Kind::elliptical: return quarter_wave(angle);
            case Kind::generic: break;
        }
        return custom;
    }

    void validate() const {
        if (!matrix().is_unitary()) throw std::invalid_argument("unitarity violation in preparer");
    }
};

enum class Detector { DT_plus, DT_minus, DR_plus, DR_minus };

inline constexpr std::array<Detector, 4> kAliceDetectors{Detector::DT_plus, Detector::DT_minus, Detector::DR_plus,
                                                         Detector::DR_minus};

inline std::string_view to_string(Detector d) noexcept {
    switch (d) {
        case Detector::DT_plus: return "DT+";
        case Detector::DT_minus: return "DT-";
        case Detector::DR_plus: return "DR+";
        case Detector::DR_minus: return "DR-";
    }
    return "?";
}

inline bool is_transmitted_arm(Detector d) noexcept { return d == Detector::DT_plus || d == Detector::DT_minus; }
inline bool is_plus(Detector d) noexcept { return d == Detector::DT_plus || d == Detector::DR_plus; }

// n_+ = 1, n_- = 0
inline int beamsplitter_index(Detector d) noexcept { return is_plus(d) ? 1 : 0; }

struct AliceOutcome {
    Detector detector;
    std::array<bool, 2> bits;  // (arm, sign): arm 0 = T, 1 = R; sign 0 = -, 1 = +

    static AliceOutcome from(Detector d) noexcept { return {d, {!is_transmitted_arm(d), is_plus(d)}}; }

    static AliceOutcome from_bits(bool arm, bool sign) noexcept {
        if (!arm) return from(sign ? Detector::DT_plus : Detector::DT_minus);
        return from(sign ? Detector::DR_plus : Detector::DR_minus);
    }
};

struct TimingSpec {
    double t_cc = 0.0;  // classical communication delay, s
    double d_ac = 0.0;  // crystal to Alice's detectors, m
    double d_bc = 0.0;  // crystal to Bob's correction, m
    double tau = 0.0;   // correlation time, s

    void validate() const {
        if (t_cc < 0.0 || d_ac < 0.0 || d_bc < 0.0 || tau < 0.0) {
            throw std::invalid_argument("timing quantities must be nonnegative");
        }
    }
};

struct CoherenceResult {
    bool ok = false;
    double margin = 0.0;  // tau - |T_cc + (d_AC - d_BC)/c|
};

inline CoherenceResult coherence_ok(const TimingSpec& t) {
    t.validate();
    const double margin = t.tau - std::abs(t.t_cc + (t.d_ac - t.d_bc) / kSpeedOfLight);
    return {margin >= 0.0, margin};
}

struct AliceBeams {
    PolarizedBeam dt_plus, dt_minus, dr_plus, dr_minus;

    [[nodiscard]] const PolarizedBeam& at(Detector d) const noexcept {
        switch (d) {
            case Detector::DT_plus: return dt_plus;
            case Detector::DT_minus: return dt_minus;
            case Detector::DR_plus: return dr_plus;
            case Detector::DR_minus: break;
        }
        return dr_minus;
    }
};

struct AnalyserArms {
    PolarizedBeam a1_t, b1_t, a1_r, b1_r;
};

struct BuildOptions {
    complex mirror_phase = kDefaultMirrorPhase;  // M_T, M_R and M
};

struct Scenario {
    Network net;
    CrystalParams params;
    PreparerSpec prep;
    BuildOptions options;

    SourceOutput source;
    PolarizedBeam a1_prepared, b1_prepared;  // F'_a1, F'_b1

    std::optional<AnalyserArms> arms;
    std::optional<AliceBeams> alice;

    std::optional<PolarizedBeam> bob_signal, bob_noise;
    std::optional<PolarizedBeam> zpf_vs;

    // g^2 |V|^2 |nu(0)|^2 / 2
    [[nodiscard]] double reference_scale() const { return params.joint_scale(); }
    [[nodiscard]] ZpfLedger ledger() const { return audit_network(net); }
    [[nodiscard]] MomentContext context() const { return net.context(); }

    [[nodiscard]] const AliceBeams& alice_beams() const {
        if (!alice) throw std::logic_error("analyser not built");
        return *alice;
    }
    [[nodiscard]] const PolarizedBeam& bob() const {
        if (!bob_signal) throw std::logic_error("Bob's station not built");
        return *bob_signal;
    }
};

// Source and preparer. Alice's analyser and Bob's station are added by
// alice_analyser and bob_station (or all at once by build_full_rome).
inline Scenario build_rome(const CrystalParams& params, const PreparerSpec& prep, BuildOptions options = {}) {
    params.validate();
    prep.validate();
    Scenario s;
    s.params = params;
    s.prep = prep;
    s.options = options;
    s.source = build_source(s.net, params);

    s.net.enter(Region::preparer);
    const JonesMap p = prep.matrix();
    s.a1_prepared = s.net.jones("P(a1)", p, s.source.a1);
    s.b1_prepared = s.net.jones("P(b1)", p, s.source.b1);
    return s;
}

inline const AliceBeams& alice_analyser(Scenario& s, const PolarizedBeam& idle3, const PolarizedBeam& idle4) {
    if (s.alice) throw std::logic_error("analyser already built");
    Network& net = s.net;
    net.enter(Region::analyser);
    const JonesMap r90 = rotator(std::numbers::pi / 2.0);

    auto p3 = net.pbs("PBS3", s.a1_prepared, idle3, PbsOrientation::transmit_v, "a1,T", "a1,R");
    auto p4 = net.pbs("PBS4", s.b1_prepared, idle4, PbsOrientation::transmit_h, "b1,T", "b1,R");

    AnalyserArms arms;
    arms.a1_r = p3.reflected;
    arms.a1_t = net.mirror("M_T", net.jones("R90(a1,T)", r90, p3.transmitted), s.options.mirror_phase);
    arms.b1_t = p4.transmitted;
    arms.b1_r = net.mirror("M_R", net.jones("R90(b1,R)", r90, p4.reflected), s.options.mirror_phase);

    AliceBeams out;
    std::tie(out.dt_plus, out.dt_minus) = net.beamsplitter("BS_T", arms.b1_t, arms.a1_t, "DT+", "DT-");
    std::tie(out.dr_plus, out.dr_minus) = net.beamsplitter("BS_R", arms.a1_r, arms.b1_r, "DR+", "DR-");
    s.arms = arms;
    s.alice = out;
    return *s.alice;
}

// Returns (signal, noise) leaving PBS_Bob. The noise port is logged as
// discarded.
inline std::pair<PolarizedBeam, PolarizedBeam> bob_station(Scenario& s) {
    if (s.bob_signal) throw std::logic_error("Bob's station already built");
    Network& net = s.net;
    net.enter(Region::bob_station);
    const auto b2 = net.jones("R90(b2)", rotator(std::numbers::pi / 2.0), s.source.b2);
    const auto a2 = net.mirror("M", s.source.a2, s.options.mirror_phase);
    auto ports = net.pbs_combine("PBS_Bob", b2, a2, PbsOrientation::transmit_h, "Bob", "Bob,noise");
    net.discard("Bob,noise", ports.reflected);
    s.bob_signal = ports.transmitted;
    s.bob_noise = ports.reflected;
    return {ports.transmitted, ports.reflected};
}

inline Scenario build_full_rome(const CrystalParams& params, const PreparerSpec& prep, BuildOptions options = {}) {
    Scenario s = build_rome(params, prep, options);
    const auto z3 = s.net.vacuum("ZPF3");
    const auto z4 = s.net.vacuum("ZPF4");
    alice_analyser(s, z3, z4);
    bob_station(s);
    return s;
}

enum class Port { DB, DB_perp };

inline constexpr std::array<Port, 2> kBobPorts{Port::DB, Port::DB_perp};

inline std::string_view to_string(Port p) noexcept { return p == Port::DB ? "DB" : "DB⊥"; }

struct VerificationPorts {
    PolarizedBeam db, db_perp;

    [[nodiscard]] const PolarizedBeam& at(Port p) const noexcept { return p == Port::DB ? db : db_perp; }
};

// Bob map followed by PBS_vs (transmits H to DB, reflects V to DB-perp)
// with one idle input. Logs the station into the network once; further
// Bob maps reuse the same idle via verification_ports.
inline VerificationPorts attach_verification(Scenario& s, const JonesMap& bob_map) {
    if (s.zpf_vs) throw std::logic_error("verification station already attached");
    const PolarizedBeam& signal = s.bob();
    Network& net = s.net;
    net.enter(Region::verification);
    const auto idle = net.vacuum("ZPF_vs");
    const auto fvs = net.jones("M_B", bob_map, signal);
    auto ports = net.pbs("PBS_vs", fvs, idle, PbsOrientation::transmit_h, "DB", "DB_perp");
    s.zpf_vs = idle;
    return {ports.transmitted, ports.reflected};
}

inline VerificationPorts verification_ports(const Scenario& s, const JonesMap& bob_map) {
    if (!s.zpf_vs) throw std::logic_error("verification station not attached");
    const auto fvs = apply_jones(bob_map, s.bob());
    auto ports = pbs_combine(fvs, *s.zpf_vs, PbsOrientation::transmit_h);
    return {ports.transmitted, ports.reflected};
}

struct Correction {
    JonesMap map;
    complex constant;  // C_DX
};

inline Correction correction_for(const AliceOutcome& outcome) {
    const JonesMap r90 = rotator(std::numbers::pi / 2.0);
    switch (outcome.detector) {
        case Detector::DT_minus: return {JonesMap::identity(), -1.0};
        case Detector::DT_plus: return {retarder(std::numbers::pi), -kI};
        case Detector::DR_plus: return {r90, -1.0};
        case Detector::DR_minus: break;
    }
    return {retarder(std::numbers::pi) * r90, kI};
}

inline Correction correction_for(Detector d) { return correction_for(AliceOutcome::from(d)); }

// Bob's analysing map per Alice detector.
using BobMapFn = std::function<JonesMap(Detector)>;

inline BobMapFn linear_bob_map(double theta_b) {
    return [theta_b](Detector) { return rotator(theta_b); };
}

// gamma_B(DT+-) = -+gamma, gamma_B(DR+-) = +-gamma + 90 degrees
inline double elliptical_gamma_b(Detector d, double gamma) noexcept {
    const double sign = is_plus(d) ? 1.0 : -1.0;
    if (is_transmitted_arm(d)) return -sign * gamma;
    return sign * gamma + std::numbers::pi / 2.0;
}

// The verification plate undoes the preparer's plate, so its action is the
// adjoint of quarter_wave at gamma_B.
inline BobMapFn elliptical_bob_map(double gamma, double theta_b) {
    return [gamma, theta_b](Detector d) { return rotator(theta_b) * quarter_wave(elliptical_gamma_b(d, gamma)).adjoint(); };
}

struct VerificationRow {
    Detector detector;
    Port port;
    DetectionRecord record;
};

using VerificationTable = std::array<VerificationRow, 8>;

// Eight (Alice detector, Bob port) targets, ordered DT+, DT-, DR+, DR-
// with DB before DB-perp.
inline std::vector<JointTarget> verification_targets(const Scenario& s, const BobMapFn& bob_map,
                                                     const DetectorSpec& alice_det = DetectorSpec{"alice", 1.0, {}},
                                                     const DetectorSpec& bob_det = DetectorSpec{"bob", 1.0, {}}) {
    std::vector<JointTarget> out;
    out.reserve(8);
    for (Detector d : kAliceDetectors) {
        const auto ports = verification_ports(s, bob_map(d));
        for (Port p : kBobPorts) {
            DetectorSpec da = alice_det, db = bob_det;
            da.name = std::string(to_string(d));
            db.name = std::string(to_string(p));
            out.push_back({s.alice_beams().at(d), da, ports.at(p), db});
        }
    }
    return out;
}

enum class Engine { analytic, p12, intensity, monte_carlo };

inline std::vector<DetectionRecord> evaluate_targets(std::span<const JointTarget> targets, const MomentContext& ctx,
                                                     Engine engine, double reference_scale,
                                                     const MonteCarloOptions& mc = {}) {
    if (engine == Engine::monte_carlo) return mc_joint_probabilities(targets, ctx, mc, reference_scale);
    std::vector<DetectionRecord> out;
    out.reserve(targets.size());
    for (const auto& t : targets) {
        if (engine == Engine::intensity) {
            out.push_back(joint_probability_intensity(t.a, t.da, t.b, t.db, ctx, reference_scale));
        } else {
            out.push_back(joint_probability_p12(t.a, t.da, t.b, t.db, ctx, reference_scale));
        }
    }
    return out;
}

inline VerificationTable to_table(std::span<const DetectionRecord> records) {
    if (records.size() != 8) throw std::invalid_argument("verification table needs eight records");
    VerificationTable t{};
    std::size_t i = 0;
    for (Detector d : kAliceDetectors) {
        for (Port p : kBobPorts) {
            t[i] = {d, p, records[i]};
            ++i;
        }
    }
    return t;
}

// Full scenario with a verification station attached, ready for sweeps.
inline Scenario build_verification_scenario(const CrystalParams& params, const PreparerSpec& prep,
                                            BuildOptions options = {}) {
    Scenario s = build_full_rome(params, prep, options);
    attach_verification(s, JonesMap::identity());
    return s;
}

inline VerificationTable verify(const Scenario& s, const BobMapFn& bob_map, Engine engine = Engine::p12,
                                const MonteCarloOptions& mc = {}) {
    const auto targets = verification_targets(s, bob_map);
    const auto records = evaluate_targets(targets, s.context(), engine, s.reference_scale(), mc);
    return to_table(records);
}

inline VerificationTable verify_linear(double theta, double theta_b, const CrystalParams& params = {}) {
    const Scenario s = build_verification_scenario(params, PreparerSpec::linear(theta));
    return verify(s, linear_bob_map(theta_b));
}

inline VerificationTable verify_elliptical(double gamma, double theta_b, const CrystalParams& params = {}) {
    const Scenario s = build_verification_scenario(params, PreparerSpec::elliptical(gamma));
    return verify(s, elliptical_bob_map(gamma, theta_b));
}

inline const DetectionRecord& lookup(const VerificationTable& t, Detector d, Port p) {
    for (const auto& row : t) {
        if (row.detector == d && row.port == p) return row.record;
    }
    throw std::out_of_range("no such verification row");
}

// Teleportation into momentum: the crystal alone at the source, then a
// beam-splitter with an idle port and a phase shifter acting on beam 1
// before the same analyser.
inline Scenario build_momentum_variant(const CrystalParams& params, double phase, BuildOptions options = {}) {
    params.validate();
    Scenario s;
    s.params = params;
    s.options = options;
    s.net.enter(Region::source);
    s.source.pair = emit_entangled_pair(s.net, params);

    s.net.enter(Region::preparer);
    const auto idle = s.net.vacuum("ZPF_prep");
    auto [a1, b1] = s.net.beamsplitter_with_idle("BS_prep", s.source.pair.beam1, idle, "a1", "b1");
    s.a1_prepared = s.net.jones("phase(a1)", phase_shift(phase), a1);
    s.b1_prepared = b1;

    const auto z3 = s.net.vacuum("ZPF3");
    const auto z4 = s.net.vacuum("ZPF4");
    alice_analyser(s, z3, z4);
    return s;
}

}  // namespace zpf
