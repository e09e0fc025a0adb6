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

// An optical setup as a log of elements over one shared ensemble.
//
// Network wraps the pure element functions of optics.hpp and records, for
// every element, the region of the setup it belongs to, the vacuum basis
// variables it opened, and the basis-variable support of the beams it
// consumed. The zeropoint ledger is computed from this log.

#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zpf/optics.hpp"
#include "zpf/stochastic.hpp"

namespace zpf {

enum class Region { unassigned, source, preparer, analyser, bob_station, verification };

inline std::string_view to_string(Region r) noexcept {
    switch (r) {
        case Region::source: return "source";
        case Region::preparer: return "preparer";
        case Region::analyser: return "analyser";
        case Region::bob_station: return "bob_station";
        case Region::verification: return "verification";
        case Region::unassigned: break;
    }
    return "unassigned";
}

enum class ElementKind { crystal, pbs, beamsplitter, jones, mirror, propagation, discard };

using Support = std::set<BasisVariable::Id>;

inline Support support_of(const StochasticAmplitude& f) {
    Support s;
    for (const auto& [key, c] : f.terms()) s.insert(key.id);
    return s;
}

inline Support support_of(const PolarizedBeam& b) {
    Support s = support_of(b.h);
    s.merge(support_of(b.v));
    return s;
}

struct Element {
    ElementKind kind;
    std::string name;
    Region region = Region::unassigned;
    std::vector<BasisVariable::Id> opened;  // vacuum variables introduced here
    int idle_channels = 0;                  // unused input ports opened here
    Support input_support;                  // variables carried by consumed beams
    Support output_support;
};

class Network {
public:
    void enter(Region r) noexcept { region_ = r; }
    [[nodiscard]] Region region() const noexcept { return region_; }

    [[nodiscard]] const Ensemble& ensemble() const noexcept { return ensemble_; }
    [[nodiscard]] MomentContext context() const { return MomentContext(ensemble_); }
    [[nodiscard]] const std::vector<Element>& elements() const noexcept { return elements_; }

    BasisVariable::Id add_crystal_variable(std::string label) {
        return ensemble_.add(std::move(label), VariableKind::crystal_zpf);
    }

    // Fresh vacuum beam on two new idle basis variables. It is not logged
    // until an element consumes it as an idle input.
    PolarizedBeam vacuum(const std::string& name, std::string path = {}) {
        PolarizedBeam b;
        b.h = StochasticAmplitude::variable(ensemble_.add(name + ",H", VariableKind::idle_zpf));
        b.v = StochasticAmplitude::variable(ensemble_.add(name + ",V", VariableKind::idle_zpf));
        b.path = path.empty() ? name : std::move(path);
        return b;
    }

    void log_crystal(std::string name, std::vector<BasisVariable::Id> vars, Support outputs) {
        Element e{ElementKind::crystal, std::move(name), region_, std::move(vars), 0, {}, std::move(outputs)};
        elements_.push_back(std::move(e));
    }

    PbsPorts pbs(std::string name, const PolarizedBeam& in, const PolarizedBeam& idle, PbsOrientation o,
                 std::string transmitted_path, std::string reflected_path) {
        if (!is_vacuum_pure(idle, ensemble_)) throw std::invalid_argument("idle input is not a pure zeropoint beam");
        const Support idle_vars = support_of(idle);
        for (auto id : idle_vars) {
            if (!opened_.insert(id).second) throw std::invalid_argument("idle input reused: " + ensemble_.at(id).label);
        }
        PbsPorts out = zpf::pbs_combine(in, idle, o);
        out.transmitted.path = std::move(transmitted_path);
        out.reflected.path = std::move(reflected_path);
        log(ElementKind::pbs, std::move(name), {idle_vars.begin(), idle_vars.end()}, 1, {&in},
            {&out.transmitted, &out.reflected});
        return out;
    }

    // PBS with both inputs carrying signal; opens no vacuum.
    PbsPorts pbs_combine(std::string name, const PolarizedBeam& in, const PolarizedBeam& other, PbsOrientation o,
                         std::string transmitted_path, std::string reflected_path) {
        PbsPorts out = zpf::pbs_combine(in, other, o);
        out.transmitted.path = std::move(transmitted_path);
        out.reflected.path = std::move(reflected_path);
        log(ElementKind::pbs, std::move(name), {}, 0, {&in, &other}, {&out.transmitted, &out.reflected});
        return out;
    }

    std::pair<PolarizedBeam, PolarizedBeam> beamsplitter(std::string name, const PolarizedBeam& b1,
                                                         const PolarizedBeam& b2, std::string plus_path,
                                                         std::string minus_path) {
        auto out = balanced_beamsplitter(b1, b2);
        out.first.path = std::move(plus_path);
        out.second.path = std::move(minus_path);
        log(ElementKind::beamsplitter, std::move(name), {}, 0, {&b1, &b2}, {&out.first, &out.second});
        return out;
    }

    // Balanced beam-splitter whose second port is an idle vacuum input.
    std::pair<PolarizedBeam, PolarizedBeam> beamsplitter_with_idle(std::string name, const PolarizedBeam& b1,
                                                                   const PolarizedBeam& idle, std::string plus_path,
                                                                   std::string minus_path) {
        if (!is_vacuum_pure(idle, ensemble_)) throw std::invalid_argument("idle input is not a pure zeropoint beam");
        const Support idle_vars = support_of(idle);
        for (auto id : idle_vars) {
            if (!opened_.insert(id).second) throw std::invalid_argument("idle input reused: " + ensemble_.at(id).label);
        }
        auto out = balanced_beamsplitter(b1, idle);
        out.first.path = std::move(plus_path);
        out.second.path = std::move(minus_path);
        log(ElementKind::beamsplitter, std::move(name), {idle_vars.begin(), idle_vars.end()}, 1, {&b1},
            {&out.first, &out.second});
        return out;
    }

    PolarizedBeam jones(std::string name, const JonesMap& m, const PolarizedBeam& in) {
        PolarizedBeam out = apply_jones(m, in);
        log(ElementKind::jones, std::move(name), {}, 0, {&in}, {&out});
        return out;
    }

    PolarizedBeam mirror(std::string name, const PolarizedBeam& in, complex phase = kDefaultMirrorPhase) {
        PolarizedBeam out = zpf::mirror(in, phase);
        log(ElementKind::mirror, std::move(name), {}, 0, {&in}, {&out});
        return out;
    }

    PolarizedBeam propagate(std::string name, const PolarizedBeam& in, double r12) {
        PolarizedBeam out = zpf::propagate(in, r12);
        log(ElementKind::propagation, std::move(name), {}, 0, {&in}, {&out});
        return out;
    }

    // Beam leaving the setup without detection (e.g. a noise port).
    void discard(std::string name, const PolarizedBeam& in) {
        log(ElementKind::discard, std::move(name), {}, 0, {&in}, {});
    }

private:
    void log(ElementKind kind, std::string name, std::vector<BasisVariable::Id> opened, int idle,
             std::initializer_list<const PolarizedBeam*> inputs, std::initializer_list<const PolarizedBeam*> outputs) {
        Element e{kind, std::move(name), region_, std::move(opened), idle, {}, {}};
        for (const auto* b : inputs) e.input_support.merge(support_of(*b));
        for (const auto* b : outputs) e.output_support.merge(support_of(*b));
        elements_.push_back(std::move(e));
    }

    Ensemble ensemble_;
    std::vector<Element> elements_;
    std::set<BasisVariable::Id> opened_;
    Region region_ = Region::unassigned;
};

}  // namespace zpf
