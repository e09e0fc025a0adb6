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

// Zeropoint mode-set accounting.
//
// One basis variable is one set of vacuum modes. For a measuring region
// (Alice's analyser, Bob's verification station) the ledger counts
//   - sets opened at the source,
//   - sets carried into the region by incoming beams,
//   - idle channels opened inside the region and the sets they add.
// The number of distinguishable classes is bounded by the incoming sets
// minus the idle channels.

#pragma once

#include <ostream>
#include <stdexcept>
#include <vector>

#include "zpf/network.hpp"

namespace zpf {

struct ZpfLedger {
    int n_zpf_source = 0;          // N_ZPF,S
    int n_zpf_analyser = 0;        // N_ZPF,A: sets entering the region
    int n_idle_channels = 0;       // N_ic
    int n_zpf_analyser_noise = 0;  // sets opened by the idle channels

    void validate() const {
        if (n_zpf_source < 0 || n_zpf_analyser < 0 || n_idle_channels < 0 || n_zpf_analyser_noise < 0) {
            throw std::invalid_argument("ledger counts must be nonnegative");
        }
        if (n_zpf_analyser_noise != 2 * n_idle_channels) {
            throw std::invalid_argument("each idle channel must contribute two mode sets");
        }
    }

    friend bool operator==(const ZpfLedger&, const ZpfLedger&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const ZpfLedger& l) {
    return os << "(N_ZPF_S=" << l.n_zpf_source << ", N_ZPF_A=" << l.n_zpf_analyser << ", N_ic=" << l.n_idle_channels
              << ", N_noise=" << l.n_zpf_analyser_noise << ")";
}

// N_max = N_ZPF,A - N^noise / 2
inline int max_distinguishable_classes(const ZpfLedger& l) {
    l.validate();
    const int n = l.n_zpf_analyser - l.n_zpf_analyser_noise / 2;
    if (n < 0) throw std::domain_error("noise exceeds information");
    return n;
}

// Same bound written with the source count, N_ZPF,S - N_ic. Coincides with
// max_distinguishable_classes when everything amplified at the source
// enters the analyser.
inline int max_distinguishable_classes_from_source(const ZpfLedger& l) {
    l.validate();
    const int n = l.n_zpf_source - l.n_idle_channels;
    if (n < 0) throw std::domain_error("noise exceeds information");
    return n;
}

namespace detail {

inline void require_classified(const Network& net) {
    for (const auto& e : net.elements()) {
        if (e.region == Region::unassigned) throw std::invalid_argument("unclassifiable element: " + e.name);
    }
}

// Variables opened inside `r`, and variables carried into `r` from outside.
inline std::pair<Support, Support> region_flow(const Network& net, Region r) {
    Support opened, consumed;
    for (const auto& e : net.elements()) {
        if (e.region != r) continue;
        opened.insert(e.opened.begin(), e.opened.end());
        consumed.insert(e.input_support.begin(), e.input_support.end());
    }
    Support entering;
    for (auto id : consumed) {
        if (!opened.contains(id)) entering.insert(id);
    }
    return {opened, entering};
}

}  // namespace detail

inline ZpfLedger audit_region(const Network& net, Region measuring) {
    detail::require_classified(net);
    ZpfLedger l;
    for (const auto& e : net.elements()) {
        if (e.region == Region::source) l.n_zpf_source += static_cast<int>(e.opened.size());
        if (e.region == measuring) l.n_idle_channels += e.idle_channels;
    }
    const auto [opened, entering] = detail::region_flow(net, measuring);
    l.n_zpf_analyser = static_cast<int>(entering.size());
    l.n_zpf_analyser_noise = static_cast<int>(opened.size());
    l.validate();
    return l;
}

// Ledger with Alice's Bell-state analyser as the measuring region.
inline ZpfLedger audit_network(const Network& net) { return audit_region(net, Region::analyser); }

struct SourceIdleRouting {
    std::vector<BasisVariable::Id> alice_bound;
    std::vector<BasisVariable::Id> bob_bound;
};

// Splits the vacuum sets opened by source idle channels by the station
// whose incoming beams carry them.
inline SourceIdleRouting classify_source_idle(const Network& net) {
    detail::require_classified(net);
    const Support alice = detail::region_flow(net, Region::analyser).second;
    const Support bob = detail::region_flow(net, Region::bob_station).second;
    SourceIdleRouting out;
    for (const auto& e : net.elements()) {
        if (e.region != Region::source || e.idle_channels == 0) continue;
        for (auto id : e.opened) {
            if (alice.contains(id)) out.alice_bound.push_back(id);
            if (bob.contains(id)) out.bob_bound.push_back(id);
        }
    }
    return out;
}

}  // namespace zpf
