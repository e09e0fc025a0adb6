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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "zpf/ledger.hpp"
#include "zpf/rome.hpp"

namespace zpf {
namespace {

using SA = StochasticAmplitude;

TEST(Ledger, NoiseIsTwicePerIdleChannel) {
    EXPECT_THROW((ZpfLedger{8, 6, 2, 3}.validate()), std::invalid_argument);
    EXPECT_THROW((ZpfLedger{-1, 0, 0, 0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((ZpfLedger{8, 6, 2, 4}.validate()));
}

TEST(MaxClasses, RomeAnalyser) { EXPECT_EQ(max_distinguishable_classes({8, 6, 2, 4}), 4); }

TEST(MaxClasses, MomentumVariant) { EXPECT_EQ(max_distinguishable_classes({4, 6, 2, 4}), 4); }

TEST(MaxClasses, TwoPhotonHyperentangled) {
    for (int n = 1; n <= 4; ++n) {
        const int ns = 1 << (n + 1), nic = 1 << n;
        const ZpfLedger l{ns, ns, nic, 2 * nic};
        EXPECT_EQ(max_distinguishable_classes_from_source(l), 1 << n);
        EXPECT_EQ(max_distinguishable_classes(l), 1 << n);
    }
    EXPECT_EQ(max_distinguishable_classes_from_source({8, 8, 4, 8}), 4);
}

TEST(MaxClasses, NoiseExceedsInformation) {
    try {
        (void)max_distinguishable_classes({2, 2, 3, 6});
        FAIL() << "expected throw";
    } catch (const std::domain_error& e) {
        EXPECT_STREQ(e.what(), "noise exceeds information");
    }
}

TEST(Audit, RomeScenario) {
    const Scenario s = build_full_rome({}, PreparerSpec::linear(0.4));
    const ZpfLedger l = audit_network(s.net);
    EXPECT_EQ(l, (ZpfLedger{8, 6, 2, 4}));
    EXPECT_EQ(max_distinguishable_classes(l), 4);
    EXPECT_EQ(s.ledger(), l);
}

TEST(Audit, IndependentOfPreparationAndVerification) {
    const Scenario s = build_verification_scenario({}, PreparerSpec::elliptical(0.3));
    EXPECT_EQ(audit_network(s.net), (ZpfLedger{8, 6, 2, 4}));
}

TEST(Audit, BobVerificationStation) {
    const Scenario s = build_verification_scenario({}, PreparerSpec::linear(0.4));
    const ZpfLedger l = audit_region(s.net, Region::verification);
    EXPECT_EQ(l.n_zpf_analyser, 4);
    EXPECT_EQ(l.n_idle_channels, 1);
    EXPECT_EQ(max_distinguishable_classes(l), 3);
    EXPECT_LT(max_distinguishable_classes(l), max_distinguishable_classes(s.ledger()));
}

TEST(Audit, SourceOnly) {
    Network net;
    build_source(net, {});
    EXPECT_EQ(audit_network(net), (ZpfLedger{8, 0, 0, 0}));
}

TEST(Audit, MomentumVariant) {
    const Scenario s = build_momentum_variant({}, 0.7);
    const ZpfLedger l = s.ledger();
    EXPECT_EQ(l, (ZpfLedger{4, 6, 2, 4}));
    EXPECT_EQ(max_distinguishable_classes(l), 4);
}

TEST(Audit, UnclassifiableElement) {
    Network net;
    const auto z = net.vacuum("Z");
    net.mirror("stray", z);
    EXPECT_THROW((void)audit_network(net), std::invalid_argument);
}

TEST(Audit, SourceIdlesRoutedByStation) {
    const Scenario s = build_full_rome({}, PreparerSpec::linear(0.4));
    const auto routing = classify_source_idle(s.net);
    auto labels = [&](const std::vector<BasisVariable::Id>& ids) {
        std::vector<std::string> out;
        for (auto id : ids) out.push_back(s.net.ensemble().at(id).label);
        std::sort(out.begin(), out.end());
        return out;
    };
    EXPECT_EQ(labels(routing.alice_bound), (std::vector<std::string>{"ZPF1,V", "ZPF2,V"}));
    EXPECT_EQ(labels(routing.bob_bound), (std::vector<std::string>{"ZPF1,H", "ZPF2,H"}));
}

TEST(Audit, IdleReuseRejected) {
    Network net;
    net.enter(Region::source);
    const auto pair = emit_entangled_pair(net, {});
    const auto z = net.vacuum("Z");
    net.pbs("P1", pair.beam1, z, PbsOrientation::transmit_v, "t", "r");
    EXPECT_THROW(net.pbs("P2", pair.beam2, z, PbsOrientation::transmit_v, "t", "r"), std::invalid_argument);
}

// Random graphs in which every amplified set reaches the analyser: the two
// forms of the bound must agree.
TEST(Audit, BoundFormsAgreeWhenAllSourceSetsEnter) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> beams_d(1, 4), idle_d(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
        Network net;
        net.enter(Region::source);
        const int n_beams = beams_d(rng);
        std::vector<PolarizedBeam> beams;
        for (int b = 0; b < n_beams; ++b) {
            const auto h = net.add_crystal_variable("c" + std::to_string(b) + ",H");
            const auto v = net.add_crystal_variable("c" + std::to_string(b) + ",V");
            const PolarizedBeam beam{SA::variable(h), SA::variable(v), "b" + std::to_string(b)};
            net.log_crystal("crystal" + std::to_string(b), {h, v}, support_of(beam));
            beams.push_back(beam);
        }
        net.enter(Region::analyser);
        const int n_idle = std::min(idle_d(rng), n_beams);
        for (int b = 0; b < n_beams; ++b) {
            if (b < n_idle) {
                const auto z = net.vacuum("Z" + std::to_string(b));
                net.pbs("PBS" + std::to_string(b), beams[b], z, PbsOrientation::transmit_h, "t", "r");
            } else {
                net.jones("J" + std::to_string(b), rotator(0.1 * b), beams[b]);
            }
        }
        const ZpfLedger l = audit_network(net);
        ASSERT_EQ(l.n_zpf_analyser, l.n_zpf_source);
        EXPECT_EQ(l.n_idle_channels, n_idle);
        EXPECT_EQ(max_distinguishable_classes(l), max_distinguishable_classes_from_source(l));
    }
}

TEST(Audit, DroppedSourceSetIsVisible) {
    Network net;
    net.enter(Region::source);
    const auto h = net.add_crystal_variable("c,H");
    const auto v = net.add_crystal_variable("c,V");
    const PolarizedBeam beam{SA::variable(h), SA::variable(v), "b"};
    net.log_crystal("crystal", {h, v}, support_of(beam));
    net.enter(Region::analyser);
    net.jones("J", JonesMap::identity(), PolarizedBeam{beam.h, SA{}, "b"});
    const ZpfLedger l = audit_network(net);
    EXPECT_EQ(l.n_zpf_source, 2);
    EXPECT_EQ(l.n_zpf_analyser, 1);
}

}  // namespace
}  // namespace zpf
