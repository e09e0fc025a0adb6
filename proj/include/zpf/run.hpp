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

// Verification sweeps as CSV. Shared by the command-line tool and its tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zpf/ledger.hpp"
#include "zpf/rome.hpp"

namespace zpf {

enum class ScenarioKind { rome_linear, rome_elliptical, rome_generic };

inline ScenarioKind parse_scenario(std::string_view s) {
    if (s == "rome-linear") return ScenarioKind::rome_linear;
    if (s == "rome-elliptical") return ScenarioKind::rome_elliptical;
    if (s == "rome-generic") return ScenarioKind::rome_generic;
    throw std::invalid_argument("unknown scenario: " + std::string(s));
}

inline Engine parse_engine(std::string_view s) {
    if (s == "analytic") return Engine::analytic;
    if (s == "p12") return Engine::p12;
    if (s == "intensity") return Engine::intensity;
    if (s == "monte-carlo") return Engine::monte_carlo;
    throw std::invalid_argument("unknown engine: " + std::string(s));
}

// Angles in degrees.
struct Sweep {
    double start = 0.0, stop = 180.0, step = 7.5;

    void validate() const {
        if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
            throw std::invalid_argument("sweep bounds must be finite");
        }
        if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
        if (stop < start) throw std::invalid_argument("sweep stop precedes start");
    }

    [[nodiscard]] std::size_t count() const {
        validate();
        return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    }

    [[nodiscard]] double at(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
};

// "start:stop:step"
inline Sweep parse_sweep(std::string_view text) {
    const auto c1 = text.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
        throw std::invalid_argument("sweep must be start:stop:step");
    }
    auto number = [](std::string_view s) {
        const std::string str(s);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(str, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad sweep number: " + str);
        }
        if (used != str.size()) throw std::invalid_argument("bad sweep number: " + str);
        return v;
    };
    Sweep s{number(text.substr(0, c1)), number(text.substr(c1 + 1, c2 - c1 - 1)), number(text.substr(c2 + 1))};
    s.validate();
    return s;
}

struct RunConfig {
    ScenarioKind scenario = ScenarioKind::rome_linear;
    double theta_deg = 22.5;
    double gamma_deg = 20.0;
    JonesMap prep;  // rome-generic only
    Sweep theta_b;
    Engine engine = Engine::analytic;
    std::size_t samples = 200000;
    std::uint64_t seed = 1;
    double g = 0.1;
    complex pump{1.0};
    bool ledger = false;
    unsigned threads = 0;

    void validate() const {
        theta_b.validate();
        if (engine == Engine::monte_carlo && samples < MonteCarloOptions::kMinSamples) {
            throw std::invalid_argument("monte-carlo needs at least 1000 samples");
        }
        if (!(g > 0.0)) throw std::invalid_argument("coupling g must be positive");
        if (std::abs(pump) == 0.0) throw std::invalid_argument("laser amplitude must be nonzero");
        if (scenario == ScenarioKind::rome_generic && !prep.is_unitary()) {
            throw std::invalid_argument("unitarity violation in preparer");
        }
    }

    [[nodiscard]] PreparerSpec preparer() const {
        switch (scenario) {
            case ScenarioKind::rome_linear: return PreparerSpec::linear(deg_to_rad(theta_deg));
            case ScenarioKind::rome_elliptical: return PreparerSpec::elliptical(deg_to_rad(gamma_deg));
            case ScenarioKind::rome_generic: break;
        }
        return PreparerSpec::generic(prep);
    }

    [[nodiscard]] BobMapFn bob_map(double theta_b_deg) const {
        const double tb = deg_to_rad(theta_b_deg);
        if (scenario == ScenarioKind::rome_elliptical) return elliptical_bob_map(deg_to_rad(gamma_deg), tb);
        return linear_bob_map(tb);
    }
};

inline std::string format_ledger(const ZpfLedger& l) {
    return "N_ZPF_S=" + std::to_string(l.n_zpf_source) + " N_ZPF_A=" + std::to_string(l.n_zpf_analyser) +
           " N_ic=" + std::to_string(l.n_idle_channels) + " N_max=" + std::to_string(max_distinguishable_classes(l));
}

namespace detail {

inline std::string format_number(double x, const char* fmt = "%.17g") {
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

// Independent Monte-Carlo stream per sweep point.
inline std::uint64_t point_seed(std::uint64_t seed, std::size_t point) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(point) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader = "theta_B_deg,detector,port,probability,normalized,stderr";

// Writes the CSV to `csv`; the ledger line, when requested, goes to `report`.
inline void run(const RunConfig& cfg, std::ostream& csv, std::ostream& report) {
    cfg.validate();
    CrystalParams params;
    params.g = cfg.g;
    params.pump = cfg.pump;
    const Scenario s = build_verification_scenario(params, cfg.preparer());
    if (cfg.ledger) report << format_ledger(s.ledger()) << '\n';

    const MomentContext ctx = s.context();
    csv << kCsvHeader << '\n';
    const std::size_t n = cfg.theta_b.count();
    for (std::size_t i = 0; i < n; ++i) {
        const double tb = cfg.theta_b.at(i);
        const auto targets = verification_targets(s, cfg.bob_map(tb));
        MonteCarloOptions mc;
        mc.samples = cfg.samples;
        mc.seed = detail::point_seed(cfg.seed, i);
        mc.threads = cfg.threads;
        const auto records = evaluate_targets(targets, ctx, cfg.engine, s.reference_scale(), mc);
        const auto table = to_table(records);
        for (const auto& row : table) {
            csv << detail::format_number(tb, "%.10g") << ',' << to_string(row.detector) << ',' << to_string(row.port)
                << ',' << detail::format_number(row.record.probability) << ','
                << detail::format_number(row.record.normalized) << ',';
            if (const auto se = row.record.normalized_stderr()) csv << detail::format_number(*se);
            csv << '\n';
        }
    }
    if (!csv) throw std::runtime_error("failed writing CSV output");
}

}  // namespace zpf
