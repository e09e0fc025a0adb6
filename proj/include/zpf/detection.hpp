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

// Single and joint detection probabilities.
//
// Three routes to a joint probability are provided:
//   p12        sum over components of |<F_a F_b>|^2
//   intensity  <(I_a - I0_a)(I_b - I0_b)> with I0 the mean zeropoint
//              intensity, evaluated exactly by Isserlis pairing
//   mc         sampled estimate of the intensity form
// The intensity form equals p12 plus the product of single probabilities
// (and |<F_a F_b*>|^2, zero for beams on disjoint vacuum sets), so the two
// agree to leading order in g.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "zpf/optics.hpp"
#include "zpf/stochastic.hpp"

namespace zpf {

enum class Polarization { H, V };

struct DetectorSpec {
    std::string name;
    double efficiency = 1.0;  // k
    std::optional<Polarization> selected;

    void validate() const {
        if (!(efficiency > 0.0 && efficiency <= 1.0)) throw std::invalid_argument("detector efficiency must be in (0, 1]");
    }

    [[nodiscard]] std::vector<int> components() const {
        if (!selected) return {0, 1};
        return {*selected == Polarization::H ? 0 : 1};
    }
};

struct DetectionRecord {
    double probability = 0.0;              // unnormalized, carries k factors
    double normalized = 0.0;               // probability / scale
    std::optional<double> standard_error;  // Monte-Carlo only, probability units
    double scale = 1.0;                    // k factors times reference scale

    [[nodiscard]] std::optional<double> normalized_stderr() const {
        if (!standard_error) return std::nullopt;
        return *standard_error / scale;
    }
};

inline constexpr double kNegativeRoundoff = 1e-12;

// Analytic probabilities are nonnegative; tiny negatives are round-off.
inline double clip_probability(double p) {
    if (p >= 0.0) return p;
    if (p >= -kNegativeRoundoff) return 0.0;
    throw std::logic_error("negative analytic probability");
}

inline DetectionRecord make_record(double probability, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("reference scale must be positive");
    return DetectionRecord{probability, probability / scale, std::nullopt, scale};
}

// <I - I_ZPF> for one component: the zeropoint reference is the vacuum
// part of the same form (all amplified terms removed).
inline double vacuum_subtracted_intensity(const StochasticAmplitude& f, const MomentContext& ctx) {
    const StochasticAmplitude vac = f.vacuum_part();
    return (second_moment(f, f.conj(), ctx) - second_moment(vac, vac.conj(), ctx)).real();
}

inline DetectionRecord single_probability(const PolarizedBeam& beam, const DetectorSpec& det, const MomentContext& ctx,
                                          double reference_scale = 1.0) {
    det.validate();
    double sum = 0.0;
    for (int c : det.components()) sum += vacuum_subtracted_intensity(beam.component(c), ctx);
    return make_record(det.efficiency * clip_probability(sum), det.efficiency * reference_scale);
}

inline DetectionRecord joint_probability_p12(const PolarizedBeam& a, const DetectorSpec& da, const PolarizedBeam& b,
                                             const DetectorSpec& db, const MomentContext& ctx,
                                             double reference_scale = 1.0) {
    da.validate();
    db.validate();
    double sum = 0.0;
    for (int ca : da.components()) {
        for (int cb : db.components()) sum += std::norm(second_moment(a.component(ca), b.component(cb), ctx));
    }
    const double k = da.efficiency * db.efficiency;
    return make_record(k * sum, k * reference_scale);
}

namespace detail {

inline double mean_intensity(const PolarizedBeam& beam, const DetectorSpec& det, const MomentContext& ctx, bool vacuum) {
    double sum = 0.0;
    for (int c : det.components()) {
        const StochasticAmplitude f = vacuum ? beam.component(c).vacuum_part() : beam.component(c);
        sum += second_moment(f, f.conj(), ctx).real();
    }
    return sum;
}

// <(I_a - c_a)(I_b - c_b)> for the chosen parts of the two beams, c = <I0>.
inline double intensity_covariance_form(const PolarizedBeam& a, const DetectorSpec& da, const PolarizedBeam& b,
                                        const DetectorSpec& db, const MomentContext& ctx, bool vacuum) {
    double fourth = 0.0;
    for (int ca : da.components()) {
        for (int cb : db.components()) {
            const StochasticAmplitude fa = vacuum ? a.component(ca).vacuum_part() : a.component(ca);
            const StochasticAmplitude fb = vacuum ? b.component(cb).vacuum_part() : b.component(cb);
            fourth += fourth_moment(fa, fa.conj(), fb, fb.conj(), ctx).real();
        }
    }
    const double ia = mean_intensity(a, da, ctx, vacuum), ib = mean_intensity(b, db, ctx, vacuum);
    const double ca = mean_intensity(a, da, ctx, true), cb = mean_intensity(b, db, ctx, true);
    return fourth - ca * ib - cb * ia + ca * cb;
}

}  // namespace detail

inline DetectionRecord joint_probability_intensity(const PolarizedBeam& a, const DetectorSpec& da,
                                                   const PolarizedBeam& b, const DetectorSpec& db,
                                                   const MomentContext& ctx, double reference_scale = 1.0) {
    da.validate();
    db.validate();
    const double k = da.efficiency * db.efficiency;
    const double value = detail::intensity_covariance_form(a, da, b, db, ctx, false);
    return make_record(k * clip_probability(value), k * reference_scale);
}

struct JointTarget {
    PolarizedBeam a;
    DetectorSpec da;
    PolarizedBeam b;
    DetectorSpec db;
};

struct MonteCarloOptions {
    std::uint64_t seed = 1;
    std::size_t samples = 100000;
    std::size_t block_size = 8192;
    unsigned threads = 0;  // 0: hardware concurrency

    static constexpr std::size_t kMinSamples = 1000;
};

namespace detail {

struct Moments {
    double n = 0.0, mean = 0.0, m2 = 0.0;

    void push(double x) noexcept {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    void merge(const Moments& o) noexcept {
        if (o.n == 0.0) return;
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * o.n / total;
        m2 += o.m2 + d * d * n * o.n / total;
        n = total;
    }
};

struct CompiledTarget {
    std::vector<CompiledForm> a_full, a_vac, b_full, b_vac;
    double ca = 0.0, cb = 0.0;  // <I0_a>, <I0_b>
    double vacuum_cov = 0.0;    // <(I0_a - ca)(I0_b - cb)>, exact
    double k = 1.0;

    [[nodiscard]] double sample(const Assignment& x) const noexcept {
        auto intensity = [&](const std::vector<CompiledForm>& forms) {
            double s = 0.0;
            for (const auto& f : forms) s += std::norm(f(x));
            return s;
        };
        const double ia = intensity(a_full), ib = intensity(b_full);
        const double ja = intensity(a_vac), jb = intensity(b_vac);
        // Per-sample zeropoint intensity as a control variate with known mean.
        return k * ((ia - ca) * (ib - cb) - (ja - ca) * (jb - cb) + vacuum_cov);
    }
};

inline CompiledTarget compile(const JointTarget& t, const MomentContext& ctx) {
    CompiledTarget c;
    for (int comp : t.da.components()) {
        ctx.require_member(t.a.component(comp));
        c.a_full.emplace_back(t.a.component(comp));
        c.a_vac.emplace_back(t.a.component(comp).vacuum_part());
    }
    for (int comp : t.db.components()) {
        ctx.require_member(t.b.component(comp));
        c.b_full.emplace_back(t.b.component(comp));
        c.b_vac.emplace_back(t.b.component(comp).vacuum_part());
    }
    c.ca = mean_intensity(t.a, t.da, ctx, true);
    c.cb = mean_intensity(t.b, t.db, ctx, true);
    c.vacuum_cov = intensity_covariance_form(t.a, t.da, t.b, t.db, ctx, true);
    c.k = t.da.efficiency * t.db.efficiency;
    return c;
}

}  // namespace detail

// Sampled estimate of the intensity-form joint probability for several
// detector pairs on one shared stream of vacuum draws.
//
// Samples are split into fixed-size blocks; block j draws from a generator
// seeded by (seed, j) and block results are merged in block order, so the
// output depends only on (seed, samples, block_size), not on thread count.
inline std::vector<DetectionRecord> mc_joint_probabilities(std::span<const JointTarget> targets,
                                                           const MomentContext& ctx, const MonteCarloOptions& opt,
                                                           double reference_scale = 1.0) {
    if (opt.samples < MonteCarloOptions::kMinSamples) throw std::invalid_argument("too few Monte-Carlo samples");
    if (opt.block_size == 0) throw std::invalid_argument("block size must be positive");

    std::vector<detail::CompiledTarget> compiled;
    compiled.reserve(targets.size());
    for (const auto& t : targets) {
        t.da.validate();
        t.db.validate();
        compiled.push_back(detail::compile(t, ctx));
    }

    const std::size_t n_blocks = (opt.samples + opt.block_size - 1) / opt.block_size;
    std::vector<std::vector<detail::Moments>> blocks(n_blocks, std::vector<detail::Moments>(targets.size()));

    auto run_block = [&](std::size_t j) {
        EnsembleSampler sampler(ctx, opt.seed, j);
        const std::size_t begin = j * opt.block_size;
        const std::size_t end = std::min(opt.samples, begin + opt.block_size);
        Assignment x;
        auto& acc = blocks[j];
        for (std::size_t s = begin; s < end; ++s) {
            sampler.next(x);
            for (std::size_t t = 0; t < compiled.size(); ++t) acc[t].push(compiled[t].sample(x));
        }
    };

    unsigned n_threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_blocks));
    if (n_threads <= 1) {
        for (std::size_t j = 0; j < n_blocks; ++j) run_block(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        workers.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            workers.emplace_back([&] {
                for (std::size_t j = next++; j < n_blocks; j = next++) run_block(j);
            });
        }
    }

    std::vector<DetectionRecord> out;
    out.reserve(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        detail::Moments total;
        for (const auto& b : blocks) total.merge(b[t]);
        const double variance = total.n > 1.0 ? total.m2 / (total.n - 1.0) : 0.0;
        DetectionRecord r = make_record(total.mean, compiled[t].k * reference_scale);
        r.standard_error = std::sqrt(variance / total.n);
        out.push_back(r);
    }
    return out;
}

inline DetectionRecord mc_joint_probability(const PolarizedBeam& a, const DetectorSpec& da, const PolarizedBeam& b,
                                            const DetectorSpec& db, const MomentContext& ctx,
                                            const MonteCarloOptions& opt, double reference_scale = 1.0) {
    const JointTarget t{a, da, b, db};
    return mc_joint_probabilities(std::span<const JointTarget>(&t, 1), ctx, opt, reference_scale).front();
}

}  // namespace zpf
