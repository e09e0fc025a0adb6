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

// Gaussian zeropoint amplitudes and the linear-form algebra built on them.
//
// Every field amplitude in the simulator is a complex linear form over a
// finite set of vacuum basis variables alpha_j and their conjugates. The
// vacuum is a product of circular complex Gaussians with
//   <alpha_j alpha_k>   = <alpha_j* alpha_k*> = 0
//   <alpha_j alpha_k*>  = 1/2 delta_jk
// so second moments of forms are exact bilinear sums and fourth moments
// follow from the Isserlis pairing rule.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <iterator>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zpf {

using complex = std::complex<double>;

inline constexpr complex kI{0.0, 1.0};

enum class VariableKind { crystal_zpf, idle_zpf };

struct BasisVariable {
    using Id = std::uint32_t;

    Id id = 0;
    std::string label;
    VariableKind kind = VariableKind::idle_zpf;
};

// Ordered collection of basis variables. Ids are dense: the variable with
// id k sits at index k. Sampling order follows id order.
class Ensemble {
public:
    BasisVariable::Id add(std::string label, VariableKind kind) {
        if (label.empty()) {
            throw std::invalid_argument("basis variable label must be nonempty");
        }
        auto id = static_cast<BasisVariable::Id>(vars_.size());
        vars_.push_back(BasisVariable{id, std::move(label), kind});
        return id;
    }

    [[nodiscard]] std::size_t size() const noexcept { return vars_.size(); }
    [[nodiscard]] bool contains(BasisVariable::Id id) const noexcept { return id < vars_.size(); }
    [[nodiscard]] const BasisVariable& at(BasisVariable::Id id) const { return vars_.at(id); }
    [[nodiscard]] const std::vector<BasisVariable>& variables() const noexcept { return vars_; }

private:
    std::vector<BasisVariable> vars_;
};

// A complex linear form sum_k c_k * alpha_{id_k}^{(*)}.
//
// Terms are keyed by (variable id, conjugated). Coefficients below
// kDropThreshold in magnitude are removed so that equal forms compare equal.
class StochasticAmplitude {
public:
    struct Key {
        BasisVariable::Id id;
        bool conjugated;

        friend bool operator<(const Key& a, const Key& b) noexcept {
            return a.id != b.id ? a.id < b.id : a.conjugated < b.conjugated;
        }
        friend bool operator==(const Key& a, const Key& b) noexcept = default;
    };
    using Terms = std::map<Key, complex>;

    static constexpr double kDropThreshold = 1e-15;

    StochasticAmplitude() = default;

    static StochasticAmplitude variable(BasisVariable::Id id, complex coeff = 1.0) {
        StochasticAmplitude f;
        f.add_term({id, false}, coeff);
        return f;
    }
    static StochasticAmplitude conjugate_variable(BasisVariable::Id id, complex coeff = 1.0) {
        StochasticAmplitude f;
        f.add_term({id, true}, coeff);
        return f;
    }

    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    [[nodiscard]] complex coefficient(BasisVariable::Id id, bool conjugated) const {
        auto it = terms_.find({id, conjugated});
        return it == terms_.end() ? complex{} : it->second;
    }

    // Complex conjugate of the form: conjugates every coefficient and flips
    // every conjugation flag. Maps F^(+) to F^(-).
    [[nodiscard]] StochasticAmplitude conj() const {
        StochasticAmplitude out;
        for (const auto& [key, c] : terms_) {
            out.terms_.emplace(Key{key.id, !key.conjugated}, std::conj(c));
        }
        return out;
    }

    // Unconjugated terms only. For a positive-frequency amplitude these are
    // the vacuum contributions; amplified (signal) content enters through
    // conjugated crystal variables.
    [[nodiscard]] StochasticAmplitude vacuum_part() const { return filtered(false); }
    [[nodiscard]] StochasticAmplitude signal_part() const { return filtered(true); }

    StochasticAmplitude& operator+=(const StochasticAmplitude& rhs) {
        for (const auto& [key, c] : rhs.terms_) add_term(key, c);
        return *this;
    }
    StochasticAmplitude& operator-=(const StochasticAmplitude& rhs) {
        for (const auto& [key, c] : rhs.terms_) add_term(key, -c);
        return *this;
    }
    StochasticAmplitude& operator*=(complex s) {
        if (std::abs(s) < kDropThreshold) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= s;
            it = std::abs(it->second) < kDropThreshold ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }

    friend StochasticAmplitude operator+(StochasticAmplitude a, const StochasticAmplitude& b) { return a += b; }
    friend StochasticAmplitude operator-(StochasticAmplitude a, const StochasticAmplitude& b) { return a -= b; }
    friend StochasticAmplitude operator-(StochasticAmplitude a) { return a *= -1.0; }
    friend StochasticAmplitude operator*(complex s, StochasticAmplitude a) { return a *= s; }
    friend StochasticAmplitude operator*(StochasticAmplitude a, complex s) { return a *= s; }

    friend bool operator==(const StochasticAmplitude&, const StochasticAmplitude&) = default;

    // Largest coefficient difference between two forms.
    [[nodiscard]] static double distance(const StochasticAmplitude& a, const StochasticAmplitude& b) {
        double worst = 0.0;
        for (const auto& [key, c] : (a - b).terms_) worst = std::max(worst, std::abs(c));
        return worst;
    }

private:
    void add_term(Key key, complex c) {
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) it->second += c;
        if (std::abs(it->second) < kDropThreshold) terms_.erase(it);
    }

    [[nodiscard]] StochasticAmplitude filtered(bool conjugated) const {
        StochasticAmplitude out;
        for (const auto& [key, c] : terms_) {
            if (key.conjugated == conjugated) out.terms_.emplace(key, c);
        }
        return out;
    }

    Terms terms_;
};

inline std::string to_string(const StochasticAmplitude& f, const Ensemble& ens) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
        os << (ens.contains(key.id) ? ens.at(key.id).label : "#" + std::to_string(key.id));
        if (key.conjugated) os << '*';
    }
    return os.str();
}

// Moment evaluation context: the ensemble a form must live in. The pair
// variance <alpha alpha*> is fixed at 1/2.
class MomentContext {
public:
    static constexpr double kPairVariance = 0.5;

    MomentContext() = default;
    explicit MomentContext(const Ensemble& ens) : ensemble_(ens) {}

    [[nodiscard]] const Ensemble& ensemble() const noexcept { return ensemble_; }
    [[nodiscard]] std::size_t size() const noexcept { return ensemble_.size(); }

    void require_member(const StochasticAmplitude& f) const {
        for (const auto& [key, c] : f.terms()) {
            if (!ensemble_.contains(key.id)) throw std::invalid_argument("foreign basis variable");
        }
    }

private:
    Ensemble ensemble_;
};

// <f g> under the vacuum distribution.
inline complex second_moment(const StochasticAmplitude& f, const StochasticAmplitude& g, const MomentContext& ctx) {
    ctx.require_member(f);
    ctx.require_member(g);
    complex sum{};
    const auto& gt = g.terms();
    for (const auto& [key, c] : f.terms()) {
        auto it = gt.find({key.id, !key.conjugated});
        if (it != gt.end()) sum += c * it->second;
    }
    return sum * MomentContext::kPairVariance;
}

// <f1 f2 f3 f4> by Isserlis pairing of jointly Gaussian zero-mean forms.
inline complex fourth_moment(const StochasticAmplitude& f1, const StochasticAmplitude& f2,
                             const StochasticAmplitude& f3, const StochasticAmplitude& f4,
                             const MomentContext& ctx) {
    return second_moment(f1, f2, ctx) * second_moment(f3, f4, ctx) +
           second_moment(f1, f3, ctx) * second_moment(f2, f4, ctx) +
           second_moment(f1, f4, ctx) * second_moment(f2, f3, ctx);
}

// One draw of every basis variable, indexed by id.
using Assignment = std::vector<complex>;

inline complex evaluate(const StochasticAmplitude& f, const Assignment& values) {
    complex sum{};
    for (const auto& [key, c] : f.terms()) {
        if (key.id >= values.size()) throw std::out_of_range("assignment missing basis variable");
        const complex a = values[key.id];
        sum += c * (key.conjugated ? std::conj(a) : a);
    }
    return sum;
}

// Flat copy of a form for repeated evaluation in sampling loops.
class CompiledForm {
public:
    CompiledForm() = default;
    explicit CompiledForm(const StochasticAmplitude& f) {
        for (const auto& [key, c] : f.terms()) {
            if (key.conjugated) {
                conj_.emplace_back(key.id, c);
            } else {
                plain_.emplace_back(key.id, c);
            }
        }
    }

    [[nodiscard]] complex operator()(const Assignment& v) const noexcept {
        complex sum{};
        for (const auto& [id, c] : plain_) sum += c * v[id];
        for (const auto& [id, c] : conj_) sum += c * std::conj(v[id]);
        return sum;
    }

    [[nodiscard]] BasisVariable::Id max_id() const noexcept {
        BasisVariable::Id m = 0;
        for (const auto& [id, c] : plain_) m = std::max(m, id);
        for (const auto& [id, c] : conj_) m = std::max(m, id);
        return m;
    }

private:
    std::vector<std::pair<BasisVariable::Id, complex>> plain_;
    std::vector<std::pair<BasisVariable::Id, complex>> conj_;
};

// Seeded source of vacuum draws. Each real quadrature is N(0, 1/4), so
// <|alpha|^2> = 1/2. The stream is a pure function of the seed material
// and the ensemble size.
class EnsembleSampler {
public:
    EnsembleSampler(std::size_t n_variables, std::uint64_t seed, std::uint64_t stream = 0)
        : n_(n_variables), quadrature_(0.0, 0.5) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        engine_.seed(seq);
    }
    EnsembleSampler(const MomentContext& ctx, std::uint64_t seed, std::uint64_t stream = 0)
        : EnsembleSampler(ctx.size(), seed, stream) {}

    void next(Assignment& out) {
        out.resize(n_);
        for (auto& a : out) {
            const double re = quadrature_(engine_);
            const double im = quadrature_(engine_);
            a = complex{re, im};
        }
    }

    [[nodiscard]] Assignment next() {
        Assignment a;
        next(a);
        return a;
    }

private:
    std::size_t n_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> quadrature_;
};

inline std::vector<Assignment> sample_ensemble(const MomentContext& ctx, std::uint64_t seed, std::size_t n) {
    if (n == 0) throw std::invalid_argument("sample count must be at least 1");
    EnsembleSampler sampler(ctx, seed);
    std::vector<Assignment> out(n);
    for (auto& a : out) sampler.next(a);
    return out;
}

}  // namespace zpf
