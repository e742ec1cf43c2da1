// Copyright 2026 The wvkit Authors
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

#include "wvkit/estimator.h"

#include <cmath>
#include <sstream>

#include "wvkit/errors.h"

namespace wvkit {

namespace {

std::vector<complex> to_complex(const std::vector<double> &z) {
    return {z.begin(), z.end()};
}

void require_weights(size_t expected, size_t actual) {
    if (expected != actual) {
        throw DimensionMismatch("estimator: one weight per measurement outcome required");
    }
}

void require_k(uint64_t k) {
    if (k < 2) {
        throw InvalidArgument("estimator: K must be at least 2");
    }
}

void require_delta(double delta) {
    if (!(delta > 0 && delta < 1)) {
        throw InvalidArgument("estimator: delta must lie in (0, 1)");
    }
}

double log_term(uint64_t k, double delta) {
    require_delta(delta);
    if (k == 0) {
        throw InvalidArgument("estimator: K must be positive");
    }
    return std::sqrt(std::log(2.0 / delta) / (double)k);
}

// Random4 runs carry ztilde in [-2x, 2x]: the Hoeffding radius over K runs is sqrt(2) larger.
double mode_factor(SamplingMode mode) {
    return mode == SamplingMode::kSplit ? 1.0 : std::sqrt(2.0);
}

std::vector<double> product_values(const UnbiasedObservable &a, const UnbiasedObservable &b) {
    std::vector<double> z;
    for (double x : a.values()) {
        for (double y : b.values()) {
            z.push_back(x * y);
        }
    }
    return z;
}

double max_abs(const std::vector<double> &z) {
    double m = 0;
    for (double v : z) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

void require_overlap(const EstimateReport &r, bool signed_denominator) {
    double mu = signed_denominator ? std::abs(r.mu_hat) : r.mu_hat;
    if (mu <= r.epsilon_mu) {
        std::ostringstream msg;
        msg << "estimated overlap " << r.mu_hat << " is not above its error radius " << r.epsilon_mu
            << "; increase K or choose states with a larger overlap";
        throw OverlapTooSmall(msg.str(), r.mu_hat, r.epsilon_mu);
    }
}

}  // namespace

complex tilde_variable(complex z, size_t c) {
    if (c >= kControlOutcomes) {
        throw InvalidArgument("tilde_variable: control outcome must be 0, 1, 2 or 3");
    }
    double s = c % 2 == 0 ? 2.0 : -2.0;
    return c < 2 ? s * z : complex(0, -s) * z;
}

complex estimate_measure_expectation(const SampleBatch &batch, const std::vector<complex> &z) {
    size_t n = batch.num_measurement_outcomes();
    require_weights(n, z.size());
    if (batch.mode == SamplingMode::kRandom4) {
        complex total = 0;
        for (size_t m = 0; m < n; m++) {
            for (size_t c = 0; c < kControlOutcomes; c++) {
                total += (double)batch.count(m, c) * tilde_variable(z[m], c);
            }
        }
        return total / (double)batch.k;
    }
    complex re = 0, im = 0;
    for (size_t m = 0; m < n; m++) {
        re += ((double)batch.count(m, 0) - (double)batch.count(m, 1)) * z[m];
        im -= ((double)batch.count(m, 2) - (double)batch.count(m, 3)) * z[m];
    }
    complex x_re = batch.k_real() ? re / (double)batch.k_real() : complex(0);
    complex x_im = batch.k_imag() ? im / (double)batch.k_imag() : complex(0);
    return x_re + complex(0, 1) * x_im;
}

complex estimate_measure_expectation(const SampleBatch &batch, const std::vector<double> &z) {
    return estimate_measure_expectation(batch, to_complex(z));
}

complex exact_measure_expectation(const OutcomeDistribution &dist, const std::vector<complex> &z) {
    require_weights(dist.num_measurement_outcomes(), z.size());
    complex total = 0;
    for (size_t m = 0; m < z.size(); m++) {
        for (size_t c = 0; c < kControlOutcomes; c++) {
            total += dist(m, c) * tilde_variable(z[m], c);
        }
    }
    return total;
}

complex exact_measure_expectation(const OutcomeDistribution &dist, const std::vector<double> &z) {
    return exact_measure_expectation(dist, to_complex(z));
}

double estimate_normalization(const SampleBatch &batch) {
    size_t n = batch.num_measurement_outcomes();
    double diff = 0;
    for (size_t m = 0; m < n; m++) {
        diff += (double)batch.count(m, 0) - (double)batch.count(m, 1);
    }
    double scale = batch.mode == SamplingMode::kSplit ? 1.0 : 2.0;
    return batch.k_real() ? scale * diff / (double)batch.k_real() : 0.0;
}

double epsilon_nu(double x_max, uint64_t k, double delta) {
    return 2 * x_max * log_term(k, delta);
}

double epsilon_mu(uint64_t k, double delta) {
    return 2 * log_term(k, delta);
}

std::optional<double> epsilon_total(double x_max, double w_magnitude, double mu_hat, double eps_mu) {
    double ratio = mu_hat / eps_mu;
    if (!(ratio > 1)) {
        return std::nullopt;
    }
    return std::sqrt(2.0) * (x_max + w_magnitude) / (ratio - 1);
}

SamplePlan plan_samples(double epsilon, double delta, double x_max, double w_magnitude, double overlap) {
    if (!(epsilon > 0) || !(x_max > 0) || !(w_magnitude >= 0) || !(overlap > 0 && overlap <= 1)) {
        throw InvalidArgument("plan_samples: need epsilon > 0, x_max > 0, |W| >= 0 and 0 < overlap <= 1");
    }
    require_delta(delta);
    double spread = x_max + w_magnitude;
    double lambda = std::sqrt(2.0) * spread / epsilon;
    double exact = 4 * std::log(2.0 / (delta / 3)) / (overlap * overlap) * (lambda + 1) * (lambda + 1);
    double leading = 8 * std::log(6.0 / delta) / (epsilon * epsilon) * (spread / overlap) * (spread / overlap);
    return {(uint64_t)std::ceil(exact), exact, leading};
}

EstimateReport make_report(const SampleBatch &batch, complex numerator, double mu_hat, double x_max, double delta) {
    EstimateReport r;
    r.numerator = numerator;
    r.mu_hat = mu_hat;
    r.estimate = mu_hat != 0 ? numerator / mu_hat : complex(NAN, NAN);
    r.k = batch.k;
    r.delta = delta;
    r.x_max = x_max;
    double f = mode_factor(batch.mode);
    r.epsilon_nu = f * epsilon_nu(x_max, batch.k, delta);
    r.epsilon_mu = f * epsilon_mu(batch.k, delta);
    r.epsilon_total = epsilon_total(x_max, std::abs(r.estimate), std::abs(mu_hat), r.epsilon_mu);
    r.seed = batch.seed;
    r.mode = batch.mode;
    return r;
}

EstimateReport estimate_weak_value(
    const UnbiasedObservable &obs, const DensityMatrix &rho_in, const DensityMatrix &rho_fin, uint64_t k,
    double delta, uint64_t seed, const EstimateOptions &options) {
    require_k(k);
    require_delta(delta);
    OutcomeDistribution dist = dist_fig1a(obs.povm(), rho_in, rho_fin);
    SampleBatch batch = sample(dist, k, seed, options.mode, options.workers);
    EstimateReport r = make_report(
        batch, estimate_measure_expectation(batch, obs.values()), estimate_normalization(batch), obs.x_max(), delta);
    require_overlap(r, false);
    return r;
}

EstimateReport estimate_double_weak_value(
    const UnbiasedObservable &obs_a, const UnbiasedObservable &obs_b, const DensityMatrix &rho_in,
    const DensityMatrix &rho_fin, uint64_t k, double delta, uint64_t seed, const EstimateOptions &options) {
    require_k(k);
    require_delta(delta);
    OutcomeDistribution dist = dist_fig1b(obs_a.povm(), obs_b.povm(), rho_in, rho_fin);
    SampleBatch batch = sample(dist, k, seed, options.mode, options.workers);
    std::vector<double> z = product_values(obs_a, obs_b);
    EstimateReport r =
        make_report(batch, estimate_measure_expectation(batch, z), estimate_normalization(batch), max_abs(z), delta);
    require_overlap(r, false);
    return r;
}

EstimateReport estimate_swap_functional(
    const UnbiasedObservable &joint_obs, const DensityMatrix &rho_joint, uint64_t k, double delta, uint64_t seed,
    const EstimateOptions &options) {
    require_k(k);
    require_delta(delta);
    OutcomeDistribution dist = dist_fig1d(joint_obs.povm(), rho_joint);
    SampleBatch batch = sample(dist, k, seed, options.mode, options.workers);
    EstimateReport r = make_report(
        batch, estimate_measure_expectation(batch, joint_obs.values()), estimate_normalization(batch),
        joint_obs.x_max(), delta);
    require_overlap(r, true);
    return r;
}

namespace {

complex exact_ratio(const OutcomeDistribution &dist, const std::vector<double> &z) {
    complex num = exact_measure_expectation(dist, z);
    double mu = exact_measure_expectation(dist, std::vector<double>(z.size(), 1.0)).real();
    if (std::abs(mu) <= 1e-12) {
        throw OrthogonalPrePostSelection("measure normalization vanishes: the ratio is undefined");
    }
    return num / mu;
}

}  // namespace

complex exact_estimate_weak_value(
    const UnbiasedObservable &obs, const DensityMatrix &rho_in, const DensityMatrix &rho_fin) {
    return exact_ratio(dist_fig1a(obs.povm(), rho_in, rho_fin), obs.values());
}

complex exact_estimate_double_weak_value(
    const UnbiasedObservable &obs_a, const UnbiasedObservable &obs_b, const DensityMatrix &rho_in,
    const DensityMatrix &rho_fin) {
    return exact_ratio(dist_fig1b(obs_a.povm(), obs_b.povm(), rho_in, rho_fin), product_values(obs_a, obs_b));
}

complex exact_estimate_swap_functional(const UnbiasedObservable &joint_obs, const DensityMatrix &rho_joint) {
    return exact_ratio(dist_fig1d(joint_obs.povm(), rho_joint), joint_obs.values());
}

}  // namespace wvkit
