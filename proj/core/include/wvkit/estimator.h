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

#ifndef WVKIT_ESTIMATOR_H
#define WVKIT_ESTIMATOR_H

// Monte Carlo estimation of weak values from controlled-SWAP outcome samples,
// with Hoeffding error radii and the sample-size planner.

#include <cstdint>
#include <optional>
#include <vector>

#include "wvkit/protocol.h"
#include "wvkit/sampling.h"

namespace wvkit {

/// ztilde(j, c) = 2 z_j (-1)^c [theta(1-c) - i theta(c-2)]. Its mean under p(j, c)
/// is sum_j z_j q_j for the circuit's induced measure q.
complex tilde_variable(complex z, size_t c);

/// Empirical estimate of sum_m z_m q_m. Random4 mode averages ztilde over all runs;
/// split mode forms X_Re + i X_Im from the two sub-batches, with X_Re the mean of
/// (-1)^cbar z_m over the real-basis runs and X_Im the mean of -(-1)^cbar z_m over
/// the imaginary-basis runs.
complex estimate_measure_expectation(const SampleBatch &batch, const std::vector<complex> &z);
complex estimate_measure_expectation(const SampleBatch &batch, const std::vector<double> &z);

/// sum_{m,c} p(m, c) ztilde(z_m, c), i.e. the infinite-sample limit of the estimator.
complex exact_measure_expectation(const OutcomeDistribution &dist, const std::vector<complex> &z);
complex exact_measure_expectation(const OutcomeDistribution &dist, const std::vector<double> &z);

/// Estimate of the measure normalization mu = sum_m q_m from the real-basis runs.
double estimate_normalization(const SampleBatch &batch);

/// 2 x_max sqrt(ln(2/delta) / K).
double epsilon_nu(double x_max, uint64_t k, double delta);
/// 2 sqrt(ln(2/delta) / K).
double epsilon_mu(uint64_t k, double delta);
/// sqrt(2) (x_max + |W|) / (mu_hat / epsilon_mu - 1), or nullopt when mu_hat <= epsilon_mu.
std::optional<double> epsilon_total(double x_max, double w_magnitude, double mu_hat, double eps_mu);

struct SamplePlan {
    /// Exact finite form rounded up.
    uint64_t k;
    /// (4 ln(2/delta') / mu^2) (Lambda + 1)^2 with delta' = delta/3, Lambda = sqrt(2)(x_max + |W|)/epsilon.
    double exact;
    /// (8 ln(6/delta) / epsilon^2) ((x_max + |W|) / mu)^2.
    double leading;
};

/// Runs needed so the weak-value estimate is within `epsilon` with probability 1 - delta.
SamplePlan plan_samples(double epsilon, double delta, double x_max, double w_magnitude, double overlap);

struct EstimateReport {
    complex estimate;
    complex numerator;
    double mu_hat;
    uint64_t k;
    double delta;
    double x_max;
    double epsilon_nu;
    double epsilon_mu;
    /// Absent when mu_hat / epsilon_mu <= 1.
    std::optional<double> epsilon_total;
    uint64_t seed;
    SamplingMode mode;
};

/// Builds the report for a numerator/normalization pair measured on `batch`.
EstimateReport make_report(const SampleBatch &batch, complex numerator, double mu_hat, double x_max, double delta);

struct EstimateOptions {
    SamplingMode mode = SamplingMode::kSplit;
    unsigned workers = 0;
};

/// W(A | rho_in, rho_fin) from K runs of the single-measurement circuit.
/// Throws OverlapTooSmall when mu_hat <= epsilon_mu.
EstimateReport estimate_weak_value(
    const UnbiasedObservable &obs, const DensityMatrix &rho_in, const DensityMatrix &rho_fin, uint64_t k,
    double delta, uint64_t seed, const EstimateOptions &options = {});

/// W_2(A, B | rho_in, rho_fin) from the two-measurement circuit with z_{j,k} = x_j y_k;
/// the radii use x_max = max |x_j y_k|.
EstimateReport estimate_double_weak_value(
    const UnbiasedObservable &obs_a, const UnbiasedObservable &obs_b, const DensityMatrix &rho_in,
    const DensityMatrix &rho_fin, uint64_t k, double delta, uint64_t seed, const EstimateOptions &options = {});

/// Tr[O rho SWAP] / Tr[rho SWAP] from the joint-measurement circuit. The numerator
/// field holds the Tr[O rho SWAP] estimate. Throws OverlapTooSmall when
/// |mu_hat| <= epsilon_mu.
EstimateReport estimate_swap_functional(
    const UnbiasedObservable &joint_obs, const DensityMatrix &rho_joint, uint64_t k, double delta, uint64_t seed,
    const EstimateOptions &options = {});

/// Infinite-sample versions of the three estimators, computed from the outcome
/// distribution rather than from the trace formulas.
complex exact_estimate_weak_value(
    const UnbiasedObservable &obs, const DensityMatrix &rho_in, const DensityMatrix &rho_fin);
complex exact_estimate_double_weak_value(
    const UnbiasedObservable &obs_a, const UnbiasedObservable &obs_b, const DensityMatrix &rho_in,
    const DensityMatrix &rho_fin);
complex exact_estimate_swap_functional(const UnbiasedObservable &joint_obs, const DensityMatrix &rho_joint);

}  // namespace wvkit

#endif
