#pragma once

#include <cstdint>
#include <optional>

#include "aucplan/sample_size.hpp"

// Monte-Carlo evaluation of planned allocations under the binormal model.
//
// Every run draws from its own generator seeded from (seed, run index), so
// results do not depend on the number of threads or on scheduling. The
// OpenMP drivers in this header and the serial drivers in `reference` must
// return identical results; the serial ones are kept for tests and the
// benchmark.

namespace aucplan {

/// Cases ~ N(0, 1), controls ~ N(mu_control, sigma_control^2).
struct BinormalModel {
    double mu_case = 0.0;
    double sigma_case = 1.0;
    double mu_control = 0.0;
    double sigma_control = 1.0;

    /// Phi((mu_case - mu_control) / sqrt(sigma_case^2 + sigma_control^2)).
    double auc() const;
};

/// Model with AUC theta and SD ratio B: mu_control = -Phi^-1(theta) sqrt(1 + B^2).
BinormalModel binormal_params(double theta, double B);

struct SingleSimConfig {
    double theta = 0.9;  ///< true AUC used to generate data
    double theta0 = 0.85;
    double alpha = 0.05;
    double B = 1.0;
    long n_cases = 0;
    long n_controls = 0;
    long runs = 10000;
    std::uint64_t seed = 1;
    int threads = 0; ///< 0: OpenMP default

    void validate() const;
};

struct DiffSimConfig {
    double theta1 = 0.7;
    double theta2 = 0.9;
    double delta0 = 0.1;
    double alpha = 0.05;
    double B1 = 1.0;
    double B2 = 1.0;
    std::optional<double> rating_rho; ///< correlation of the two tests' ratings, required
    long n_cases = 0;
    long n_controls = 0;
    long runs = 10000;
    std::uint64_t seed = 1;
    int threads = 0;

    void validate() const;
};

SingleSimConfig make_sim_config(const PlanningTarget& t, const Allocation& a,
                                long runs, std::uint64_t seed);
DiffSimConfig make_sim_config(const DiffPlanningTarget& t, const Allocation& a,
                              double rating_rho, long runs, std::uint64_t seed);

struct SimResult {
    double eap = 0.0;          ///< fraction of runs with lower limit >= bound
    double ecp = 0.0;          ///< fraction of intervals covering the truth
    long runs = 0;
    long assured = 0;
    long covered = 0;
    long degenerate_count = 0; ///< collapsed intervals, included in eap/ecp
    std::uint64_t seed = 0;

    bool operator==(const SimResult&) const = default;
};

SimResult simulate_single(const SingleSimConfig& c);
SimResult simulate_diff(const DiffSimConfig& c);

struct CorrelationConversion {
    double theta1 = 0.7;
    double theta2 = 0.9;
    double B = 1.0;
    double rating_rho = 0.5;
    long reps = 5000;
    long n_per = 5000; ///< participants per dataset, split equally
    std::uint64_t seed = 1;
    int threads = 0;

    void validate() const;
};

/// Mean over `reps` datasets of the DeLong-implied correlation between the
/// two estimated AUCs.
double rating_to_auc_correlation(const CorrelationConversion& c);

/// Per-run stream seed (splitmix64 of seed and index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

namespace reference {

SimResult simulate_single_serial(const SingleSimConfig& c);
SimResult simulate_diff_serial(const DiffSimConfig& c);
double rating_to_auc_correlation_serial(const CorrelationConversion& c);

} // namespace reference

} // namespace aucplan
