#include "aucplan/simulation.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <omp.h>

#include "aucplan/auc_inference.hpp"
#include "aucplan/errors.hpp"
#include "aucplan/normal_math.hpp"

namespace aucplan {

double BinormalModel::auc() const {
    return std_normal_cdf((mu_case - mu_control) /
                          std::sqrt(sigma_case * sigma_case + sigma_control * sigma_control));
}

BinormalModel binormal_params(double theta, double B) {
    detail::require_open_unit(theta, "theta");
    detail::require_positive(B, "B");
    BinormalModel m;
    m.mu_control = -std_normal_quantile(theta) * std::sqrt(1.0 + B * B);
    m.sigma_control = B;
    return m;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

void require_sizes(long n_cases, long n_controls, long runs) {
    if (n_cases < 2 || n_controls < 2) {
        throw ValidationError("simulation needs at least 2 cases and 2 controls");
    }
    if (runs < 1) {
        throw ValidationError("runs must be at least 1");
    }
}

void require_correlation(double rho, const char* name) {
    detail::require_finite(rho, name);
    if (rho < -1.0 || rho > 1.0) {
        throw ValidationError(std::string(name) + " must lie in [-1, 1]");
    }
}

int thread_count(int requested) {
    return requested > 0 ? requested : omp_get_max_threads();
}

struct RunOutcome {
    bool assured = false;
    bool covered = false;
    bool degenerate = false;
};

class RunStream {
public:
    RunStream(std::uint64_t seed, std::uint64_t index) : engine_(stream_seed(seed, index)) {}

    double normal() { return dist_(engine_); }

    // (z1, rho z1 + sqrt(1 - rho^2) z2)
    std::array<double, 2> correlated_pair(double rho, double rho_c) {
        const double z1 = normal();
        const double z2 = normal();
        return {z1, rho * z1 + rho_c * z2};
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> dist_;
};

struct SingleRun {
    const SingleSimConfig& cfg;
    BinormalModel model;
    double level;

    RunOutcome operator()(long run) const {
        RunStream rng(cfg.seed, static_cast<std::uint64_t>(run));
        RatingSample s;
        s.cases.resize(static_cast<std::size_t>(cfg.n_cases));
        s.controls.resize(static_cast<std::size_t>(cfg.n_controls));
        for (auto& y : s.cases) y = model.mu_case + model.sigma_case * rng.normal();
        for (auto& x : s.controls) x = model.mu_control + model.sigma_control * rng.normal();
        const ConfidenceInterval ci = ci_single_logit(delong_single(s), level);
        return {ci.lower >= cfg.theta0, ci.contains(cfg.theta), ci.degenerate};
    }
};

struct PairedDraw {
    BinormalModel test1;
    BinormalModel test2;
    double rho;
    double rho_c;

    PairedRatingSample operator()(RunStream& rng, long n_cases, long n_controls) const {
        PairedRatingSample s;
        s.cases.resize(static_cast<std::size_t>(n_cases));
        s.controls.resize(static_cast<std::size_t>(n_controls));
        for (auto& y : s.cases) {
            const auto z = rng.correlated_pair(rho, rho_c);
            y = {test1.mu_case + test1.sigma_case * z[0], test2.mu_case + test2.sigma_case * z[1]};
        }
        for (auto& x : s.controls) {
            const auto z = rng.correlated_pair(rho, rho_c);
            x = {test1.mu_control + test1.sigma_control * z[0],
                 test2.mu_control + test2.sigma_control * z[1]};
        }
        return s;
    }
};

PairedDraw make_paired_draw(double theta1, double B1, double theta2, double B2, double rho) {
    return {binormal_params(theta1, B1), binormal_params(theta2, B2), rho, std::sqrt(1.0 - rho * rho)};
}

struct DiffRun {
    const DiffSimConfig& cfg;
    PairedDraw draw;
    double level;

    RunOutcome operator()(long run) const {
        RunStream rng(cfg.seed, static_cast<std::uint64_t>(run));
        const PairedRatingSample s = draw(rng, cfg.n_cases, cfg.n_controls);
        const ConfidenceInterval ci = ci_diff_logit(delong_paired(s), level);
        return {ci.lower >= cfg.delta0, ci.contains(cfg.theta2 - cfg.theta1), ci.degenerate};
    }
};

struct CorrelationRep {
    const CorrelationConversion& cfg;
    PairedDraw draw;

    double operator()(long rep) const {
        RunStream rng(cfg.seed, static_cast<std::uint64_t>(rep));
        const long n_cases = cfg.n_per / 2;
        const PairedRatingSample s = draw(rng, n_cases, cfg.n_per - n_cases);
        return delong_paired(s).correlation();
    }
};

template <typename Run>
SimResult simulate_parallel(const Run& one, long runs, std::uint64_t seed, int threads) {
    long assured = 0, covered = 0, degenerate = 0;
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count(threads)) \
    reduction(+ : assured, covered, degenerate)
    for (long run = 0; run < runs; ++run) {
        const RunOutcome o = one(run);
        assured += o.assured;
        covered += o.covered;
        degenerate += o.degenerate;
    }
    return {static_cast<double>(assured) / static_cast<double>(runs),
            static_cast<double>(covered) / static_cast<double>(runs),
            runs, assured, covered, degenerate, seed};
}

template <typename Run>
SimResult simulate_serial(const Run& one, long runs, std::uint64_t seed) {
    long assured = 0, covered = 0, degenerate = 0;
    for (long run = 0; run < runs; ++run) {
        const RunOutcome o = one(run);
        assured += o.assured;
        covered += o.covered;
        degenerate += o.degenerate;
    }
    return {static_cast<double>(assured) / static_cast<double>(runs),
            static_cast<double>(covered) / static_cast<double>(runs),
            runs, assured, covered, degenerate, seed};
}

// Ordered sum so the result does not depend on how reps were scheduled.
double mean_of_defined(const std::vector<double>& values) {
    double sum = 0.0;
    long used = 0;
    for (double v : values) {
        if (std::isnan(v)) continue;
        sum += v;
        ++used;
    }
    if (used == 0) {
        throw ValidationError("no replicate produced a defined AUC correlation");
    }
    return sum / static_cast<double>(used);
}

double level_for(double alpha) { return 1.0 - alpha; }

} // namespace

void SingleSimConfig::validate() const {
    detail::require_open_unit(theta, "theta");
    detail::require_open_unit(theta0, "theta0");
    detail::require_open_unit(alpha, "alpha");
    detail::require_positive(B, "B");
    require_sizes(n_cases, n_controls, runs);
}

void DiffSimConfig::validate() const {
    detail::require_open_unit(theta1, "theta1");
    detail::require_open_unit(theta2, "theta2");
    detail::require_finite(delta0, "delta0");
    detail::require_open_unit(alpha, "alpha");
    detail::require_positive(B1, "B1");
    detail::require_positive(B2, "B2");
    if (!rating_rho) {
        throw ValidationError("rating_rho is required for two-test simulation");
    }
    require_correlation(*rating_rho, "rating_rho");
    require_sizes(n_cases, n_controls, runs);
}

void CorrelationConversion::validate() const {
    detail::require_open_unit(theta1, "theta1");
    detail::require_open_unit(theta2, "theta2");
    detail::require_positive(B, "B");
    require_correlation(rating_rho, "rating_rho");
    if (reps < 2) throw ValidationError("reps must be at least 2");
    if (n_per < 4) throw ValidationError("n_per must be at least 4");
}

SingleSimConfig make_sim_config(const PlanningTarget& t, const Allocation& a,
                                long runs, std::uint64_t seed) {
    t.validate();
    SingleSimConfig c;
    c.theta = t.theta;
    c.theta0 = t.theta0;
    c.alpha = t.alpha;
    c.B = t.groups.B;
    c.n_cases = a.n_cases;
    c.n_controls = a.n_controls;
    c.runs = runs;
    c.seed = seed;
    return c;
}

DiffSimConfig make_sim_config(const DiffPlanningTarget& t, const Allocation& a,
                              double rating_rho, long runs, std::uint64_t seed) {
    t.validate();
    DiffSimConfig c;
    c.theta1 = t.theta1;
    c.theta2 = t.theta2;
    c.delta0 = t.delta0;
    c.alpha = t.alpha;
    c.B1 = t.B1;
    c.B2 = t.B2;
    c.rating_rho = rating_rho;
    c.n_cases = a.n_cases;
    c.n_controls = a.n_controls;
    c.runs = runs;
    c.seed = seed;
    return c;
}

SimResult simulate_single(const SingleSimConfig& c) {
    c.validate();
    const SingleRun one{c, binormal_params(c.theta, c.B), level_for(c.alpha)};
    return simulate_parallel(one, c.runs, c.seed, c.threads);
}

SimResult simulate_diff(const DiffSimConfig& c) {
    c.validate();
    const DiffRun one{c, make_paired_draw(c.theta1, c.B1, c.theta2, c.B2, *c.rating_rho), level_for(c.alpha)};
    return simulate_parallel(one, c.runs, c.seed, c.threads);
}

double rating_to_auc_correlation(const CorrelationConversion& c) {
    c.validate();
    const CorrelationRep one{c, make_paired_draw(c.theta1, c.B, c.theta2, c.B, c.rating_rho)};
    std::vector<double> values(static_cast<std::size_t>(c.reps));
#pragma omp parallel for schedule(dynamic, 4) num_threads(thread_count(c.threads))
    for (long rep = 0; rep < c.reps; ++rep) {
        values[static_cast<std::size_t>(rep)] = one(rep);
    }
    return mean_of_defined(values);
}

namespace reference {

SimResult simulate_single_serial(const SingleSimConfig& c) {
    c.validate();
    const SingleRun one{c, binormal_params(c.theta, c.B), level_for(c.alpha)};
    return simulate_serial(one, c.runs, c.seed);
}

SimResult simulate_diff_serial(const DiffSimConfig& c) {
    c.validate();
    const DiffRun one{c, make_paired_draw(c.theta1, c.B1, c.theta2, c.B2, *c.rating_rho), level_for(c.alpha)};
    return simulate_serial(one, c.runs, c.seed);
}

double rating_to_auc_correlation_serial(const CorrelationConversion& c) {
    c.validate();
    const CorrelationRep one{c, make_paired_draw(c.theta1, c.B, c.theta2, c.B, c.rating_rho)};
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(c.reps));
    for (long rep = 0; rep < c.reps; ++rep) values.push_back(one(rep));
    return mean_of_defined(values);
}

} // namespace reference

} // namespace aucplan
