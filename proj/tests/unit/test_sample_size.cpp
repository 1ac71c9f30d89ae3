#include <doctest.h>

#include <cmath>
#include <random>

#include "aucplan/errors.hpp"
#include "aucplan/sample_size.hpp"
#include "aucplan/variance_kernels.hpp"
#include "published_tables.hpp"

using namespace aucplan;

namespace {

PlanningTarget worked_single(double assurance) {
    PlanningTarget t;
    t.theta = 0.92;
    t.theta0 = 0.80;
    t.assurance = assurance;
    t.groups = {1.6, 1.1};
    return t;
}

DiffPlanningTarget worked_diff(double delta0, double rho, double assurance) {
    DiffPlanningTarget t;
    t.theta1 = 0.80;
    t.theta2 = 0.92;
    t.delta0 = delta0;
    t.assurance = assurance;
    t.r = 1.6;
    t.B1 = 1.2;
    t.B2 = 1.1;
    t.rho = rho;
    return t;
}

void check_alloc(const Allocation& a, long cases, long controls, long total) {
    CHECK(a.n_cases == cases);
    CHECK(a.n_controls == controls);
    CHECK(a.n_total == total);
}

} // namespace

TEST_CASE("one-AUC worked example") {
    const Allocation a = size_single(worked_single(0.8));
    CHECK(a.n_raw == doctest::Approx(92.390296745932361).epsilon(1e-12)); // mpmath
    CHECK(a.n_raw / 2.6 == doctest::Approx(35.5).epsilon(1e-2));
    CHECK(a.n_raw * 1.6 / 2.6 == doctest::Approx(56.9).epsilon(1e-3));
    check_alloc(a, 36, 57, 93);
    check_alloc(size_single(worked_single(0.9)), 48, 77, 125);
}

TEST_CASE("difference worked examples") {
    check_alloc(size_diff(worked_diff(0.02, 0.8, 0.8)), 24, 39, 63);
    check_alloc(size_diff(worked_diff(0.02, 0.8, 0.9)), 33, 52, 85);
    CHECK(size_diff(worked_diff(0.05, 0.8, 0.8)).n_total == 127);
    CHECK(size_diff(worked_diff(0.05, 0.0, 0.8)).n_total == 434);
    const Allocation a = size_diff(worked_diff(0.02, 0.8, 0.8));
    CHECK(a.n_raw / 2.6 == doctest::Approx(23.9).epsilon(2e-3));
    CHECK(a.n_raw * 1.6 / 2.6 == doctest::Approx(38.3).epsilon(2e-3));
}

TEST_CASE("table 1 and table 3 totals") {
    for (const auto& row : tables::kTable1) {
        PlanningTarget t;
        t.theta = row.theta;
        t.theta0 = row.theta0;
        t.groups = {row.r, row.B};
        t.assurance = 0.5;
        CHECK(size_single(t).n_total == row.n50);
        t.assurance = 0.8;
        CHECK(size_single(t).n_total == row.n80);
    }
    for (const auto& row : tables::kTable3) {
        PlanningTarget t;
        t.theta = row.theta;
        t.theta0 = row.theta0;
        t.groups = {row.r, row.B};
        t.kernel = KernelChoice::Obuchowski;
        t.assurance = 0.5;
        CHECK(size_single(t).n_total == row.n50);
        t.assurance = 0.8;
        CHECK(size_single(t).n_total == row.n80);
    }
}

TEST_CASE("table 2 totals with two-decimal correlations") {
    // Exact here, although the acceptance gate only asks for +/-1%.
    for (const auto& row : tables::kTable2) {
        DiffPlanningTarget t;
        t.theta1 = 0.7;
        t.theta2 = 0.9;
        t.delta0 = row.delta0;
        t.r = row.r;
        t.B1 = t.B2 = row.B;
        t.rho = tables::auc_rho(row.rating_rho, row.B);
        t.assurance = 0.5;
        CHECK(size_diff(t).n_total == row.n50);
        t.assurance = 0.8;
        CHECK(size_diff(t).n_total == row.n80);
    }
}

TEST_CASE("obuchowski sizes dominate proposed sizes on the published grid") {
    for (const auto& row : tables::kTable1) {
        for (double assurance : {0.5, 0.8}) {
            PlanningTarget t;
            t.theta = row.theta;
            t.theta0 = row.theta0;
            t.groups = {row.r, row.B};
            t.assurance = assurance;
            const long proposed = size_single(t).n_total;
            t.kernel = KernelChoice::Obuchowski;
            CHECK(size_single(t).n_total >= proposed);
        }
    }
}

TEST_CASE("assurance inversion") {
    const double at50 = assurance_for_n(50.0, worked_single(0.8));
    CHECK(at50 == doctest::Approx(0.54023466986007804).epsilon(1e-10)); // mpmath
    CHECK(assurance_for_n(1e9, worked_single(0.8)) > 0.999999);
    CHECK(assurance_for_n(1e12, worked_single(0.8)) < 1.0);
    CHECK(assurance_for_n(1e-6, worked_single(0.8)) > 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        PlanningTarget t;
        t.theta = 0.6 + 0.38 * u(rng);
        t.theta0 = t.theta - (0.01 + 0.2 * u(rng)) * (t.theta - 0.05);
        t.assurance = 0.3 + 0.65 * u(rng);
        t.groups = {0.25 + 4 * u(rng), 0.25 + 4 * u(rng)};
        t.kernel = u(rng) < 0.5 ? KernelChoice::Proposed : KernelChoice::Obuchowski;
        const Allocation a = size_single(t);
        CHECK(std::abs(assurance_for_n(a.n_raw, t) - t.assurance) <= 1e-9);
    }
    for (double delta0 : {0.02, 0.05, -0.1}) {
        const DiffPlanningTarget t = worked_diff(delta0, 0.5, 0.85);
        CHECK(std::abs(assurance_for_n(size_diff(t).n_raw, t) - 0.85) <= 1e-9);
    }
}

TEST_CASE("50% assurance means z_beta = 0") {
    PlanningTarget t = worked_single(0.5);
    const double gap = std::log(0.92 / 0.08) - std::log(0.8 / 0.2);
    const double term = proposed_kernel(0.92, {1.6, 1.1}) / std::pow(0.92 * 0.08, 2) * M_PI / 3.0;
    const double z = 1.959963984540054;
    CHECK(size_single(t).n_raw == doctest::Approx(z * z / (gap * gap) * term).epsilon(1e-12));
}

TEST_CASE("(r, B) and (1/r, 1/B) give the same total") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        PlanningTarget t;
        t.theta = 0.6 + 0.38 * u(rng);
        t.theta0 = t.theta - 0.02 - 0.1 * u(rng);
        t.assurance = 0.5 + 0.45 * u(rng);
        const double r = 0.2 + 5 * u(rng);
        const double B = 0.2 + 5 * u(rng);
        t.groups = {r, B};
        const Allocation a = size_single(t);
        t.groups = {1.0 / r, 1.0 / B};
        const Allocation b = size_single(t);
        CHECK(a.n_raw == doctest::Approx(b.n_raw).epsilon(1e-9));
        CHECK(a.n_total == b.n_total);
        CHECK(a.n_cases == b.n_controls);
        CHECK(a.n_controls == b.n_cases);
    }
}

TEST_CASE("monotonicity of n_raw") {
    PlanningTarget t = worked_single(0.5);
    double prev = 0.0;
    for (double a = 0.5; a < 0.99; a += 0.01) {
        t.assurance = a;
        const double n = size_single(t).n_raw;
        CHECK(n > prev);
        prev = n;
    }
    // wider gap (lower theta0) at fixed kernel term -> fewer participants
    t.assurance = 0.8;
    prev = 1e300;
    for (double th0 = 0.91; th0 > 0.5; th0 -= 0.01) {
        t.theta0 = th0;
        const double n = size_single(t).n_raw;
        CHECK(n < prev);
        prev = n;
    }
    DiffPlanningTarget d = worked_diff(0.02, -1.0, 0.8);
    prev = 1e300;
    for (double rho = -1.0; rho <= 0.95; rho += 0.05) {
        d.rho = rho;
        const double n = size_diff(d).n_raw;
        CHECK(n < prev);
        prev = n;
    }
}

TEST_CASE("allocation rounding") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> n(4.0, 5000.0), ratio(0.1, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const double raw = n(rng);
        const double r = ratio(rng);
        const Allocation a = allocate(raw, r);
        CHECK(a.n_cases == static_cast<long>(std::ceil(raw / (r + 1))));
        CHECK(a.n_controls == static_cast<long>(std::ceil(raw * r / (r + 1))));
        CHECK(a.n_total == a.n_cases + a.n_controls);
        CHECK(static_cast<double>(a.n_total) >= raw);
        CHECK(static_cast<double>(a.n_controls) >= r * (a.n_cases - 1));
        CHECK(static_cast<double>(a.n_controls) <= r * a.n_cases + 1);
    }
    const Allocation s = split_total(412, 1.0);
    CHECK(s.n_cases == 206);
    CHECK(s.n_controls == 206);
    const Allocation s2 = split_total(50, 1.6);
    CHECK(s2.n_cases == 19);
    CHECK(s2.n_controls == 31);
}

TEST_CASE("prevalence to ratio") {
    CHECK(ratio_from_prevalence(0.5) == 1.0);
    CHECK(ratio_from_prevalence(0.2) == doctest::Approx(4.0).epsilon(1e-15));
    const double r = ratio_from_prevalence(0.38);
    CHECK(1.0 / (1.0 + r) == doctest::Approx(0.38).epsilon(1e-15));
    CHECK(r * 0.38 == doctest::Approx(0.62).epsilon(1e-15));
    CHECK_THROWS_AS(ratio_from_prevalence(0.0), ValidationError);
    CHECK_THROWS_AS(ratio_from_prevalence(1.0), ValidationError);
}

TEST_CASE("negative delta0 is accepted when theta0* stays inside (0, 1)") {
    const Allocation a = size_diff(worked_diff(-0.05, 0.8, 0.8));
    const Allocation b = size_diff(worked_diff(0.02, 0.8, 0.8));
    CHECK(a.n_total < b.n_total);
}

TEST_CASE("validation messages") {
    PlanningTarget t = worked_single(0.8);
    t.theta0 = 0.95;
    CHECK_THROWS_WITH_AS(size_single(t), "theta0 must be below theta", ValidationError);
    t.theta0 = 0.92;
    CHECK_THROWS_AS(size_single(t), ValidationError);
    t = worked_single(1.0);
    CHECK_THROWS_AS(size_single(t), ValidationError);
    t = worked_single(0.8);
    t.alpha = 0.0;
    CHECK_THROWS_AS(size_single(t), ValidationError);
    t = worked_single(0.8);
    t.groups.B = 0.0;
    CHECK_THROWS_AS(size_single(t), ValidationError);
    t.kernel = KernelChoice::Obuchowski; // B not used
    CHECK_NOTHROW(size_single(t));

    CHECK_THROWS_WITH_AS(size_diff(worked_diff(0.12, 0.8, 0.8)), "delta0 must be below theta2 - theta1",
                         ValidationError);
    CHECK_THROWS_AS(size_diff(worked_diff(-1.0, 0.8, 0.8)), ValidationError);
    CHECK_THROWS_AS(size_diff(worked_diff(0.02, 1.2, 0.8)), ValidationError);
    DiffPlanningTarget d = worked_diff(0.02, 0.8, 0.8);
    d.theta1 = 0.05;
    d.theta2 = 0.999;
    d.delta0 = 0.5;
    CHECK_NOTHROW(size_diff(d));
    CHECK_THROWS_AS(assurance_for_n(0.0, worked_single(0.8)), ValidationError);
    CHECK_THROWS_AS(assurance_for_n(-3.0, worked_single(0.8)), ValidationError);
}
