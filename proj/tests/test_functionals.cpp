#include <cmath>

#include "abjm/functionals.hpp"
#include "doctest.h"

using namespace abjm;

namespace {

VortexParams unit_params() { return VortexParams{}; }

RadialProfile on_line(double alpha, double L = 0.0, double r_max = 1e6) {
    ShooterControls c;
    c.r_max = r_max;
    return integrate(unit_params(), InitialData::from_line(alpha, L, 1, 1), c);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("tail terms") {
    const auto t = tail_terms(10.0, -5.0, -6.0, 2.0, 1.5);
    CHECK(t.eu == doctest::Approx(100.0 * std::exp(-5.0) / 2.0));
    CHECK(t.ev == doctest::Approx(100.0 * std::exp(-6.0) / 1.0));
    CHECK(t.euv == doctest::Approx(100.0 * std::exp(-11.0) / 5.0));
    CHECK(std::isinf(tail_terms(10.0, -5.0, -6.0, 2.0, 1.0).ev));
    CHECK(std::isinf(tail_terms(10.0, -5.0, -6.0, 0.5, 1.5).eu));
}

TEST_CASE("divergent profiles are non-integrable") {
    const auto prof = on_line(-15.0);
    REQUIRE(prof.termination == Termination::divergent_v);
    const auto e = tail_extrapolate(prof);
    CHECK(e.decided == Verdict::non_integrable);
    CHECK(std::isinf(e.f1_inf));
    CHECK(e.f2_inf < 2.0);
    CHECK_FALSE(e.diagnostic.empty());
}

TEST_CASE("integrable profiles: decay exponents from slope fits") {
    for (double alpha : {3.0, 4.0, 6.0, 8.0}) {
        const auto prof = on_line(alpha);
        const auto e = tail_extrapolate(prof);
        REQUIRE(e.decided == Verdict::integrable);
        const auto fu = fit_log_slope(prof, ProfileField::u);
        const auto fv = fit_log_slope(prof, ProfileField::v);
        CHECK(fu.points >= kMinFitPoints);
        CHECK(std::abs(fu.slope + 2.0 * e.beta1) / (2.0 * e.beta1) < 0.02);
        CHECK(std::abs(fv.slope + 2.0 * e.beta2) / (2.0 * e.beta2) < 0.02);
        // flux ordering and exponent ranges
        CHECK(e.f2_inf > 4.0);
        CHECK(e.f2_inf < 6.0);
        CHECK(e.f1_inf > 6.0);
        CHECK(e.beta1 > 2.0);
        CHECK(e.beta2 > 1.0);
        CHECK(e.beta2 < 2.0);
    }
}

TEST_CASE("accumulated integrals match their closed forms") {
    for (double alpha : {3.0, 5.0, 9.0}) {
        const auto e = tail_extrapolate(on_line(alpha, 2.0));
        REQUIRE(e.decided == Verdict::integrable);
        const auto li = limit_integrals(e, 1, 1);
        CHECK(li.int_euv > 0.0);
        CHECK(li.int_eu > 0.0);
        CHECK(li.int_ev > 0.0);
        CHECK(rel(e.int_euv, li.int_euv) < 1e-3);
        CHECK(rel(e.int_eu, li.int_eu) < 1e-3);
        CHECK(rel(e.int_ev, li.int_ev) < 1e-3);
    }
}

TEST_CASE("doubling the terminal radius stays within the uncertainty") {
    for (double alpha : {3.0, 6.0}) {
        const auto a = tail_extrapolate(on_line(alpha, 0.0, 1e4));
        const auto b = tail_extrapolate(on_line(alpha, 0.0, 2e4));
        CHECK(std::abs(a.f1_inf - b.f1_inf) <= a.uncertainty.f1);
        CHECK(std::abs(a.f2_inf - b.f2_inf) <= a.uncertainty.f2);
        CHECK(std::abs(a.int_ev - b.int_ev) <= a.uncertainty.int_ev);
    }
}

TEST_CASE("tail correction beats truncation") {
    // a short run with a large tail: the corrected limit is far closer to the long run
    const auto short_run = on_line(4.0, 0.0, 50.0);
    const auto reference = tail_extrapolate(on_line(4.0));
    const auto e = tail_extrapolate(short_run);
    const double raw_error = std::abs(short_run.F1.back() - reference.f1_inf);
    CHECK(std::abs(e.f1_inf - reference.f1_inf) < 0.05 * raw_error);
}

TEST_CASE("a wide band leaves the verdict open") {
    const auto prof = on_line(4.0);
    const auto e = tail_extrapolate(prof, 1.0);
    CHECK(e.decided == Verdict::inconclusive);
    CHECK_THROWS_AS(tail_extrapolate(prof, -1.0), InvalidArgument);
}

TEST_CASE("perturbative regime drives the side integrals to zero") {
    TailEstimate e;
    e.beta1 = 2.0 + 1e-6;
    e.beta2 = 2.0 - 1e-6;
    const auto li = limit_integrals(e, 1, 1);
    CHECK(std::abs(li.int_eu) < 1e-5);
    CHECK(std::abs(li.int_ev) < 1e-5);
    CHECK(li.int_euv == doctest::Approx(6.0).epsilon(1e-5));
}
