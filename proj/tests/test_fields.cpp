#include <cmath>
#include <numbers>

#include "abjm/fields.hpp"
#include "doctest.h"

using namespace abjm;

namespace {

struct Run {
    VortexParams params;
    RadialProfile profile;
    TailEstimate estimate;
};

Run run(double alpha, double L, int n1, int n2, double sigma = 0.7, double k = 2.0, int n_mat = 3) {
    Run r;
    r.params.n1 = n1;
    r.params.n2 = n2;
    r.params.sigma = sigma;
    r.params.k = k;
    r.params.n_mat = n_mat;
    r.profile = integrate(r.params, InitialData::from_line(alpha, L, n1, n2));
    r.estimate = tail_extrapolate(r.profile);
    return r;
}

}  // namespace

TEST_CASE("pointwise fields") {
    const auto r = run(5.0, 0.0, 1, 2);
    const auto f = reconstruct(r.profile, r.params);
    REQUIRE(f.size() == r.profile.size());
    const double lambda = 4.0 * 0.49;
    // the scalars vanish at the vortex point to the orders n1, n2
    const double amp = 0.7 * 2.0 / (2.0 * std::numbers::pi);
    const double r0 = r.profile.r[0];
    CHECK(f.front().phi1_sq == doctest::Approx(amp * std::exp(r.profile.init.alpha1) * r0 * r0).epsilon(1e-6));
    CHECK(f.front().phi2_sq == doctest::Approx(amp * std::exp(r.profile.init.alpha2) * std::pow(r0, 4)).epsilon(1e-6));
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i].r_phys == doctest::Approx(r.profile.r[i] / std::sqrt(lambda)));
        CHECK(f[i].phi1_sq >= 0.0);
        CHECK(f[i].phi2_sq >= 0.0);
        CHECK(f[i].f12_1 >= 0.0);
        CHECK(f[i].energy_density >= 0.0);
        const double v = r.profile.v(i);
        if (std::abs(v) > 1e-12) CHECK((f[i].f12_2 > 0.0) == (v > 0.0));
    }
    CHECK(f.back().f12_2 < 0.0);
}

TEST_CASE("field decay rates") {
    for (double alpha : {3.0, 6.0}) {
        const auto r = run(alpha, 0.0, 1, 1);
        REQUIRE(r.estimate.decided == Verdict::integrable);
        const double b1 = r.estimate.beta1, b2 = r.estimate.beta2;
        auto close = [](double slope, double expected) {
            return std::abs(slope - expected) / std::abs(expected) < 0.02;
        };
        // f12_1 carries e^v and f12_2 carries e^u at large r
        CHECK(close(fit_log_slope(r.profile, ProfileField::log_f12_1).slope, -2.0 * b2));
        CHECK(close(fit_log_slope(r.profile, ProfileField::log_abs_f12_2).slope, -2.0 * b1));
        CHECK(close(fit_log_slope(r.profile, ProfileField::log_dphi1).slope, -2.0 * (b1 + 1.0)));
        CHECK(close(fit_log_slope(r.profile, ProfileField::log_dphi2).slope, -2.0 * (b2 + 1.0)));
    }
}

TEST_CASE("totals") {
    for (auto [n1, n2] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 3}}) {
        const auto r = run(6.0, 0.0, n1, n2);
        REQUIRE(r.estimate.decided == Verdict::integrable);
        const auto t = totals(r.estimate, r.params);
        const double m = n1 + n2 + 1;
        CHECK(t.flux1 == doctest::Approx(std::numbers::pi * r.estimate.f1_inf));
        CHECK(t.flux2_over_2pi > n2 + 1.0);
        CHECK(t.flux2_over_2pi < m);
        CHECK(t.flux1_over_2pi > m);
        CHECK(t.flux1_over_2pi - t.flux2_over_2pi > 0.0);
        CHECK(t.energy > 0.0);
        CHECK(t.energy == doctest::Approx(6.0 * std::pow(0.7, 3) * 2.0 * (r.estimate.int_eu + r.estimate.int_ev)));
    }
}

TEST_CASE("flux and energy by field quadrature") {
    for (auto [n1, n2] : {std::pair{1, 1}, std::pair{3, 2}}) {
        for (double alpha : {3.5, 8.0}) {
            const auto r = run(alpha, 1.0, n1, n2);
            REQUIRE(r.estimate.decided == Verdict::integrable);
            const auto q = field_quadrature(r.profile, r.estimate, r.params);
            const auto t = totals(r.estimate, r.params);
            CHECK(std::abs(q.flux1 - t.flux1) / t.flux1 < 1e-6);
            CHECK(std::abs(q.flux2 - t.flux2) / t.flux2 < 1e-6);
            CHECK(std::abs(q.energy - t.conventions.flux_quarter) / t.conventions.flux_quarter < 1e-6);
        }
    }
}

TEST_CASE("energy conventions coincide at unit normalization") {
    const auto r = run(6.0, 0.0, 1, 1, 0.5, 1.3, 4);
    const auto t = totals(r.estimate, r.params);
    CHECK(t.conventions.canonical == doctest::Approx(t.conventions.flux_quarter).epsilon(1e-14));
    const auto q = field_quadrature(r.profile, r.estimate, r.params);
    CHECK(std::abs(q.energy - t.energy) / t.energy < 1e-6);
}

TEST_CASE("physical totals are invariant under the sigma rescaling") {
    const auto a = run(5.0, 0.0, 2, 1, 0.3, 1.0, 2);
    const auto b = run(5.0, 0.0, 2, 1, 1.7, 1.0, 2);
    const auto qa = field_quadrature(a.profile, a.estimate, a.params);
    const auto qb = field_quadrature(b.profile, b.estimate, b.params);
    CHECK(qa.flux1 == doctest::Approx(qb.flux1).epsilon(1e-12));
    CHECK(qa.flux2 == doctest::Approx(qb.flux2).epsilon(1e-12));
    const auto ta = totals(a.estimate, a.params), tb = totals(b.estimate, b.params);
    CHECK(ta.energy / std::pow(0.3, 3) == doctest::Approx(tb.energy / std::pow(1.7, 3)).epsilon(1e-12));
    const auto fa = reconstruct(a.profile, a.params), fb = reconstruct(b.profile, b.params);
    CHECK(fa[100].r_phys * 0.6 == doctest::Approx(fb[100].r_phys * 3.4));
}
