#include <algorithm>
#include <cmath>
#include <random>

#include "abjm/diagnostics.hpp"
#include "abjm/quadrature.hpp"
#include "doctest.h"

using namespace abjm;

namespace {

VortexParams params_of(int n1, int n2) {
    VortexParams p;
    p.n1 = n1;
    p.n2 = n2;
    return p;
}

const Predicate* find(const std::vector<Predicate>& list, const std::string& name) {
    const auto it = std::find_if(list.begin(), list.end(), [&](const Predicate& q) { return q.name == name; });
    return it == list.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("Pohozaev residuals vanish at the origin and stay small") {
    for (auto [n1, n2] : {std::pair{1, 1}, std::pair{2, 3}}) {
        for (double a : {-4.0, 0.0, 5.0}) {
            const auto prof = integrate(params_of(n1, n2), InitialData::direct(a, -0.5 * a));
            const auto first = pohozaev_residual(prof, 0);
            CHECK(first.res_euv < 1e-12);
            CHECK(first.res_eu < 1e-12);
            CHECK(first.res_ev < 1e-12);
            const auto rep = pohozaev_report(prof, tail_extrapolate(prof));
            CHECK(rep.radii.size() == prof.size());
            CHECK(rep.res_euv.size() == prof.size());
            CHECK(rep.max_euv < 1e-6);
            CHECK(rep.max_eu < 1e-6);
            CHECK(rep.max_ev < 1e-6);
            // an order of magnitude above the integrator's own accounting is never reached
            CHECK(rep.max_euv <= 10.0 * prof.error_estimate + 1e-13);
        }
    }
}

TEST_CASE("limit identity and its rearrangements agree") {
    const auto prof = integrate(params_of(1, 1), InitialData::from_line(5.0, 0.0, 1, 1));
    const auto e = tail_extrapolate(prof);
    REQUIRE(e.decided == Verdict::integrable);
    const auto r = limit_identity_residual(e, 1, 1);
    CHECK(r.res_mass < 1e-7);
    CHECK(r.res_v_form < 1e-7);
    CHECK(r.res_u_form < 1e-7);
    // the terminal residual of the mixed identity reproduces the limit identity
    CHECK(pohozaev_residual(prof, prof.size() - 1).res_euv < 1e-6);
}

TEST_CASE("zero structure of v") {
    SUBCASE("divergent branch has one zero") {
        const auto prof = integrate(params_of(1, 1), InitialData::from_line(-10.0, 0.0, 1, 1));
        REQUIRE(prof.termination == Termination::divergent_v);
        const auto s = structure_check(prof, tail_extrapolate(prof));
        CHECK(s.zeros.size() == 1);
        CHECK(s.expected_zeros == 1);
        CHECK(s.pass);
        CHECK(find(s.checks, "v_increasing_after_zero") != nullptr);
    }
    SUBCASE("integrable branch has two zeros") {
        const auto prof = integrate(params_of(1, 1), InitialData::from_line(4.0, 0.0, 1, 1));
        const auto e = tail_extrapolate(prof);
        REQUIRE(e.decided == Verdict::integrable);
        const auto s = structure_check(prof, e);
        CHECK(s.zeros.size() + (s.second_zero_beyond_range ? 1 : 0) == 2);
        CHECK(s.pass);
        const auto* q = find(s.checks, "v_max_where_F2_is_2n2");
        REQUIRE(q != nullptr);
        CHECK(q->pass);
        const auto* w = find(s.checks, "u_plus_2lnr_max");
        REQUIRE(w != nullptr);
        CHECK(w->pass);
    }
}

TEST_CASE("a priori bound with zero data") {
    const auto prof = integrate(params_of(1, 1), InitialData::direct(0.0, 0.0));
    const auto e = tail_extrapolate(prof);
    const auto list = apriori_check(prof, e);
    const auto* upper = find(list, "weighted_mass_upper");
    REQUIRE(upper != nullptr);
    CHECK(upper->margin + e.int_eu == doctest::Approx(10.0));
    for (const auto& q : list) CHECK_MESSAGE(q.pass, q.name);
}

TEST_CASE("exponent inequalities hold on integrable runs") {
    for (double L : {-2.0, 0.0, 2.0}) {
        const auto e = tail_extrapolate(integrate(params_of(1, 1), InitialData::from_line(6.0, L, 1, 1)));
        REQUIRE(e.decided == Verdict::integrable);
        for (const auto& q : beta_inequalities(e, 1, 1)) CHECK_MESSAGE(q.pass, q.name);
    }
}

TEST_CASE("explicit blow-up profile") {
    CHECK(blowup_limit_profile(0.0, 1, 1) == 0.0);
    for (auto [n1, n2] : {std::pair{1, 1}, std::pair{2, 1}}) {
        const int m = n1 + n2 + 1;
        const auto mass =
            integrate([&](double r) { return std::pow(r, 2 * m - 1) * std::exp(blowup_limit_profile(r, n1, n2)); }, 0.0,
                      std::numeric_limits<double>::infinity(), {1e-12, 1e-12, 20});
        CHECK(mass.value == doctest::Approx(2.0 * m).epsilon(1e-9));
    }
}

TEST_CASE("blow-up sequence approaches the limit") {
    const auto rep = blowup_limit_check(params_of(1, 1), 0.0, {4.0, 8.0, 12.0});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.gap_decreasing);
    CHECK(rep.distance_decreasing);
    for (const auto& row : rep.rows) {
        CHECK(row.verdict == Verdict::integrable);
        CHECK(row.gap > 0.0);
    }
    // the rescaled mass on the window tends to that of the limit profile, about 2M
    CHECK(std::abs(rep.rows[2].scaled_mass - 6.0) < std::abs(rep.rows[0].scaled_mass - 6.0));
}

TEST_CASE("randomized sweep passes every predicate") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> alpha(-6.0, 6.0);
    std::uniform_int_distribution<int> mult(1, 3);
    for (int k = 0; k < 50; ++k) {
        const auto p = params_of(mult(rng), mult(rng));
        const double a1 = alpha(rng), a2 = alpha(rng);
        const auto prof = integrate(p, InitialData::direct(a1, a2));
        const auto e = tail_extrapolate(prof);
        for (const auto& q : all_predicates(prof, e)) {
            CHECK_MESSAGE(q.pass, q.name, " run ", k, " margin ", q.margin, " ", q.detail);
        }
    }
}
