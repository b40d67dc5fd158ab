#include <cmath>
#include <numbers>

#include "abjm/params.hpp"
#include "doctest.h"

using namespace abjm;

TEST_CASE("lambda normalization") {
    VortexParams p;
    p.sigma = 0.5;
    CHECK(lambda_of(p) == doctest::Approx(1.0));
    p.sigma = 1.0;
    CHECK(lambda_of(p) == doctest::Approx(4.0));
    p.sigma = 2.0;
    CHECK(lambda_of(p) == doctest::Approx(16.0));
}

TEST_CASE("flux conversion") {
    CHECK(flux_from_functional(0.0) == 0.0);
    // F2(inf) = 2(N2+1) sits at the lower end N2+1 of the admissible Phi2/(2 pi) interval
    const int n1 = 2, n2 = 3;
    CHECK(flux_from_functional(2.0 * (n2 + 1)) / (2 * std::numbers::pi) == doctest::Approx(n2 + 1));
    CHECK(flux_over_2pi(2.0 * (n1 + n2 + 1)) == doctest::Approx(n1 + n2 + 1));

    // linear and strictly increasing
    for (double a = -3.0; a < 3.0; a += 0.37) {
        const double b = a + 0.01;
        CHECK(flux_from_functional(b) > flux_from_functional(a));
        CHECK(flux_from_functional(a + b) == doctest::Approx(flux_from_functional(a) + flux_from_functional(b)));
    }
}

TEST_CASE("energy from radial integrals") {
    VortexParams p;
    p.n_mat = 2;
    p.sigma = 1.0;
    p.k = 1.0;
    CHECK(energy_from_integrals(p, 0.0, 0.0) == 0.0);
    CHECK(energy_from_integrals(p, 0.25, 0.75) == doctest::Approx(2.0));
    CHECK(energy_from_integrals(p, 1e-9, 0.0) > 0.0);

    const auto conv = energy_conventions(p, 0.5, 0.5);
    CHECK(conv.canonical == doctest::Approx(2.0));
    CHECK(conv.flux_half == doctest::Approx(2.0 * conv.flux_quarter));

    // the conventions coincide with the canonical one exactly at lambda = 4 sigma^2 = 1
    p.sigma = 0.5;
    const auto unit = energy_conventions(p, 0.3, 0.4);
    CHECK(unit.canonical == doctest::Approx(unit.flux_quarter));
}

TEST_CASE("parameter validation") {
    VortexParams p;
    CHECK_NOTHROW(p.validate());
    p.n1 = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.n2 = 0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.sigma = 0.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.k = -1.0;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
    p = {};
    p.n_mat = 1;
    CHECK_THROWS_AS(p.validate(), InvalidArgument);
}
