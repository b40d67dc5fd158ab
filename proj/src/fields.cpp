#include "abjm/fields.hpp"

#include <cmath>
#include <numbers>

namespace abjm {

FieldSample field_at(const RadialProfile& p, std::size_t i, const VortexParams& params) {
    const double lambda = lambda_of(params);
    const double sigma = params.sigma, k = params.k;
    const double amp = sigma * k / (2.0 * std::numbers::pi);
    const double u = p.u(i), v = p.v(i);
    const double eu = std::exp(u), ev = std::exp(v);
    // radial derivatives of u, v in the dimensionless variable
    const double du = (2.0 * p.n1 - p.F1[i]) / p.r[i];
    const double dv = (2.0 * p.n2 - p.F2[i]) / p.r[i];
    FieldSample s;
    s.r_phys = p.r[i] / std::sqrt(lambda);
    s.phi1_sq = amp * eu;
    s.phi2_sq = amp * ev;
    s.f12_1 = 2.0 * sigma * sigma * ev * (eu + 1.0);
    s.f12_2 = 2.0 * sigma * sigma * eu * std::expm1(v);
    s.dphi1_sq = 0.5 * amp * eu * du * du * lambda;
    s.dphi2_sq = 0.5 * amp * ev * dv * dv * lambda;
    s.energy_density = params.n_mat * (params.n_mat - 1.0) * sigma * k / (4.0 * std::numbers::pi) * (s.f12_1 - s.f12_2);
    return s;
}

std::vector<FieldSample> reconstruct(const RadialProfile& p, const VortexParams& params) {
    params.validate();
    std::vector<FieldSample> out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out.push_back(field_at(p, i, params));
    return out;
}

Totals totals(const TailEstimate& e, const VortexParams& params) {
    params.validate();
    Totals t;
    t.flux1 = flux_from_functional(e.f1_inf);
    t.flux2 = flux_from_functional(e.f2_inf);
    t.flux1_over_2pi = flux_over_2pi(e.f1_inf);
    t.flux2_over_2pi = flux_over_2pi(e.f2_inf);
    t.conventions = energy_conventions(params, e.int_eu, e.int_ev);
    t.energy = t.conventions.canonical;
    return t;
}

FieldQuadrature field_quadrature(const RadialProfile& p, const TailEstimate& e, const VortexParams& params) {
    params.validate();
    if (p.size() < 2) throw InvalidArgument("profile too short for quadrature");
    // integrands r^2 e^{...} in s = ln r and their s-derivatives
    struct Point {
        double g1, g2, ge, d1, d2, de;
    };
    auto at = [&](std::size_t i) {
        const double s = std::log(p.r[i]);
        const double us = 2.0 * p.n1 - p.F1[i], vs = 2.0 * p.n2 - p.F2[i];
        const double a = std::exp(2.0 * s + p.u(i) + p.v(i));
        const double b = std::exp(2.0 * s + p.u(i));
        const double c = std::exp(2.0 * s + p.v(i));
        return Point{a + c,
                     a - b,
                     b + c,
                     a * (2.0 + us + vs) + c * (2.0 + vs),
                     a * (2.0 + us + vs) - b * (2.0 + us),
                     b * (2.0 + us) + c * (2.0 + vs)};
    };
    double q1 = 0.0, q2 = 0.0, qe = 0.0;
    Point left = at(0);
    for (std::size_t i = 1; i < p.size(); ++i) {
        const Point right = at(i);
        const double h = std::log(p.r[i] / p.r[i - 1]);
        const double w = h * h / 12.0;
        q1 += 0.5 * h * (left.g1 + right.g1) + w * (left.d1 - right.d1);
        q2 += 0.5 * h * (left.g2 + right.g2) + w * (left.d2 - right.d2);
        qe += 0.5 * h * (left.ge + right.ge) + w * (left.de - right.de);
        left = right;
    }
    const std::size_t n = p.size() - 1;
    const double tail_euv = e.int_euv - p.int_euv[n];
    const double tail_eu = e.int_eu - p.int_eu[n];
    const double tail_ev = e.int_ev - p.int_ev[n];
    const double f1 = p.int_euv[0] + p.int_ev[0] + q1 + tail_euv + tail_ev;
    const double f2 = p.int_euv[0] - p.int_eu[0] + q2 + tail_euv - tail_eu;
    const double ie = p.int_eu[0] + p.int_ev[0] + qe + tail_eu + tail_ev;
    FieldQuadrature out;
    out.flux1 = std::numbers::pi * f1;
    out.flux2 = std::numbers::pi * f2;
    out.energy = params.n_mat * (params.n_mat - 1.0) * params.sigma * params.k / 4.0 * ie;
    return out;
}

}  // namespace abjm
