#include "abjm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace abjm {

namespace {

double pohozaev_const(int n1, int n2) { return 4.0 * (n1 + 1) * (n2 + 1); }

Predicate make(std::string name, double margin, std::string detail = {}) {
    Predicate p;
    p.name = std::move(name);
    p.margin = margin;
    p.pass = margin > -kPredicateSlack;
    p.detail = std::move(detail);
    return p;
}

Predicate flag(std::string name, bool ok, std::string detail = {}) {
    Predicate p;
    p.name = std::move(name);
    p.pass = ok;
    p.margin = ok ? 0.0 : -1.0;
    p.detail = std::move(detail);
    return p;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// e^{U(0) - (n1+1) V(0) / n2}
double k_const(const RadialProfile& p) { return std::exp(p.init.alpha1 - (p.n1 + 1.0) * p.init.alpha2 / p.n2); }

// max over checkpoints of exp(k ln r + W)
template <class W>
double max_weighted(const RadialProfile& p, double k, W&& w) {
    double best = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) best = std::max(best, std::exp(k * std::log(p.r[i]) + w(i)));
    return best;
}

// Is y(i) monotone on [a, b] in the given direction, allowing round-off slack?
template <class Y>
bool monotone(std::size_t a, std::size_t b, int direction, Y&& y) {
    for (std::size_t i = a + 1; i <= b; ++i) {
        const double d = y(i) - y(i - 1);
        const double slack = kPredicateSlack * (1.0 + std::abs(y(i)));
        if (direction > 0 ? d < -slack : d > slack) return false;
    }
    return true;
}

}  // namespace

PohozaevResidual pohozaev_residual(const RadialProfile& p, std::size_t i) {
    const double r = p.r[i];
    const double lr = std::log(r);
    const double u = p.u(i), v = p.v(i);
    const double ru = 2.0 * p.n1 - p.F1[i];
    const double rv = 2.0 * p.n2 - p.F2[i];
    const double euv = std::exp(2.0 * lr + u + v), eu = std::exp(2.0 * lr + u), ev = std::exp(2.0 * lr + v);
    const double x = euv + ev - eu;
    const double k0 = pohozaev_const(p.n1, p.n2);
    const double c3 = 4.0 * p.n1 * (p.n2 + 1.0);
    const double c4 = 4.0 * p.n2 * (p.n1 + 1.0);
    const double a = 2.0 * p.int_euv[i], b = 2.0 * p.int_eu[i], c = 2.0 * p.int_ev[i];

    const double t_euv = (ru + 2.0) * (rv + 2.0);
    const double t_eu = ru * (rv + 2.0);
    const double t_ev = rv * (ru + 2.0);
    const double scale = std::max(
        {k0, std::abs(a), std::abs(b), std::abs(c), std::abs(t_euv), std::abs(t_eu), std::abs(t_ev), euv + ev + eu});
    PohozaevResidual out;
    out.r = r;
    out.scale = scale;
    out.res_euv = std::abs(a - k0 + t_euv + x) / scale;
    out.res_eu = std::abs(b - c3 + t_eu + x) / scale;
    out.res_ev = std::abs(c - t_ev + c4 - x) / scale;
    return out;
}

PohozaevResidual pohozaev_residual_at(const RadialProfile& p, double r) {
    if (p.size() == 0) throw InvalidArgument("empty profile");
    return pohozaev_residual(p, p.index_near(r));
}

LimitIdentityResidual limit_identity_residual(const TailEstimate& e, int n1, int n2) {
    const double k0 = pohozaev_const(n1, n2);
    const int m = n1 + n2 + 1;
    LimitIdentityResidual out;
    out.res_mass = std::abs((e.f1_inf - 2.0 * (n1 + 1)) * (e.f2_inf - 2.0 * (n2 + 1)) + 2.0 * e.int_euv - k0) / k0;
    out.res_v_form = std::abs((e.f2_inf - 2.0 * m) * e.int_euv + 2.0 * (n1 + 1) * e.int_eu +
                              (e.f2_inf - 2.0 * (n2 + 1)) * e.int_ev) /
                     k0;
    out.res_u_form = std::abs((e.f1_inf - 2.0 * m) * e.int_euv - 2.0 * (n2 + 1) * e.int_ev -
                              (e.f1_inf - 2.0 * (n1 + 1)) * e.int_eu) /
                     k0;
    return out;
}

PohozaevReport pohozaev_report(const RadialProfile& p, const TailEstimate& e, double tolerance) {
    PohozaevReport rep;
    rep.tolerance = tolerance;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto res = pohozaev_residual(p, i);
        rep.radii.push_back(res.r);
        rep.res_euv.push_back(res.res_euv);
        rep.res_eu.push_back(res.res_eu);
        rep.res_ev.push_back(res.res_ev);
        rep.max_euv = std::max(rep.max_euv, res.res_euv);
        rep.max_eu = std::max(rep.max_eu, res.res_eu);
        rep.max_ev = std::max(rep.max_ev, res.res_ev);
    }
    rep.pass = rep.max_euv < tolerance && rep.max_eu < tolerance && rep.max_ev < tolerance;
    if (e.decided == Verdict::integrable) {
        rep.limit = limit_identity_residual(e, p.n1, p.n2);
        rep.limit_available = true;
        rep.pass = rep.pass && rep.limit.res_mass < tolerance && rep.limit.res_v_form < tolerance &&
                   rep.limit.res_u_form < tolerance;
    }
    return rep;
}

StructureReport structure_check(const RadialProfile& p, const TailEstimate& e) {
    StructureReport rep;
    const std::size_t n = p.size();
    if (n < 2) {
        rep.checks.push_back(flag("profile_length", false, "fewer than two checkpoints"));
        rep.pass = false;
        return rep;
    }
    auto v = [&](std::size_t i) { return p.v(i); };
    auto f1 = [&](std::size_t i) { return p.F1[i]; };
    auto f2 = [&](std::size_t i) { return p.F2[i]; };
    auto uu = [&](std::size_t i) { return p.U[i]; };

    // zeros of v, one per sign change
    std::vector<std::size_t> after;  // first index past each zero
    for (std::size_t i = 1; i < n; ++i) {
        const double a = v(i - 1), b = v(i);
        if ((a < 0.0) != (b < 0.0)) {
            const double la = std::log(p.r[i - 1]), lb = std::log(p.r[i]);
            rep.zeros.push_back(std::exp(la + (lb - la) * a / (a - b)));
            after.push_back(i);
        }
    }

    rep.checks.push_back(flag("U_decreasing", monotone(0, n - 1, -1, uu)));
    rep.checks.push_back(flag("F1_increasing", monotone(0, n - 1, +1, f1)));
    rep.checks.push_back(flag("v_negative_near_origin", v(0) < 0.0, "v(r_start)=" + fmt(v(0))));
    rep.checks.push_back(flag("v_vanishes", !rep.zeros.empty()));

    // F2 minimum sits at the first zero of v
    if (!rep.zeros.empty()) {
        const auto imin = static_cast<std::size_t>(std::min_element(p.F2.begin(), p.F2.end()) - p.F2.begin());
        const std::size_t i0 = after[0];
        // where e^u is negligible F2 is flat to round-off, so compare values too
        const double at_zero = std::min(p.F2[i0 - 1], p.F2[i0]);
        const bool at_min =
            (imin + 1 >= i0 && imin <= i0) || at_zero - p.F2[imin] <= kPredicateSlack * (1.0 + std::abs(p.F2[imin]));
        rep.checks.push_back(
            flag("F2_min_at_first_zero", at_min, "argmin r=" + fmt(p.r[imin]) + ", zero r=" + fmt(rep.zeros[0])));
        rep.checks.push_back(flag("F2_decreasing_before_first_zero", monotone(0, i0 - 1, -1, f2)));
    }

    // branch: F2(inf) above or below 2 n2
    const bool two_zero_branch = std::isfinite(e.f2_inf) && e.f2_inf > 2.0 * p.n2;
    rep.expected_zeros = two_zero_branch ? 2 : 1;
    std::size_t found = rep.zeros.size();
    if (two_zero_branch && found == 1 && v(n - 1) > 0.0 && p.F2[n - 1] > 2.0 * p.n2) {
        // v is decreasing at the end of the range; its second zero lies further out
        rep.second_zero_beyond_range = true;
        rep.predicted_second_zero = std::exp(std::log(p.r[n - 1]) + v(n - 1) / (p.F2[n - 1] - 2.0 * p.n2));
        found = 2;
    }
    rep.checks.push_back(flag("zero_count", found == rep.expected_zeros,
                              "found " + std::to_string(rep.zeros.size()) +
                                  (rep.second_zero_beyond_range ? "+1 beyond range" : "") + ", expected " +
                                  std::to_string(rep.expected_zeros)));

    if (!two_zero_branch && !after.empty()) {
        rep.checks.push_back(flag("v_increasing_after_zero", monotone(after[0], n - 1, +1, v)));
    }
    if (two_zero_branch && rep.zeros.size() >= 2) {
        const std::size_t i0 = after[0], i1 = after[1];
        rep.checks.push_back(flag("F2_increasing_between_zeros", monotone(i0, i1 - 1, +1, f2)));
        rep.checks.push_back(flag("F2_decreasing_after_second_zero", monotone(i1, n - 1, -1, f2)));
        // unique maximum of v between the zeros, where F2 crosses 2 n2
        std::size_t imax = i0;
        for (std::size_t i = i0; i < i1; ++i) {
            if (v(i) > v(imax)) imax = i;
        }
        const bool unique = monotone(i0, imax, +1, v) && monotone(imax, i1 - 1, -1, v);
        const double target = 2.0 * p.n2;
        const bool crossing = imax > 0 && imax + 1 < n && p.F2[imax - 1] <= target + kPredicateSlack &&
                              p.F2[imax + 1] >= target - kPredicateSlack;
        rep.checks.push_back(
            flag("v_max_where_F2_is_2n2", unique && crossing, "r*=" + fmt(p.r[imax]) + ", F2(r*)=" + fmt(p.F2[imax])));
    } else if (two_zero_branch && rep.second_zero_beyond_range) {
        rep.checks.push_back(flag("F2_increasing_after_first_zero", monotone(after[0], n - 1, +1, f2)));
    }

    // u + 2 ln r peaks where F1 = 2 (n1 + 1)
    {
        auto w = [&](std::size_t i) { return p.u(i) + 2.0 * std::log(p.r[i]); };
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (w(i) > w(imax)) imax = i;
        }
        const double target = 2.0 * (p.n1 + 1);
        if (p.F1[n - 1] < target) {
            rep.checks.push_back(flag("u_plus_2lnr_max", true, "F1 has not reached 2 (n1 + 1) within range"));
        } else {
            const bool unique = monotone(0, imax, +1, w) && monotone(imax, n - 1, -1, w);
            const bool crossing = imax > 0 && imax + 1 < n && p.F1[imax - 1] <= target + kPredicateSlack &&
                                  p.F1[imax + 1] >= target - kPredicateSlack;
            rep.checks.push_back(
                flag("u_plus_2lnr_max", unique && crossing, "r=" + fmt(p.r[imax]) + ", F1=" + fmt(p.F1[imax])));
        }
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Predicate& q) { return q.pass; });
    return rep;
}

std::vector<Predicate> apriori_check(const RadialProfile& p, const TailEstimate& e) {
    std::vector<Predicate> out;
    const int n1 = p.n1, n2 = p.n2, m = n1 + n2 + 1;
    const double kc = k_const(p);
    const double u0 = p.init.alpha1;

    const double max_eu = max_weighted(p, 2.0 * (n1 + 1), [&](std::size_t i) { return p.U[i]; });
    const double max_euv = max_weighted(p, 2.0 * m, [&](std::size_t i) { return p.U[i] + p.V[i]; });
    const double max_ev = max_weighted(p, 2.0 * (n2 + 1), [&](std::size_t i) { return p.V[i]; });

    const double b_inf = e.int_eu;
    out.push_back(make("weighted_mass_lower", b_inf - max_eu / (2.0 * (n1 + 1)),
                       "max r^{2(n1+1)} e^U / (2(n1+1)) = " + fmt(max_eu / (2.0 * (n1 + 1)))));
    out.push_back(make("weighted_mass_upper", 2.0 * (2.0 * (n1 + 1) + kc) - b_inf, "int t e^u = " + fmt(b_inf)));

    double worst_pointwise = 1e300;
    double max_f2 = -1e300;
    double min_positivity = 1e300;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lr = std::log(p.r[i]);
        worst_pointwise =
            std::min(worst_pointwise, p.int_eu[i] - std::exp(2.0 * (n1 + 1) * lr + p.U[i]) / (2.0 * (n1 + 1)));
        max_f2 = std::max(max_f2, p.F2[i]);
        min_positivity =
            std::min(min_positivity, (p.F1[i] - 2.0 * m) * p.int_euv[i] + std::exp(2.0 * m * lr + p.U[i] + p.V[i]));
    }
    out.push_back(make("weighted_mass_pointwise", worst_pointwise));
    out.push_back(make("F2_below_total_order", 2.0 * m - max_f2, "max F2 = " + fmt(max_f2)));
    {
        Predicate q = make("mixed_mass_positivity", min_positivity);
        q.pass = min_positivity > -kPredicateSlack;
        out.push_back(q);
    }
    out.push_back(
        make("mixed_mass_bound", 2.0 * (3.0 * (n1 + 1) + n2 + kc) - e.int_euv, "int t e^{u+v} = " + fmt(e.int_euv)));
    const double mixed_cap = 3.0 * (n1 + 1) + n2 + kc;
    out.push_back(make("mixed_density_bound", mixed_cap * mixed_cap - max_euv, "max r^{2M} e^{U+V} = " + fmt(max_euv)));

    if (e.decided == Verdict::integrable) {
        const double k0 = pohozaev_const(n1, n2);
        out.push_back(make("v_density_bound", k0 - max_ev, "max r^{2(n2+1)} e^V = " + fmt(max_ev)));
        const double density_const = std::pow(8.0 * (n1 + 1) * (n2 + 1), n1 + 1);
        out.push_back(make("u_density_bound", density_const * (1.0 + std::exp(u0)) - max_eu));
        // explicit form of the interaction-mass bound: k0 [a R^{2 n1} + b / R^2] at its minimizer
        const double a = std::exp(u0) / (2.0 * n1);
        const double b = density_const * (1.0 + std::exp(u0)) / 2.0;
        const double rr = std::pow(b / (n1 * a), 1.0 / (2.0 * n1 + 2.0));
        const double bound = k0 * (a * std::pow(rr, 2.0 * n1) + b / (rr * rr));
        out.push_back(make("mixed_mass_explicit_bound", bound - e.int_euv, "bound = " + fmt(bound)));
    }
    return out;
}

std::vector<Predicate> beta_inequalities(const TailEstimate& e, int n1, int n2) {
    std::vector<Predicate> out;
    if (e.decided != Verdict::integrable) return out;
    const double b1 = e.beta1, b2 = e.beta2;
    const double x = (b1 - 1) * (b2 - 1);
    out.push_back(make("beta_product_positive", x));
    out.push_back(make("limit_euv_positive", (n1 + 1.0) * (n2 + 1.0) - x));
    out.push_back(make("limit_ev_positive", b2 * (b1 - 1) - n2 * (n1 + 1.0)));
    const double y = b1 * (b2 - 1);
    out.push_back(make("beta1_beta2_positive", y));
    out.push_back(make("limit_eu_positive", n1 * (n2 + 1.0) - y));
    out.push_back(make("beta1_range", b1 - (n2 + 1.0)));
    out.push_back(make("beta2_lower", b2 - 1.0));
    out.push_back(make("beta2_upper", (n1 + 1.0) - b2));
    const int m = n1 + n2 + 1;
    out.push_back(make("flux_order_lower", e.f2_inf - 2.0 * (n2 + 1)));
    out.push_back(make("flux_order_middle", 2.0 * m - e.f2_inf));
    out.push_back(make("flux_order_upper", e.f1_inf - 2.0 * m));
    return out;
}

double blowup_limit_profile(double r, int n1, int n2) {
    const int m = n1 + n2 + 1;
    return -2.0 * std::log1p(std::pow(r, 2.0 * m) / (4.0 * m * m));
}

BlowupReport blowup_limit_check(const VortexParams& params, double line_offset, const std::vector<double>& alphas,
                                double r_window, const ShooterControls& controls) {
    BlowupReport rep;
    const int n1 = params.n1, n2 = params.n2, m = params.total_order();
    const int points = 200;
    for (double alpha : alphas) {
        const auto init = InitialData::from_line(alpha, line_offset, n1, n2);
        const double shift = init.alpha1 + init.alpha2;
        const double scale = std::exp(-shift / (2.0 * m));
        ShooterControls c = controls;
        c.landing_radii.clear();
        for (int j = 1; j <= points; ++j) c.landing_radii.push_back(scale * r_window * j / points);
        const auto prof = integrate(params, init, c);
        const auto est = tail_extrapolate(prof);
        BlowupRow row;
        row.alpha = alpha;
        row.verdict = est.decided;
        row.f2_inf = est.f2_inf;
        row.gap = 2.0 * m - est.f2_inf;
        double worst = 0.0;
        for (std::size_t i = 0; i < prof.size(); ++i) {
            const double rs = prof.r[i] / scale;
            if (rs > r_window * (1 + 1e-12)) break;
            const double w = prof.U[i] + prof.V[i] - shift;
            worst = std::max(worst, std::abs(w - blowup_limit_profile(rs, n1, n2)));
        }
        row.sup_distance = worst;
        row.scaled_mass = prof.int_euv[prof.index_near(scale * r_window)];
        rep.rows.push_back(row);
    }
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        rep.gap_decreasing = rep.gap_decreasing && rep.rows[i].gap < rep.rows[i - 1].gap;
        rep.distance_decreasing = rep.distance_decreasing && rep.rows[i].sup_distance < rep.rows[i - 1].sup_distance;
    }
    return rep;
}

std::vector<Predicate> all_predicates(const RadialProfile& p, const TailEstimate& e, double tol) {
    std::vector<Predicate> out;
    const auto poh = pohozaev_report(p, e, tol);
    out.push_back(make("pohozaev_euv", tol - poh.max_euv));
    out.push_back(make("pohozaev_eu", tol - poh.max_eu));
    out.push_back(make("pohozaev_ev", tol - poh.max_ev));
    if (poh.limit_available) {
        out.push_back(make("limit_identity", tol - poh.limit.res_mass));
        out.push_back(make("limit_identity_v_form", tol - poh.limit.res_v_form));
        out.push_back(make("limit_identity_u_form", tol - poh.limit.res_u_form));
    }
    for (auto& q : structure_check(p, e).checks) out.push_back(std::move(q));
    for (auto& q : apriori_check(p, e)) out.push_back(std::move(q));
    for (auto& q : beta_inequalities(e, p.n1, p.n2)) out.push_back(std::move(q));
    return out;
}

}  // namespace abjm
