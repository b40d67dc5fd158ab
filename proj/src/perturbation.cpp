#include "abjm/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "abjm/liouville.hpp"
#include "abjm/quadrature.hpp"

namespace abjm {

namespace {

double source_diff(double t, int n1, int n2) {
    const auto b = baseline(t, n1, n2);
    return b.exp_u0 - b.exp_v0;
}

double source_sum(double t, int n1, int n2) {
    const auto b = baseline(t, n1, n2);
    return b.exp_u0 + b.exp_v0;
}

// y u0'(y) for the baseline component with own multiplicity n_own.
double baseline_log_slope(double y, int n_own, int m) { return 2.0 * n_own - 2.0 * m / (1.0 + std::pow(y, -2.0 * m)); }

// Scaled fields (U, V) and their log-derivatives (y U', y V') at y.
struct ScaledPoint {
    double u, v, su, sv;
};

ScaledPoint scaled_point(const FirstOrderCorrection& corr, double eps, double y) {
    const int m = corr.n1() + corr.n2() + 1;
    const auto b = baseline(y, corr.n1(), corr.n2());
    const auto c = corr.evaluate(y);
    return {b.u0 + eps * c.u2, b.v0 + eps * c.v2, baseline_log_slope(y, corr.n1(), m) + eps * y * c.du2,
            baseline_log_slope(y, corr.n2(), m) + eps * y * c.dv2};
}

// GL20 over [s0, s1] in s = ln y, split into cells of width <= 0.25.
template <std::size_t K, class F>
std::array<double, K> integrate_log(F&& f, double s0, double s1) {
    std::array<double, K> out{};
    if (s1 <= s0) return out;
    const int cells = std::max(1, static_cast<int>(std::ceil((s1 - s0) / 0.25)));
    const double h = (s1 - s0) / cells;
    for (int i = 0; i < cells; ++i) {
        const auto part = gauss_legendre<K>(f, s0 + i * h, s0 + (i + 1) * h);
        for (std::size_t j = 0; j < K; ++j) out[j] += part[j];
    }
    return out;
}

}  // namespace

FirstOrderCorrection::FirstOrderCorrection(int n1, int n2, const CumulativeGrid& grid)
    : n1_(n1),
      n2_(n2),
      grid_(grid),
      table_(
          [n1, n2](double t) -> std::array<double, 4> {
              const double d = source_diff(t, n1, n2) * t;
              const double s = source_sum(t, n1, n2) * t;
              return {phi0(t, n1, n2) * d, kernel_companion(t, n1, n2) * d, s, t > 0.0 ? s * std::log(t) : 0.0};
          },
          grid) {
    VortexParams{n1, n2}.validate();
}

CorrectionValue FirstOrderCorrection::evaluate(double r) const {
    if (r <= 0.0) return {};
    const auto i = table_.at(r);
    const double lr = std::log(r);
    const double g = kernel_companion(r, n1_, n2_) * i[0] - phi0(r, n1_, n2_) * i[1];
    const double dg = kernel_companion_derivative(r, n1_, n2_) * i[0] - phi0_derivative(r, n1_, n2_) * i[1];
    const double d = -(lr * i[2] - i[3]);
    const double dd = -i[2] / r;
    return {0.5 * (g + d), 0.5 * (g - d), 0.5 * (dg + dd), 0.5 * (dg - dd)};
}

std::pair<double, double> FirstOrderCorrection::sigma() const {
    const auto t = table_.total();
    return {t[0], t[2]};
}

std::pair<double, double> u2_v2(double r, int n1, int n2) {
    if (r <= 0.0) return {0.0, 0.0};
    const double g = green_solve([&](double t) { return source_diff(t, n1, n2); }, r, n1, n2);
    const QuadratureTolerance tol{1e-14, 1e-12, 25};
    const double i3 =
        integrate([&](double t) { return t * source_sum(t, n1, n2); }, 0.0, r, tol, "int_0^r t (e^u0 + e^v0) dt").value;
    const double i4 = integrate([&](double t) { return t > 0.0 ? t * std::log(t) * source_sum(t, n1, n2) : 0.0; }, 0.0,
                                r, tol, "int_0^r t ln t (e^u0 + e^v0) dt")
                          .value;
    const double d = -(std::log(r) * i3 - i4);
    return {0.5 * (g + d), 0.5 * (g - d)};
}

std::string check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        std::ostringstream os;
        os << "eps must lie in (0, 1), got " << eps;
        throw InvalidArgument(os.str());
    }
    if (eps > kPerturbSoftCap) {
        std::ostringstream os;
        os << "eps = " << eps << " exceeds the soft cap " << kPerturbSoftCap
           << "; first-order truncation may be inaccurate";
        return os.str();
    }
    return {};
}

std::pair<double, double> perturb_profile(const FirstOrderCorrection& corr, double eps, double r) {
    check_eps(eps);
    const double y = r / eps;
    const auto b = baseline(y, corr.n1(), corr.n2());
    const auto c = corr.evaluate(y);
    const double shift = -std::log(eps);
    return {b.u0 + eps * c.u2 + shift, b.v0 + eps * c.v2 + shift};
}

std::pair<double, double> perturb_profile(double eps, double r, int n1, int n2) {
    check_eps(eps);
    const double y = r / eps;
    const auto b = baseline(y, n1, n2);
    const auto c = u2_v2(y, n1, n2);
    const double shift = -std::log(eps);
    return {b.u0 + eps * c.first + shift, b.v0 + eps * c.second + shift};
}

PerturbProfile sample_perturb_profile(const FirstOrderCorrection& corr, double eps, double y_min, double y_max,
                                      int points) {
    PerturbProfile out;
    out.eps = eps;
    out.n1 = corr.n1();
    out.n2 = corr.n2();
    if (auto w = check_eps(eps); !w.empty()) out.warnings.push_back(std::move(w));
    if (points < 2 || !(y_min > 0.0) || !(y_max > y_min)) throw InvalidArgument("bad perturbation sampling window");
    out.samples.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double y = y_min * std::pow(y_max / y_min, double(i) / (points - 1));
        const double r = eps * y;
        const auto [u, v] = perturb_profile(corr, eps, r);
        out.samples.push_back({r, u, v});
    }
    return out;
}

PerturbIntegrals perturb_integrals(const FirstOrderCorrection& corr, double eps, double core_over_eps) {
    check_eps(eps);
    auto integrand = [&](double s) -> std::array<double, 5> {
        const double y = std::exp(s);
        const auto p = scaled_point(corr, eps, y);
        const double l = 2.0 * s;  // y^2 from r dr = y^2 ds in scaled units
        const double euv = std::exp(l + p.u + p.v);
        const double eu = std::exp(l + p.u);
        const double ev = std::exp(l + p.v);
        return {euv + eps * ev, euv - eps * eu, eps * eu, eps * ev, euv};
    };
    const double s_lo = std::log(1e-6);
    const double s_hi = std::log(corr.grid_max());
    const double s_core = std::clamp(std::log(core_over_eps), s_lo, s_hi);
    const auto inner = integrate_log<5>(integrand, s_lo, s_core);
    const auto outer = integrate_log<5>(integrand, s_core, s_hi);
    PerturbIntegrals out;
    out.f1 = inner[0] + outer[0];
    out.f2 = inner[1] + outer[1];
    out.int_eu = inner[2] + outer[2];
    out.int_ev = inner[3] + outer[3];
    out.int_euv = inner[4] + outer[4];
    out.core_fraction = inner[4] / out.int_euv;
    out.core_radius = eps * core_over_eps;
    return out;
}

double perturb_residual(const FirstOrderCorrection& corr, double eps, double y_min, double y_max) {
    check_eps(eps);
    const double h = 1e-2;
    const int points = 201;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double s = std::log(y_min) + (std::log(y_max) - std::log(y_min)) * i / (points - 1);
        auto at = [&](double ss) { return scaled_point(corr, eps, std::exp(ss)); };
        const auto m2 = at(s - 2 * h), m1 = at(s - h), p1 = at(s + h), p2 = at(s + 2 * h);
        const auto c = at(s);
        // y^2 Delta W = d(y W')/ds
        const double lap_u = (m2.su - 8 * m1.su + 8 * p1.su - p2.su) / (12 * h);
        const double lap_v = (m2.sv - 8 * m1.sv + 8 * p1.sv - p2.sv) / (12 * h);
        const double y2 = std::exp(2.0 * s);
        const double ru = lap_u + y2 * std::exp(c.v) * (std::exp(c.u) + eps);
        const double rv = lap_v + y2 * std::exp(c.u) * (std::exp(c.v) - eps);
        worst = std::max({worst, std::abs(ru), std::abs(rv)});
    }
    return worst;
}

std::pair<double, double> perturb_decay_fit(const FirstOrderCorrection& corr, double eps, double y_fit) {
    check_eps(eps);
    const int points = 21;
    double sx = 0, su = 0, sv = 0, sxx = 0, sxu = 0, sxv = 0;
    for (int i = 0; i < points; ++i) {
        const double x = std::log(y_fit) + std::log(10.0) * i / (points - 1);
        const auto [u, v] = perturb_profile(corr, eps, eps * std::exp(x));
        sx += x;
        su += u;
        sv += v;
        sxx += x * x;
        sxu += x * u;
        sxv += x * v;
    }
    const double den = points * sxx - sx * sx;
    const double slope_u = (points * sxu - sx * su) / den;
    const double slope_v = (points * sxv - sx * sv) / den;
    return {-0.5 * slope_u, -0.5 * slope_v};
}

std::vector<ConcentrationRow> concentration_report(const VortexParams& params, const std::vector<double>& eps_list) {
    params.validate();
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        check_eps(eps_list[i]);
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw InvalidArgument("eps list must be strictly decreasing");
    }
    const FirstOrderCorrection corr(params.n1, params.n2);
    std::vector<ConcentrationRow> rows;
    for (double eps : eps_list) {
        ConcentrationRow row;
        row.eps = eps;
        row.warning = check_eps(eps);
        const auto ints = perturb_integrals(corr, eps);
        row.flux1_over_2pi = flux_over_2pi(ints.f1);
        row.flux2_over_2pi = flux_over_2pi(ints.f2);
        row.energy = energy_from_integrals(params, ints.int_eu, ints.int_ev);
        row.core_fraction = ints.core_fraction;
        row.residual = perturb_residual(corr, eps);
        std::tie(row.beta1_fit, row.beta2_fit) = perturb_decay_fit(corr, eps);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace abjm
