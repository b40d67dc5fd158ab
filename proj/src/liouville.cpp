#include "abjm/liouville.hpp"

#include <cmath>
#include <limits>

namespace abjm {

namespace {

// ln(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

// 1 / (1 + r^{2M}) written through y = M ln r.
double inv_one_plus_power(double y) {
    if (y > 0.0) {
        const double e = std::exp(-2.0 * y);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(2.0 * y));
}

// sech^2(y)
double sech2(double y) {
    const double e = std::exp(-2.0 * std::abs(y));
    return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

double log_exp_field(double log_r, int n_own, int m) {
    return std::log(2.0 * m) + 2.0 * n_own * log_r - softplus(2.0 * m * log_r);
}

}  // namespace

BaselinePoint baseline(double r, int n1, int n2) {
    BaselinePoint p;
    p.r = r;
    if (r <= 0.0) {
        p.u0 = -std::numeric_limits<double>::infinity();
        p.v0 = -std::numeric_limits<double>::infinity();
        return p;
    }
    const int m = n1 + n2 + 1;
    const double lr = std::log(r);
    p.u0 = log_exp_field(lr, n1, m);
    p.v0 = log_exp_field(lr, n2, m);
    p.exp_u0 = std::exp(p.u0);
    p.exp_v0 = std::exp(p.v0);
    p.rho = 2.0 * std::exp(p.u0 + p.v0);
    return p;
}

double liouville_rho(double r, int n1, int n2) { return baseline(r, n1, n2).rho; }

double phi0(double r, int n1, int n2) {
    if (r <= 0.0) return 1.0;
    return -std::tanh((n1 + n2 + 1) * std::log(r));
}

double phi0_derivative(double r, int n1, int n2) {
    if (r <= 0.0) return 0.0;
    const int m = n1 + n2 + 1;
    return -m * sech2(m * std::log(r)) / r;
}

double kernel_companion(double r, int n1, int n2) {
    const int m = n1 + n2 + 1;
    const double lr = std::log(r);
    const double y = m * lr;
    return -std::tanh(y) * lr + 2.0 / m * inv_one_plus_power(y);
}

double kernel_companion_derivative(double r, int n1, int n2) {
    const int m = n1 + n2 + 1;
    const double lr = std::log(r);
    const double y = m * lr;
    return phi0_derivative(r, n1, n2) * lr - std::tanh(y) / r - sech2(y) / r;
}

GreenSolver::GreenSolver(std::function<double(double)> f, int n1, int n2, const CumulativeGrid& grid)
    : n1_(n1),
      n2_(n2),
      table_(
          [f = std::move(f), n1, n2](double t) -> std::array<double, 2> {
              const double ft = f(t) * t;
              return {phi0(t, n1, n2) * ft, kernel_companion(t, n1, n2) * ft};
          },
          grid) {}

GreenValue GreenSolver::evaluate(double r) const {
    if (r <= 0.0) return {};
    const auto cum = table_.at(r);
    return {kernel_companion(r, n1_, n2_) * cum[0] - phi0(r, n1_, n2_) * cum[1],
            kernel_companion_derivative(r, n1_, n2_) * cum[0] - phi0_derivative(r, n1_, n2_) * cum[1]};
}

double GreenSolver::c_f() const { return table_.total()[0]; }

double green_solve(const std::function<double(double)>& f, double r, int n1, int n2) {
    if (r <= 0.0) return 0.0;
    const QuadratureTolerance tol{1e-14, 1e-12, 25};
    const double i_phi =
        integrate([&](double t) { return phi0(t, n1, n2) * f(t) * t; }, 0.0, r, tol, "int_0^r phi0 f t dt").value;
    const double i_psi = integrate([&](double t) { return kernel_companion(t, n1, n2) * f(t) * t; }, 0.0, r, tol,
                                   "int_0^r (phi0 ln t + 2/(M(1+t^2M))) f t dt")
                             .value;
    return kernel_companion(r, n1, n2) * i_phi - phi0(r, n1, n2) * i_psi;
}

std::pair<double, double> sigma_integrals(int n1, int n2) {
    const QuadratureTolerance tol{1e-15, 1e-13, 25};
    auto diff = [&](double t) {
        const auto b = baseline(t, n1, n2);
        return phi0(t, n1, n2) * (b.exp_u0 - b.exp_v0) * t;
    };
    auto sum = [&](double t) {
        const auto b = baseline(t, n1, n2);
        return (b.exp_u0 + b.exp_v0) * t;
    };
    const double inf = std::numeric_limits<double>::infinity();
    const double s1 =
        integrate(diff, 0.0, 1.0, tol, "sigma1 core").value + integrate(diff, 1.0, inf, tol, "sigma1 tail").value;
    const double s2 =
        integrate(sum, 0.0, 1.0, tol, "sigma2 core").value + integrate(sum, 1.0, inf, tol, "sigma2 tail").value;
    return {s1, s2};
}

}  // namespace abjm
