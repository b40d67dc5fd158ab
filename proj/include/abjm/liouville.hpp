#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "abjm/cumulative.hpp"

namespace abjm {

/// The normalized Liouville pair (u0, v0) at radius r.
///
/// At r = 0 the logarithms are reported as -infinity and never used in
/// arithmetic; the exponentiated fields are exact zeros there.
struct BaselinePoint {
    double r = 0.0;
    double u0 = 0.0;
    double v0 = 0.0;
    double exp_u0 = 0.0;
    double exp_v0 = 0.0;
    double rho = 0.0;  // 2 e^{u0 + v0}
};

BaselinePoint baseline(double r, int n1, int n2);

/// Radial kernel element of w'' + w'/r + rho w: (1 - r^{2M}) / (1 + r^{2M}), M = n1 + n2 + 1.
double phi0(double r, int n1, int n2);
double phi0_derivative(double r, int n1, int n2);

/// Second homogeneous solution phi0 ln r + 2 / (M (1 + r^{2M})), singular at 0.
double kernel_companion(double r, int n1, int n2);
double kernel_companion_derivative(double r, int n1, int n2);

/// rho(r) = 2 e^{u0 + v0}.
double liouville_rho(double r, int n1, int n2);

/// Value and radial derivative of a Green solution.
struct GreenValue {
    double w = 0.0;
    double dw = 0.0;
};

/// Inverse of the radial operator L w = w'' + w'/r + rho w built on the
/// explicit variation-of-parameters formula. The two inner cumulative
/// integrals are tabulated once; evaluations are const and thread-safe.
class GreenSolver {
  public:
    GreenSolver(std::function<double(double)> f, int n1, int n2, const CumulativeGrid& grid = {});

    double operator()(double r) const { return evaluate(r).w; }
    GreenValue evaluate(double r) const;

    /// c_f = int_0^inf phi0(t) f(t) t dt, the coefficient of -ln r at infinity.
    double c_f() const;

  private:
    int n1_;
    int n2_;
    CumulativeTable<2> table_;
};

/// Uncached double-quadrature evaluation of the same formula at one radius.
double green_solve(const std::function<double(double)>& f, double r, int n1, int n2);

/// (sigma1, sigma2): int phi0 (e^{u0} - e^{v0}) t dt and int (e^{u0} + e^{v0}) t dt over (0, inf).
std::pair<double, double> sigma_integrals(int n1, int n2);

}  // namespace abjm
