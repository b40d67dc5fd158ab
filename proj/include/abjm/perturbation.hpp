#pragma once

#include <string>
#include <utility>
#include <vector>

#include "abjm/cumulative.hpp"
#include "abjm/params.hpp"

namespace abjm {

/// Value and radial derivative of the first-order correction (u2, v2).
struct CorrectionValue {
    double u2 = 0.0;
    double v2 = 0.0;
    double du2 = 0.0;
    double dv2 = 0.0;
};

/// First-order correction of the Liouville pair in the scaled system
///   -Delta U = e^V (e^U + eps),  -Delta V = e^U (e^V - eps).
///
/// (u2, v2) solves the linearization
///   Delta u2 + e^{u0+v0} (u2 + v2) + e^{v0} = 0,
///   Delta v2 + e^{u0+v0} (u2 + v2) - e^{u0} = 0
/// with u2(0) = v2(0) = 0. The sum is the Green solution for e^{u0} - e^{v0};
/// the difference integrates -(e^{u0} + e^{v0}) twice.
class FirstOrderCorrection {
  public:
    FirstOrderCorrection(int n1, int n2, const CumulativeGrid& grid = {});

    CorrectionValue evaluate(double r) const;

    /// (sigma1, sigma2) read off the tabulated integrals at infinity.
    std::pair<double, double> sigma() const;

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    double grid_max() const { return grid_.t_max; }

  private:
    int n1_;
    int n2_;
    CumulativeGrid grid_;
    CumulativeTable<4> table_;
};

/// Uncached evaluation of (u2(r), v2(r)) by direct quadrature.
std::pair<double, double> u2_v2(double r, int n1, int n2);

/// (u^eps(r), v^eps(r)) = (u0, v0)(r/eps) + eps (u2, v2)(r/eps) + ln(1/eps).
std::pair<double, double> perturb_profile(const FirstOrderCorrection& corr, double eps, double r);
std::pair<double, double> perturb_profile(double eps, double r, int n1, int n2);

/// eps above this value is accepted with a warning; there is no known
/// explicit radius of validity for the expansion.
inline constexpr double kPerturbSoftCap = 0.2;

/// Throws InvalidArgument unless 0 < eps < 1; returns a warning above the soft cap.
std::string check_eps(double eps);

struct PerturbSample {
    double r = 0.0;
    double u = 0.0;
    double v = 0.0;
};

struct PerturbProfile {
    double eps = 0.0;
    int n1 = 1;
    int n2 = 1;
    std::vector<PerturbSample> samples;
    std::vector<std::string> warnings;
};

/// Log-spaced samples in the physical radius covering [eps * y_min, eps * y_max].
PerturbProfile sample_perturb_profile(const FirstOrderCorrection& corr, double eps, double y_min = 1e-4,
                                      double y_max = 1e4, int points = 161);

/// Radial integrals of a first-order profile in unscaled coordinates.
struct PerturbIntegrals {
    double f1 = 0.0;             // int r e^v (e^u + 1) dr
    double f2 = 0.0;             // int r e^u (e^v - 1) dr
    double int_eu = 0.0;         // int r e^u dr
    double int_ev = 0.0;         // int r e^v dr
    double int_euv = 0.0;        // int r e^{u+v} dr
    double core_fraction = 0.0;  // share of int r e^{u+v} dr inside r < core_radius
    double core_radius = 0.0;
};

/// Integrals over (0, eps * grid_max); `core_over_eps` sets the core radius in units of eps.
PerturbIntegrals perturb_integrals(const FirstOrderCorrection& corr, double eps, double core_over_eps = 10.0);

/// Weighted sup residual of the scaled system, max over y in [y_min, y_max] of
/// y^2 |Delta U + e^V (e^U + eps)| and the same for V.
double perturb_residual(const FirstOrderCorrection& corr, double eps, double y_min = 1e-2, double y_max = 1e2);

/// Local decay exponents (-slope/2 of u and v against ln r), least squares over
/// one decade [y_fit, 10 y_fit] of the scaled radius.
std::pair<double, double> perturb_decay_fit(const FirstOrderCorrection& corr, double eps, double y_fit = 1e4);

struct ConcentrationRow {
    double eps = 0.0;
    double flux1_over_2pi = 0.0;
    double flux2_over_2pi = 0.0;
    double energy = 0.0;
    double core_fraction = 0.0;  // mass of e^{u+v} inside r < 10 eps
    double residual = 0.0;
    double beta1_fit = 0.0;
    double beta2_fit = 0.0;
    std::string warning;
};

/// One row per eps, in the given order. eps values must be strictly decreasing.
std::vector<ConcentrationRow> concentration_report(const VortexParams& params, const std::vector<double>& eps_list);

}  // namespace abjm
