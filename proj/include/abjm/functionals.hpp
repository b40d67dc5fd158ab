#pragma once

#include <string>

#include "abjm/shooter.hpp"

namespace abjm {

enum class Verdict { integrable, non_integrable, inconclusive };

std::string to_string(Verdict v);

/// Power-law tails int_R^inf t e^{u+v}, t e^u, t e^v dt for
/// e^u ~ e^{u(R)} (t/R)^{-2 b1}, e^v ~ e^{v(R)} (t/R)^{-2 b2}.
/// A tail whose exponent does not decay fast enough is +infinity.
struct TailTerms {
    double euv = 0.0;
    double eu = 0.0;
    double ev = 0.0;
};

TailTerms tail_terms(double r, double u, double v, double b1, double b2);

/// Default half-width of the undecidable band around F2(inf) = 2 (n2 + 1).
inline constexpr double kDefaultBand = 1e-3;

struct TailUncertainty {
    double f1 = 0.0;
    double f2 = 0.0;
    double int_euv = 0.0;
    double int_eu = 0.0;
    double int_ev = 0.0;
};

/// Extrapolated limits of a profile.
struct TailEstimate {
    double f1_inf = 0.0;
    double f2_inf = 0.0;
    double beta1 = 0.0;  // f1_inf / 2 - n1
    double beta2 = 0.0;  // f2_inf / 2 - n2
    double int_euv = 0.0;
    double int_eu = 0.0;
    double int_ev = 0.0;
    TailUncertainty uncertainty;
    Verdict decided = Verdict::inconclusive;
    double band = kDefaultBand;
    double terminal_r = 0.0;
    std::string diagnostic;
};

/// Adds the analytic tails beyond the terminal radius (iterated once on the
/// decay exponents) and classifies the run.
TailEstimate tail_extrapolate(const RadialProfile& profile, double band = kDefaultBand);

/// Closed-form limits of the three radial integrals in terms of beta1, beta2.
struct LimitIntegrals {
    double int_euv = 0.0;  // 2 (n1+1)(n2+1) - 2 (beta1-1)(beta2-1)
    double int_eu = 0.0;   // 2 n1 (n2+1) - 2 beta1 (beta2-1)
    double int_ev = 0.0;   // 2 beta2 (beta1-1) - 2 n2 (n1+1)
};

LimitIntegrals limit_integrals(const TailEstimate& estimate, int n1, int n2);

/// Least-squares line through (ln r, y) on the checkpoints of the last
/// `decades` decades of the profile.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t points = 0;
};

enum class ProfileField { u, v, log_f12_1, log_abs_f12_2, log_dphi1, log_dphi2 };

SlopeFit fit_log_slope(const RadialProfile& profile, ProfileField field, double decades = 1.0);

/// Minimum number of checkpoints in the fitting window.
inline constexpr std::size_t kMinFitPoints = 20;

}  // namespace abjm
