#pragma once

#include <string>
#include <vector>

#include "abjm/functionals.hpp"
#include "abjm/shooter.hpp"

namespace abjm {

/// Slack applied to every strict inequality to absorb round-off.
inline constexpr double kPredicateSlack = 1e-9;

/// Residuals of the three radial Pohozaev identities at one radius.
///
/// Each is divided by max(4 (n1+1)(n2+1), largest term magnitude), so the
/// value is a relative residual once the terms outgrow the constant.
struct PohozaevResidual {
    double r = 0.0;
    double res_euv = 0.0;  // e^{u+v} identity
    double res_eu = 0.0;   // e^u identity
    double res_ev = 0.0;   // e^v identity
    double scale = 0.0;    // the divisor used
};

PohozaevResidual pohozaev_residual(const RadialProfile& profile, std::size_t index);
PohozaevResidual pohozaev_residual_at(const RadialProfile& profile, double r);

/// Residuals of the limit identity and its two rearrangements, evaluated
/// from the extrapolated integrals and normalized by 4 (n1+1)(n2+1).
struct LimitIdentityResidual {
    double res_mass = 0.0;
    double res_v_form = 0.0;
    double res_u_form = 0.0;
};

LimitIdentityResidual limit_identity_residual(const TailEstimate& estimate, int n1, int n2);

/// A named pass/fail check with its margin (bound minus value; positive is good).
struct Predicate {
    std::string name;
    bool pass = true;
    double margin = 0.0;
    std::string detail;
};

struct PohozaevReport {
    std::vector<double> radii;
    std::vector<double> res_euv, res_eu, res_ev;
    double max_euv = 0.0, max_eu = 0.0, max_ev = 0.0;
    LimitIdentityResidual limit;  // only meaningful for integrable runs
    bool limit_available = false;
    double tolerance = 0.0;
    bool pass = true;
};

/// Residuals at every checkpoint of the profile.
PohozaevReport pohozaev_report(const RadialProfile& profile, const TailEstimate& estimate, double tolerance = 1e-6);

/// Zeros of v and the qualitative checks built on them.
struct StructureReport {
    std::vector<double> zeros;  // located by interpolation in ln r
    bool second_zero_beyond_range = false;
    double predicted_second_zero = 0.0;  // extrapolated when beyond range
    std::size_t expected_zeros = 0;
    std::vector<Predicate> checks;
    bool pass = true;
};

StructureReport structure_check(const RadialProfile& profile, const TailEstimate& estimate);

/// Margins of the a priori bounds; the integrable-only bounds are skipped otherwise.
std::vector<Predicate> apriori_check(const RadialProfile& profile, const TailEstimate& estimate);

/// Strict exponent inequalities for integrable runs.
std::vector<Predicate> beta_inequalities(const TailEstimate& estimate, int n1, int n2);

/// Explicit limit of the rescaled sum Ũ + Ṽ: -2 ln(1 + r^{2M} / (4 M^2)), M = n1 + n2 + 1.
double blowup_limit_profile(double r, int n1, int n2);

struct BlowupRow {
    double alpha = 0.0;
    Verdict verdict = Verdict::inconclusive;
    double f2_inf = 0.0;
    double gap = 0.0;           // 2M - F2(inf)
    double sup_distance = 0.0;  // max over r in [0, r_window] of |Ũ + Ṽ - limit|
    double scaled_mass = 0.0;   // int_0^{r_window} r^{2M-1} e^{Ũ+Ṽ} dr by trapezoid on the landing grid
};

struct BlowupReport {
    std::vector<BlowupRow> rows;
    bool gap_decreasing = true;
    bool distance_decreasing = true;
};

BlowupReport blowup_limit_check(const VortexParams& params, double line_offset, const std::vector<double>& alphas,
                                double r_window = 10.0, const ShooterControls& controls = {});

/// Every check in one list, for reports.
std::vector<Predicate> all_predicates(const RadialProfile& profile, const TailEstimate& estimate,
                                      double pohozaev_tolerance = 1e-6);

}  // namespace abjm
