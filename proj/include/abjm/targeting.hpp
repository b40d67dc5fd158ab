#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "abjm/functionals.hpp"
#include "abjm/shooter.hpp"

namespace abjm {

/// No sign change of the target function inside the largest search box.
class TargetUnreachable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inconclusive classification inside the final bracket, even after tightening.
class PrecisionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One shot along the line: integration plus tail extrapolation.
struct ShotOutcome {
    double alpha = 0.0;
    InitialData init;
    Verdict verdict = Verdict::inconclusive;
    double f1_inf = 0.0;
    double f2_inf = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double energy = 0.0;  // canonical convention; +inf unless integrable
    TailEstimate estimate;
    Termination termination = Termination::r_max;
    bool tightened = false;  // reclassified at 10x tighter tolerances
    std::string diagnostic;

    double flux1_over_2pi() const { return 0.5 * f1_inf; }
    double flux2_over_2pi() const { return 0.5 * f2_inf; }
};

struct Shot {
    ShotOutcome outcome;
    RadialProfile profile;
};

/// Integrates from (alpha, ((2 n2 + 1) alpha - L) / (2 n1 + 1)) and classifies.
/// Integration failures come back as inconclusive with the error text.
Shot shoot(double alpha, double line_offset, const VortexParams& params, const ShooterControls& controls = {},
           double band = kDefaultBand);

ShotOutcome classify(double alpha, double line_offset, const VortexParams& params, const ShooterControls& controls = {},
                     double band = kDefaultBand);

enum class TargetKind { flux2, flux1, energy };

std::string to_string(TargetKind kind);

struct TargetSpec {
    TargetKind kind = TargetKind::flux2;
    double value = 0.0;  // Phi/(2 pi) for fluxes, E for energy
    double line_offset = 0.0;
    double tol = 1e-4;  // absolute in Phi/(2 pi); relative for energy
    double alpha_lo = -20.0;
    double alpha_hi = 20.0;
    double alpha_limit = 50.0;  // the box grows by `expand` on both sides up to this
    double expand = 10.0;
    double probe_step = 1.0;  // spacing of the bracketing grid
    double band = kDefaultBand;
    std::size_t max_iterations = 200;
    std::size_t jobs = 1;  // concurrent bracketing probes
};

/// Throws InvalidArgument when the target lies outside the open interval
/// admitted by the necessary conditions.
void validate_target(const TargetSpec& spec, const VortexParams& params);

struct TargetResult {
    Shot shot;
    double achieved = 0.0;  // in the units of spec.value
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t iterations = 0;
    std::vector<double> other_sign_changes;  // midpoints of further brackets seen on the probe grid
    std::vector<ShotOutcome> probes;
};

/// Bracket by outward probing from alpha = 0, then bisect to |achieved - target| <= tol.
TargetResult solve_target(const TargetSpec& spec, const VortexParams& params, const ShooterControls& controls = {});

/// Cross-check of a converged shot by fixed-step RK4 at `factor` times the
/// adaptive step count over the same radial window.
struct VerifyResult {
    double f1_inf = 0.0;
    double f2_inf = 0.0;
    double f2_difference = 0.0;  // fixed-step minus adaptive
    double f1_difference = 0.0;
    std::size_t steps = 0;
};

VerifyResult verify_shot(const Shot& shot, const VortexParams& params, std::size_t factor = 4);

/// Classifies every alpha of the grid on `jobs` threads; output follows grid order.
std::vector<ShotOutcome> scan(const std::vector<double>& alphas, double line_offset, const VortexParams& params,
                              const ShooterControls& controls = {}, std::size_t jobs = 1, double band = kDefaultBand);

/// alpha_min + i (alpha_max - alpha_min) / (steps - 1), i < steps.
std::vector<double> alpha_grid(double alpha_min, double alpha_max, std::size_t steps);

}  // namespace abjm
