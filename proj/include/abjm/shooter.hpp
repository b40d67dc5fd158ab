#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "abjm/params.hpp"

namespace abjm {

/// Integration failure: step-size underflow or non-finite state.
class ShooterError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Cauchy data U(0) = alpha1, V(0) = alpha2 of the regular parts.
struct InitialData {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    bool on_line = false;      // built from (alpha, line_offset)
    double alpha = 0.0;        // shooting parameter when on_line
    double line_offset = 0.0;  // (2 n2 + 1) alpha1 - (2 n1 + 1) alpha2

    static InitialData direct(double alpha1, double alpha2);
    /// alpha1 = alpha, alpha2 = ((2 n2 + 1) alpha - line_offset) / (2 n1 + 1).
    static InitialData from_line(double alpha, double line_offset, int n1, int n2);
};

struct ShooterControls {
    double rtol = 1e-10;
    double atol = 1e-12;
    double r_max = 1e6;
    double v_cap = 30.0;
    double max_log_step = 0.05;  // largest step in ln r, so checkpoints stay dense
    double r_start = 0.0;        // 0 selects the radius automatically
    double tail_tol = 1e-13;     // stop once every tail correction is below this (relative)
    std::size_t max_steps = 1'000'000;
    std::vector<double> landing_radii;  // radii that become checkpoints exactly
};

enum class Termination { tail_converged, divergent_v, r_max };

std::string to_string(Termination t);

/// Integrated trajectory on the accepted-step grid, starting at r_start > 0.
///
/// F1 = -r U', F2 = -r V'. The three cumulative integrals int_0^r t e^{u+v},
/// t e^u and t e^v are carried along; F1 = int_euv + int_ev and
/// F2 = int_euv - int_eu hold to round-off.
struct RadialProfile {
    int n1 = 1;
    int n2 = 1;
    InitialData init;
    double rtol = 0.0;
    double atol = 0.0;
    double r_start = 0.0;

    std::vector<double> r, U, V, dU, dV, F1, F2;
    std::vector<double> int_euv, int_eu, int_ev;

    Termination termination = Termination::r_max;
    double terminal_r = 0.0;
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double error_estimate = 0.0;  // sum of local error norms of accepted steps

    std::size_t size() const { return r.size(); }
    double u(std::size_t i) const;  // U + 2 n1 ln r
    double v(std::size_t i) const;  // V + 2 n2 ln r
    /// Index of the checkpoint closest to r.
    std::size_t index_near(double radius) const;
};

/// Leading-order solution near the origin.
struct SeriesStart {
    double U, V, p, q;  // p = r U', q = r V'
    double int_euv, int_eu, int_ev;
};

SeriesStart series_start(const InitialData& init, double r_start, int n1, int n2);

/// Largest radius whose series corrections are all below `size` in absolute
/// value and where v <= -1, clamped to [e^-200, 1e-2].
double auto_r_start(const InitialData& init, int n1, int n2, double size = 1e-7);

/// Adaptive Dormand-Prince integration in s = ln r.
RadialProfile integrate(const VortexParams& params, const InitialData& init, const ShooterControls& controls = {});

/// Fixed-step classical RK4 over [r_start, r_end] in ln r, recording every step.
RadialProfile integrate_fixed_rk4(const VortexParams& params, const InitialData& init, double r_start, double r_end,
                                  std::size_t steps, double v_cap = 30.0);

/// Sup of |U - U'| and |V - V'| over radii in [r_start, r_hi] between the
/// runs from (alpha1, alpha2) and (alpha1 + delta, alpha2 + delta).
double continuity_check(const VortexParams& params, const InitialData& init, double delta, double r_hi = 5.0,
                        const ShooterControls& controls = {});

}  // namespace abjm
