#include "abjm/shooter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "abjm/functionals.hpp"
#include "abjm/ode.hpp"

namespace abjm {

namespace {

using State = OdeState<7>;  // U, V, p, q, int_euv, int_eu, int_ev

enum : std::size_t { kU, kV, kP, kQ, kA, kB, kC };

struct Rhs {
    int n1;
    int n2;
    State operator()(double s, const State& y) const {
        const double lu = y[kU] + 2.0 * n1 * s;
        const double lv = y[kV] + 2.0 * n2 * s;
        const double euv = std::exp(2.0 * s + lu + lv);
        const double eu = std::exp(2.0 * s + lu);
        const double ev = std::exp(2.0 * s + lv);
        return {y[kP], y[kQ], -(euv + ev), -(euv - eu), euv, eu, ev};
    }
};

State initial_state(const InitialData& init, double r_start, int n1, int n2) {
    const auto s = series_start(init, r_start, n1, n2);
    return {s.U, s.V, s.p, s.q, s.int_euv, s.int_eu, s.int_ev};
}

void record(RadialProfile& prof, double s, const State& y) {
    const double r = std::exp(s);
    prof.r.push_back(r);
    prof.U.push_back(y[kU]);
    prof.V.push_back(y[kV]);
    prof.dU.push_back(y[kP] / r);
    prof.dV.push_back(y[kQ] / r);
    prof.F1.push_back(-y[kP]);
    prof.F2.push_back(-y[kQ]);
    prof.int_euv.push_back(y[kA]);
    prof.int_eu.push_back(y[kB]);
    prof.int_ev.push_back(y[kC]);
}

bool all_finite(const State& y) {
    return std::all_of(y.begin(), y.end(), [](double x) { return std::isfinite(x); });
}

std::string describe_state(double s, const State& y) {
    std::ostringstream os;
    os.precision(17);
    os << "r=" << std::exp(s) << " U=" << y[kU] << " V=" << y[kV] << " F1=" << -y[kP] << " F2=" << -y[kQ];
    return os.str();
}

// Past the second zero of v, with both local tails small enough to ignore.
bool tail_converged(double s, const State& y, int n1, int n2, double tol) {
    const double f1 = -y[kP];
    const double f2 = -y[kQ];
    const double v = y[kV] + 2.0 * n2 * s;
    if (v >= 0.0 || f2 <= 2.0 * n2) return false;
    const double u = y[kU] + 2.0 * n1 * s;
    const auto t = tail_terms(std::exp(s), u, v, 0.5 * f1 - n1, 0.5 * f2 - n2);
    const double d1 = t.euv + t.ev;
    const double d2 = std::abs(t.euv - t.eu);
    return d1 <= tol * (1.0 + f1) && d2 <= tol * (1.0 + std::abs(f2)) && t.eu <= tol * (1.0 + y[kB]) &&
           t.ev <= tol * (1.0 + y[kC]);
}

void validate_controls(const ShooterControls& c) {
    if (!(c.rtol > 0.0) || !(c.atol > 0.0)) throw InvalidArgument("integrator tolerances must be positive");
    if (!(c.r_max > 0.0) || !(c.max_log_step > 0.0)) throw InvalidArgument("r_max and max_log_step must be positive");
    if (c.r_start < 0.0 || (c.r_start > 0.0 && c.r_start >= c.r_max)) throw InvalidArgument("bad r_start");
}

}  // namespace

std::string to_string(Termination t) {
    switch (t) {
        case Termination::tail_converged:
            return "tail_converged";
        case Termination::divergent_v:
            return "divergent_v";
        case Termination::r_max:
            return "r_max";
    }
    return "unknown";
}

InitialData InitialData::direct(double alpha1, double alpha2) {
    InitialData d;
    d.alpha1 = alpha1;
    d.alpha2 = alpha2;
    d.alpha = alpha1;
    return d;
}

InitialData InitialData::from_line(double alpha, double line_offset, int n1, int n2) {
    InitialData d;
    d.alpha1 = alpha;
    d.alpha2 = ((2.0 * n2 + 1.0) * alpha - line_offset) / (2.0 * n1 + 1.0);
    d.on_line = true;
    d.alpha = alpha;
    d.line_offset = line_offset;
    return d;
}

double RadialProfile::u(std::size_t i) const { return U[i] + 2.0 * n1 * std::log(r[i]); }
double RadialProfile::v(std::size_t i) const { return V[i] + 2.0 * n2 * std::log(r[i]); }

std::size_t RadialProfile::index_near(double radius) const {
    const auto it = std::lower_bound(r.begin(), r.end(), radius);
    if (it == r.begin()) return 0;
    if (it == r.end()) return r.size() - 1;
    const auto i = static_cast<std::size_t>(it - r.begin());
    return (std::log(radius) - std::log(r[i - 1]) < std::log(r[i]) - std::log(radius)) ? i - 1 : i;
}

SeriesStart series_start(const InitialData& init, double r_start, int n1, int n2) {
    if (!(r_start > 0.0)) throw InvalidArgument("series start radius must be positive");
    const int m = n1 + n2 + 1;
    const double lr = std::log(r_start);
    const double ka = 2.0 * n2 + 2.0, kb = 2.0 * n1 + 2.0, km = 2.0 * m;
    // r^k e^alpha / k
    const double ia = std::exp(init.alpha2 + ka * lr) / ka;
    const double ib = std::exp(init.alpha1 + kb * lr) / kb;
    const double im = std::exp(init.alpha1 + init.alpha2 + km * lr) / km;
    SeriesStart s;
    s.U = init.alpha1 - ia / ka - im / km;
    s.V = init.alpha2 + ib / kb - im / km;
    s.int_euv = im;
    s.int_eu = ib;
    s.int_ev = ia;
    s.p = -(im + ia);
    s.q = -(im - ib);
    return s;
}

double auto_r_start(const InitialData& init, int n1, int n2, double size) {
    const int m = n1 + n2 + 1;
    const double ka = 2.0 * n2 + 2.0, kb = 2.0 * n1 + 2.0, km = 2.0 * m;
    const double la = (std::log(size) + 2.0 * std::log(ka) - init.alpha2) / ka;
    const double lb = (std::log(size) + 2.0 * std::log(kb) - init.alpha1) / kb;
    const double lm = (std::log(size) + 2.0 * std::log(km) - init.alpha1 - init.alpha2) / km;
    const double lv = -(init.alpha2 + 1.0) / (2.0 * n2);  // keeps v(r_start) <= -1 so its first zero is resolved
    return std::clamp(std::exp(std::min({la, lb, lm, lv})), std::exp(-200.0), 1e-2);
}

RadialProfile integrate(const VortexParams& params, const InitialData& init, const ShooterControls& controls) {
    params.validate();
    validate_controls(controls);
    if (!std::isfinite(init.alpha1) || !std::isfinite(init.alpha2)) throw InvalidArgument("initial data not finite");
    const int n1 = params.n1, n2 = params.n2;
    const Rhs rhs{n1, n2};

    RadialProfile prof;
    prof.n1 = n1;
    prof.n2 = n2;
    prof.init = init;
    prof.rtol = controls.rtol;
    prof.atol = controls.atol;
    prof.r_start = controls.r_start > 0.0 ? controls.r_start : auto_r_start(init, n1, n2);
    if (prof.r_start >= controls.r_max) throw InvalidArgument("r_start must lie below r_max");

    std::vector<double> landings;
    for (double r : controls.landing_radii) {
        if (r > prof.r_start && r < controls.r_max) landings.push_back(std::log(r));
    }
    std::sort(landings.begin(), landings.end());
    std::size_t next_landing = 0;

    double s = std::log(prof.r_start);
    const double s_end = std::log(controls.r_max);
    State y = initial_state(init, prof.r_start, n1, n2);
    record(prof, s, y);

    double h = std::min(controls.max_log_step, 1e-2);
    prof.termination = Termination::r_max;
    while (s < s_end) {
        if (prof.steps + prof.rejected >= controls.max_steps) {
            throw ShooterError("step budget exhausted at " + describe_state(s, y));
        }
        while (next_landing < landings.size() && landings[next_landing] <= s) ++next_landing;
        double target = s_end;
        if (next_landing < landings.size()) target = std::min(target, landings[next_landing]);
        const double h_try = std::min({h, controls.max_log_step, target - s});
        const bool clamped = h_try < h;

        const auto step = dp45_step<7>(rhs, s, y, h_try);
        const double err = all_finite(step.y) ? scaled_error<7>(step.error, y, step.y, controls.rtol, controls.atol)
                                              : std::numeric_limits<double>::infinity();
        if (!(err <= 1.0)) {
            ++prof.rejected;
            h = h_try * (std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2);
            if (h < 1e-13 * (1.0 + std::abs(s))) {
                throw ShooterError("step size underflow at " + describe_state(s, y));
            }
            continue;
        }
        ++prof.steps;
        double local = 0.0;
        s = (h_try == target - s) ? target : s + h_try;
        y = step.y;
        for (std::size_t k = kU; k <= kQ; ++k) local = std::max(local, std::abs(step.error[k]));
        prof.error_estimate += local;
        record(prof, s, y);

        const double grow = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h = clamped ? std::max(h, h_try * grow) : h_try * grow;

        const double v = y[kV] + 2.0 * n2 * s;
        if (v > controls.v_cap && -y[kQ] < 2.0 * n2) {
            prof.termination = Termination::divergent_v;
            break;
        }
        if (tail_converged(s, y, n1, n2, controls.tail_tol)) {
            prof.termination = Termination::tail_converged;
            break;
        }
    }
    prof.terminal_r = prof.r.back();
    return prof;
}

RadialProfile integrate_fixed_rk4(const VortexParams& params, const InitialData& init, double r_start, double r_end,
                                  std::size_t steps, double v_cap) {
    params.validate();
    if (!(r_start > 0.0) || !(r_end > r_start) || steps == 0) throw InvalidArgument("bad fixed-step window");
    const int n1 = params.n1, n2 = params.n2;
    const Rhs rhs{n1, n2};
    RadialProfile prof;
    prof.n1 = n1;
    prof.n2 = n2;
    prof.init = init;
    prof.r_start = r_start;
    const double s0 = std::log(r_start);
    const double h = (std::log(r_end) - s0) / static_cast<double>(steps);
    State y = initial_state(init, r_start, n1, n2);
    record(prof, s0, y);
    prof.termination = Termination::r_max;
    for (std::size_t i = 1; i <= steps; ++i) {
        const double s = s0 + h * static_cast<double>(i - 1);
        y = rk4_step<7>(rhs, s, y, h);
        if (!all_finite(y)) throw ShooterError("fixed-step integration overflow at " + describe_state(s, y));
        const double s_new = (i == steps) ? std::log(r_end) : s0 + h * static_cast<double>(i);
        record(prof, s_new, y);
        ++prof.steps;
        if (y[kV] + 2.0 * n2 * s_new > v_cap && -y[kQ] < 2.0 * n2) {
            prof.termination = Termination::divergent_v;
            break;
        }
    }
    prof.terminal_r = prof.r.back();
    return prof;
}

double continuity_check(const VortexParams& params, const InitialData& init, double delta, double r_hi,
                        const ShooterControls& controls) {
    InitialData moved = InitialData::direct(init.alpha1 + delta, init.alpha2 + delta);
    ShooterControls c = controls;
    c.r_start = controls.r_start > 0.0
                    ? controls.r_start
                    : std::min(auto_r_start(init, params.n1, params.n2), auto_r_start(moved, params.n1, params.n2));
    c.r_max = std::max(r_hi * 1.01, 2.0 * c.r_start);
    c.landing_radii.clear();
    const int points = 60;
    for (int i = 1; i <= points; ++i) {
        c.landing_radii.push_back(c.r_start * std::pow(r_hi / c.r_start, double(i) / points));
    }
    const auto a = integrate(params, init, c);
    const auto b = integrate(params, moved, c);
    double worst = std::max(std::abs(a.U[0] - b.U[0]), std::abs(a.V[0] - b.V[0]));
    for (double r : c.landing_radii) {
        const auto ia = a.index_near(r);
        const auto ib = b.index_near(r);
        if (std::abs(a.r[ia] - r) > 1e-12 * r || std::abs(b.r[ib] - r) > 1e-12 * r) continue;  // run ended early
        worst = std::max({worst, std::abs(a.U[ia] - b.U[ib]), std::abs(a.V[ia] - b.V[ib])});
    }
    return worst;
}

}  // namespace abjm
