#include "abjm/targeting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace abjm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_from_estimate(ShotOutcome& out, const VortexParams& params, const TailEstimate& est) {
    out.estimate = est;
    out.verdict = est.decided;
    out.f1_inf = est.f1_inf;
    out.f2_inf = est.f2_inf;
    out.beta1 = est.beta1;
    out.beta2 = est.beta2;
    out.energy = est.decided == Verdict::integrable ? energy_from_integrals(params, est.int_eu, est.int_ev) : kInf;
    out.diagnostic = est.diagnostic;
}

Shot shoot_once(const InitialData& init, const VortexParams& params, const ShooterControls& controls, double band) {
    Shot shot;
    shot.outcome.alpha = init.alpha;
    shot.outcome.init = init;
    try {
        shot.profile = integrate(params, init, controls);
        fill_from_estimate(shot.outcome, params, tail_extrapolate(shot.profile, band));
        shot.outcome.termination = shot.profile.termination;
    } catch (const ShooterError& e) {
        shot.outcome.verdict = Verdict::inconclusive;
        shot.outcome.f1_inf = shot.outcome.f2_inf = kNaN;
        shot.outcome.beta1 = shot.outcome.beta2 = kNaN;
        shot.outcome.energy = kNaN;
        shot.outcome.diagnostic = std::string("integration failed: ") + e.what();
    }
    return shot;
}

// Signed distance to the target; NaN when the shot decides nothing.
double target_gap(const ShotOutcome& o, const TargetSpec& spec) {
    switch (o.verdict) {
        case Verdict::inconclusive:
            return kNaN;
        case Verdict::non_integrable:
            // divergence means F2(inf) below its admissible range and F1(inf), E infinite
            return spec.kind == TargetKind::flux2 ? -kInf : kInf;
        case Verdict::integrable:
            break;
    }
    switch (spec.kind) {
        case TargetKind::flux2:
            return o.flux2_over_2pi() - spec.value;
        case TargetKind::flux1:
            return o.flux1_over_2pi() - spec.value;
        case TargetKind::energy:
            return std::log(o.energy) - std::log(spec.value);
    }
    return kNaN;
}

double achieved_value(const ShotOutcome& o, TargetKind kind) {
    switch (kind) {
        case TargetKind::flux2:
            return o.flux2_over_2pi();
        case TargetKind::flux1:
            return o.flux1_over_2pi();
        case TargetKind::energy:
            return o.energy;
    }
    return kNaN;
}

bool on_target(const ShotOutcome& o, const TargetSpec& spec) {
    if (o.verdict != Verdict::integrable) return false;
    const double a = achieved_value(o, spec.kind);
    const double tol = spec.kind == TargetKind::energy ? spec.tol * spec.value : spec.tol;
    return std::abs(a - spec.value) <= tol;
}

std::vector<double> probe_points(double lo, double hi, double step) {
    std::vector<double> out;
    const auto first = static_cast<long>(std::ceil(lo / step - 1e-12));
    const auto last = static_cast<long>(std::floor(hi / step + 1e-12));
    for (long i = first; i <= last; ++i) out.push_back(static_cast<double>(i) * step);
    return out;
}

struct Bracket {
    double lo, hi;
};

// Sign changes between consecutive decided probes, ordered by distance of the
// nearer endpoint from alpha = 0.
std::vector<Bracket> sign_changes(const std::map<double, ShotOutcome>& probes, const TargetSpec& spec) {
    std::vector<Bracket> out;
    const ShotOutcome* prev = nullptr;
    double prev_gap = 0.0;
    for (const auto& [alpha, o] : probes) {
        const double g = target_gap(o, spec);
        if (std::isnan(g)) continue;
        if (prev && ((prev_gap < 0.0) != (g < 0.0))) out.push_back({prev->alpha, alpha});
        prev = &o;
        prev_gap = g;
    }
    std::stable_sort(out.begin(), out.end(), [](const Bracket& a, const Bracket& b) {
        auto near = [](const Bracket& x) {
            return x.lo <= 0.0 && x.hi >= 0.0 ? 0.0 : std::min(std::abs(x.lo), std::abs(x.hi));
        };
        return near(a) < near(b);
    });
    return out;
}

std::string describe_target(const TargetSpec& spec) {
    std::ostringstream os;
    os << to_string(spec.kind) << " = " << spec.value << " on L = " << spec.line_offset;
    return os.str();
}

}  // namespace

Shot shoot(double alpha, double line_offset, const VortexParams& params, const ShooterControls& controls, double band) {
    params.validate();
    const auto init = InitialData::from_line(alpha, line_offset, params.n1, params.n2);
    Shot shot = shoot_once(init, params, controls, band);
    if (shot.outcome.verdict == Verdict::inconclusive) {
        ShooterControls tight = controls;
        tight.rtol *= 0.1;
        tight.atol *= 0.1;
        Shot retry = shoot_once(init, params, tight, band);
        retry.outcome.tightened = true;
        if (retry.outcome.verdict == Verdict::inconclusive && !shot.outcome.diagnostic.empty()) {
            retry.outcome.diagnostic += " (also at 10x tighter tolerances)";
        }
        return retry;
    }
    return shot;
}

ShotOutcome classify(double alpha, double line_offset, const VortexParams& params, const ShooterControls& controls,
                     double band) {
    return shoot(alpha, line_offset, params, controls, band).outcome;
}

std::string to_string(TargetKind kind) {
    switch (kind) {
        case TargetKind::flux2:
            return "flux2";
        case TargetKind::flux1:
            return "flux1";
        case TargetKind::energy:
            return "energy";
    }
    return "unknown";
}

void validate_target(const TargetSpec& spec, const VortexParams& params) {
    params.validate();
    const double m = params.total_order();
    const double v = spec.value;
    std::ostringstream os;
    switch (spec.kind) {
        case TargetKind::flux2:
            if (!(v > params.n2 + 1.0 && v < m)) {
                os << "flux2 target " << v << " outside the open interval (" << params.n2 + 1 << ", " << m << ")";
            }
            break;
        case TargetKind::flux1:
            if (!(v > m) || !std::isfinite(v)) os << "flux1 target " << v << " must exceed " << m;
            break;
        case TargetKind::energy:
            if (!(v > 0.0) || !std::isfinite(v)) os << "energy target " << v << " must be positive and finite";
            break;
    }
    if (!(spec.tol > 0.0)) os << (os.tellp() > 0 ? "; " : "") << "tolerance must be positive";
    if (!(spec.alpha_lo < spec.alpha_hi) || !(spec.probe_step > 0.0) || !(spec.expand >= 0.0) ||
        !(spec.alpha_limit >= std::max(std::abs(spec.alpha_lo), std::abs(spec.alpha_hi)))) {
        os << (os.tellp() > 0 ? "; " : "") << "bad search box";
    }
    if (!(spec.band >= 0.0)) os << (os.tellp() > 0 ? "; " : "") << "band must be non-negative";
    if (os.tellp() > 0) throw InvalidArgument(os.str());
}

TargetResult solve_target(const TargetSpec& spec, const VortexParams& params, const ShooterControls& controls) {
    validate_target(spec, params);
    const double L = spec.line_offset;

    std::map<double, ShotOutcome> probes;
    auto probe_box = [&](double lo, double hi) {
        std::vector<double> todo;
        for (double a : probe_points(lo, hi, spec.probe_step)) {
            if (!probes.count(a)) todo.push_back(a);
        }
        const auto outcomes = scan(todo, L, params, controls, spec.jobs, spec.band);
        for (std::size_t i = 0; i < todo.size(); ++i) probes.emplace(todo[i], outcomes[i]);
    };

    double lo = spec.alpha_lo, hi = spec.alpha_hi;
    probe_box(lo, hi);
    std::vector<Bracket> brackets = sign_changes(probes, spec);
    while (brackets.empty() && (lo > -spec.alpha_limit || hi < spec.alpha_limit) && spec.expand > 0.0) {
        lo = std::max(lo - spec.expand, -spec.alpha_limit);
        hi = std::min(hi + spec.expand, spec.alpha_limit);
        probe_box(lo, hi);
        brackets = sign_changes(probes, spec);
    }
    if (brackets.empty()) {
        std::ostringstream os;
        os << "no sign change for " << describe_target(spec) << " with alpha in [" << lo << ", " << hi << "]";
        throw TargetUnreachable(os.str());
    }

    TargetResult result;
    for (const auto& [alpha, o] : probes) result.probes.push_back(o);
    for (std::size_t i = 1; i < brackets.size(); ++i) {
        result.other_sign_changes.push_back(0.5 * (brackets[i].lo + brackets[i].hi));
    }

    double a = brackets.front().lo, b = brackets.front().hi;
    const bool rising = target_gap(probes.at(a), spec) < 0.0;

    for (double end : {a, b}) {
        if (on_target(probes.at(end), spec)) {
            result.shot = shoot(end, L, params, controls, spec.band);
            result.achieved = achieved_value(result.shot.outcome, spec.kind);
            result.bracket_lo = a;
            result.bracket_hi = b;
            return result;
        }
    }

    for (std::size_t it = 1; it <= spec.max_iterations; ++it) {
        const double mid = 0.5 * (a + b);
        if (!(mid > a && mid < b)) break;  // bracket exhausted in double precision
        Shot shot = shoot(mid, L, params, controls, spec.band);
        result.iterations = it;
        const double g = target_gap(shot.outcome, spec);
        if (std::isnan(g)) {
            std::ostringstream os;
            os << "inconclusive shot at alpha = " << mid << " inside [" << a << ", " << b << "] for "
               << describe_target(spec) << ": " << shot.outcome.diagnostic
               << "; rerun with tighter integrator tolerances or a narrower band";
            throw PrecisionError(os.str());
        }
        if (on_target(shot.outcome, spec)) {
            result.achieved = achieved_value(shot.outcome, spec.kind);
            result.shot = std::move(shot);
            result.bracket_lo = a;
            result.bracket_hi = b;
            return result;
        }
        if ((g < 0.0) == rising) {
            a = mid;
        } else {
            b = mid;
        }
    }
    std::ostringstream os;
    os << "bisection for " << describe_target(spec) << " stalled in [" << a << ", " << b << "] after "
       << result.iterations << " steps without reaching tolerance " << spec.tol;
    throw PrecisionError(os.str());
}

VerifyResult verify_shot(const Shot& shot, const VortexParams& params, std::size_t factor) {
    const auto& p = shot.profile;
    if (p.size() < 2) throw InvalidArgument("shot has no profile to verify");
    VerifyResult out;
    out.steps = std::max<std::size_t>(factor * p.steps, 1);
    const auto fixed = integrate_fixed_rk4(params, p.init, p.r_start, p.terminal_r, out.steps);
    const auto est = tail_extrapolate(fixed, shot.outcome.estimate.band);
    out.f1_inf = est.f1_inf;
    out.f2_inf = est.f2_inf;
    out.f1_difference = est.f1_inf - shot.outcome.f1_inf;
    out.f2_difference = est.f2_inf - shot.outcome.f2_inf;
    return out;
}

std::vector<ShotOutcome> scan(const std::vector<double>& alphas, double line_offset, const VortexParams& params,
                              const ShooterControls& controls, std::size_t jobs, double band) {
    params.validate();
    std::vector<ShotOutcome> out(alphas.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < alphas.size(); i = next++) {
            try {
                out[i] = classify(alphas[i], line_offset, params, controls, band);
            } catch (const std::exception& e) {
                out[i].alpha = alphas[i];
                out[i].init = InitialData::from_line(alphas[i], line_offset, params.n1, params.n2);
                out[i].verdict = Verdict::inconclusive;
                out[i].f1_inf = out[i].f2_inf = out[i].beta1 = out[i].beta2 = out[i].energy = kNaN;
                out[i].diagnostic = e.what();
            }
        }
    };
    const std::size_t n = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(alphas.size(), 1));
    if (n == 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

std::vector<double> alpha_grid(double alpha_min, double alpha_max, std::size_t steps) {
    if (steps == 0) throw InvalidArgument("alpha grid needs at least one point");
    if (!std::isfinite(alpha_min) || !std::isfinite(alpha_max) || alpha_max < alpha_min) {
        throw InvalidArgument("alpha grid bounds must be finite and ordered");
    }
    if (steps == 1) return {alpha_min};
    std::vector<double> out(steps);
    const double h = (alpha_max - alpha_min) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i) out[i] = alpha_min + h * static_cast<double>(i);
    out.back() = alpha_max;
    return out;
}

}  // namespace abjm
