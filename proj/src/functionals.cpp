#include "abjm/functionals.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace abjm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_R^inf t e^{w(R)} (t/R)^{-2b} dt
double power_tail(double r, double w, double b) {
    if (!(2.0 * b - 2.0 > 0.0)) return kInf;
    return std::exp(2.0 * std::log(r) + w) / (2.0 * b - 2.0);
}

double finite_or_zero(double x) { return std::isfinite(x) ? x : 0.0; }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::integrable:
            return "integrable";
        case Verdict::non_integrable:
            return "non_integrable";
        case Verdict::inconclusive:
            return "inconclusive";
    }
    return "unknown";
}

TailTerms tail_terms(double r, double u, double v, double b1, double b2) {
    return {power_tail(r, u + v, b1 + b2), power_tail(r, u, b1), power_tail(r, v, b2)};
}

TailEstimate tail_extrapolate(const RadialProfile& p, double band) {
    if (p.size() == 0) throw InvalidArgument("empty profile");
    if (!(band >= 0.0)) throw InvalidArgument("band must be non-negative");
    TailEstimate est;
    est.band = band;
    const std::size_t i = p.size() - 1;
    const double r = p.r[i];
    const double u = p.u(i), v = p.v(i);
    const double f1 = p.F1[i], f2 = p.F2[i];
    const int n1 = p.n1, n2 = p.n2;
    est.terminal_r = r;
    const double floor_err = p.error_estimate;

    if (p.termination == Termination::divergent_v) {
        // v grows without bound: e^v is not integrable and F2 stays below 2 n2.
        const auto t = tail_terms(r, u, v, 0.5 * f1 - n1, -kInf);
        est.f1_inf = kInf;
        est.f2_inf = f2;
        est.beta1 = kInf;
        est.beta2 = 0.5 * f2 - n2;
        est.int_euv = p.int_euv[i];
        est.int_eu = p.int_eu[i] + finite_or_zero(t.eu);
        est.int_ev = kInf;
        est.uncertainty = {kInf, floor_err, floor_err, floor_err, kInf};
        est.decided = Verdict::non_integrable;
        std::ostringstream os;
        os << "v exceeded its cap at r=" << r << " with F2=" << f2 << " < 2 n2";
        est.diagnostic = os.str();
        return est;
    }

    const auto first = tail_terms(r, u, v, 0.5 * f1 - n1, 0.5 * f2 - n2);
    const double f1_first = f1 + first.euv + first.ev;
    const double f2_first = f2 + finite_or_zero(first.euv) - finite_or_zero(first.eu);
    const double b1 = std::isfinite(f1_first) ? 0.5 * f1_first - n1 : kInf;
    const double b2 = 0.5 * f2_first - n2;
    const auto second = tail_terms(r, u, v, b1, b2);

    est.f1_inf = f1 + second.euv + second.ev;
    est.f2_inf = f2 + finite_or_zero(second.euv) - finite_or_zero(second.eu);
    est.beta1 = 0.5 * est.f1_inf - n1;
    est.beta2 = 0.5 * est.f2_inf - n2;
    est.int_euv = p.int_euv[i] + second.euv;
    est.int_eu = p.int_eu[i] + second.eu;
    est.int_ev = p.int_ev[i] + second.ev;

    auto spread = [&](double a, double b, double value) {
        if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
        return std::abs(a - b) + 10.0 * p.rtol * (1.0 + std::abs(value)) + floor_err;
    };
    est.uncertainty.f1 = spread(first.euv + first.ev, second.euv + second.ev, est.f1_inf);
    est.uncertainty.f2 = spread(first.euv - first.eu, second.euv - second.eu, est.f2_inf);
    est.uncertainty.int_euv = spread(first.euv, second.euv, est.int_euv);
    est.uncertainty.int_eu = spread(first.eu, second.eu, est.int_eu);
    est.uncertainty.int_ev = spread(first.ev, second.ev, est.int_ev);

    const double threshold = 2.0 * (n2 + 1);
    std::ostringstream os;
    if (est.f2_inf > threshold + band && std::isfinite(est.f1_inf)) {
        if (est.uncertainty.f2 > band) {
            est.decided = Verdict::inconclusive;
            os << "F2(inf) uncertainty " << est.uncertainty.f2 << " exceeds the band";
        } else {
            est.decided = Verdict::integrable;
        }
    } else if (est.f2_inf < threshold - band) {
        est.decided = Verdict::non_integrable;
        os << "F2(inf)=" << est.f2_inf << " below 2 (n2 + 1)";
    } else {
        est.decided = Verdict::inconclusive;
        os << "F2(inf)=" << est.f2_inf << " within " << band << " of 2 (n2 + 1)";
        if (!std::isfinite(est.f1_inf)) os << "; e^v tail not integrable at r=" << r;
    }
    est.diagnostic = os.str();
    return est;
}

LimitIntegrals limit_integrals(const TailEstimate& e, int n1, int n2) {
    const double b1 = e.beta1, b2 = e.beta2;
    return {2.0 * (n1 + 1) * (n2 + 1) - 2.0 * (b1 - 1) * (b2 - 1), 2.0 * n1 * (n2 + 1) - 2.0 * b1 * (b2 - 1),
            2.0 * b2 * (b1 - 1) - 2.0 * n2 * (n1 + 1)};
}

SlopeFit fit_log_slope(const RadialProfile& p, ProfileField field, double decades) {
    SlopeFit fit;
    if (p.size() == 0) return fit;
    const double r_lo = p.r.back() * std::pow(10.0, -decades);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p.r[i] < r_lo) continue;
        const double x = std::log(p.r[i]);
        const double u = p.u(i), v = p.v(i);
        double y = 0.0;
        switch (field) {
            case ProfileField::u:
                y = u;
                break;
            case ProfileField::v:
                y = v;
                break;
            case ProfileField::log_f12_1:
                y = v + std::log1p(std::exp(u));
                break;
            case ProfileField::log_abs_f12_2:
                y = u + std::log(std::abs(std::expm1(v)));
                break;
            case ProfileField::log_dphi1:
                y = u + 2.0 * std::log(std::abs(2.0 * p.n1 - p.F1[i]) / p.r[i]);
                break;
            case ProfileField::log_dphi2:
                y = v + 2.0 * std::log(std::abs(2.0 * p.n2 - p.F2[i]) / p.r[i]);
                break;
        }
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++fit.points;
    }
    if (fit.points < 2) return fit;
    const double n = static_cast<double>(fit.points);
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace abjm
