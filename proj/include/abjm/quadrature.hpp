#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace abjm {

/// Raised when an adaptive quadrature cannot reach its tolerance.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QuadratureTolerance {
    double abs = 1e-10;
    double rel = 1e-8;
    unsigned max_depth = 20;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity. `label` names the
/// integral in the error message.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureTolerance& tol = {}, const std::string& label = "integral");

/// Fixed 20-point Gauss-Legendre rule applied to K integrands at once.
/// Intended for short sub-intervals on which all integrands are smooth.
template <std::size_t K, class F>
std::array<double, K> gauss_legendre(F&& f, double a, double b);

namespace detail {
const std::array<double, 10>& gl20_abscissa();
const std::array<double, 10>& gl20_weights();
}  // namespace detail

template <std::size_t K, class F>
std::array<double, K> gauss_legendre(F&& f, double a, double b) {
    std::array<double, K> sum{};
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const auto& x = detail::gl20_abscissa();
    const auto& w = detail::gl20_weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::array<double, K> lo = f(mid - half * x[i]);
        const std::array<double, K> hi = f(mid + half * x[i]);
        for (std::size_t j = 0; j < K; ++j) sum[j] += w[i] * (lo[j] + hi[j]);
    }
    for (auto& s : sum) s *= half;
    return sum;
}

}  // namespace abjm
