#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <utility>

namespace abjm {

template <std::size_t N>
using OdeState = std::array<double, N>;

/// Result of one embedded Dormand-Prince 5(4) step.
template <std::size_t N>
struct Dp45Step {
    OdeState<N> y;      // fifth-order solution
    OdeState<N> error;  // difference between the embedded solutions
};

namespace detail {

template <std::size_t N>
OdeState<N> axpy(const OdeState<N>& y, double h, std::initializer_list<std::pair<double, const OdeState<N>*>> terms) {
    OdeState<N> out = y;
    for (const auto& [c, k] : terms) {
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

}  // namespace detail

/// One Dormand-Prince step from (t, y) with step h; `f(t, y)` returns dy/dt.
template <std::size_t N, class F>
Dp45Step<N> dp45_step(F&& f, double t, const OdeState<N>& y, double h) {
    using detail::axpy;
    const OdeState<N> k1 = f(t, y);
    const OdeState<N> k2 = f(t + h / 5.0, axpy<N>(y, h, {{1.0 / 5.0, &k1}}));
    const OdeState<N> k3 = f(t + 3.0 * h / 10.0, axpy<N>(y, h, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
    const OdeState<N> k4 =
        f(t + 4.0 * h / 5.0, axpy<N>(y, h, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
    const OdeState<N> k5 =
        f(t + 8.0 * h / 9.0,
          axpy<N>(y, h,
                  {{19372.0 / 6561.0, &k1}, {-25360.0 / 2187.0, &k2}, {64448.0 / 6561.0, &k3}, {-212.0 / 729.0, &k4}}));
    const OdeState<N> k6 = f(t + h, axpy<N>(y, h,
                                            {{9017.0 / 3168.0, &k1},
                                             {-355.0 / 33.0, &k2},
                                             {46732.0 / 5247.0, &k3},
                                             {49.0 / 176.0, &k4},
                                             {-5103.0 / 18656.0, &k5}}));
    Dp45Step<N> out;
    out.y = axpy<N>(y, h,
                    {{35.0 / 384.0, &k1},
                     {500.0 / 1113.0, &k3},
                     {125.0 / 192.0, &k4},
                     {-2187.0 / 6784.0, &k5},
                     {11.0 / 84.0, &k6}});
    const OdeState<N> k7 = f(t + h, out.y);
    for (std::size_t i = 0; i < N; ++i) {
        out.error[i] = h * (71.0 / 57600.0 * k1[i] - 71.0 / 16695.0 * k3[i] + 71.0 / 1920.0 * k4[i] -
                            17253.0 / 339200.0 * k5[i] + 22.0 / 525.0 * k6[i] - 1.0 / 40.0 * k7[i]);
    }
    return out;
}

/// Max-norm of the error scaled by atol + rtol * max(|y0|, |y1|).
template <std::size_t N>
double scaled_error(const OdeState<N>& err, const OdeState<N>& y0, const OdeState<N>& y1, double rtol, double atol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        worst = std::max(worst, std::abs(err[i]) / sc);
    }
    return worst;
}

/// Classical fixed-step fourth-order Runge-Kutta step.
template <std::size_t N, class F>
OdeState<N> rk4_step(F&& f, double t, const OdeState<N>& y, double h) {
    using detail::axpy;
    const OdeState<N> k1 = f(t, y);
    const OdeState<N> k2 = f(t + h / 2, axpy<N>(y, h, {{0.5, &k1}}));
    const OdeState<N> k3 = f(t + h / 2, axpy<N>(y, h, {{0.5, &k2}}));
    const OdeState<N> k4 = f(t + h, axpy<N>(y, h, {{1.0, &k3}}));
    return axpy<N>(y, h, {{1.0 / 6.0, &k1}, {1.0 / 3.0, &k2}, {1.0 / 3.0, &k3}, {1.0 / 6.0, &k4}});
}

}  // namespace abjm
