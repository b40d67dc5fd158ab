#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "abjm/quadrature.hpp"

namespace abjm {

/// Log-spaced layout of a cumulative integration table on [0, t_max].
struct CumulativeGrid {
    double t_min = 1e-6;  // first node; [0, t_min] is integrated adaptively
    double t_max = 1e6;
    double log_step = 0.05;
};

/// Cumulative integrals G_j(r) = int_0^r g_j(t) dt of K integrands, cached on a
/// log grid and completed with a local Gauss-Legendre rule inside one cell.
///
/// The table is filled once in the constructor and read-only afterwards, so a
/// const instance can be shared between threads.
template <std::size_t K>
class CumulativeTable {
  public:
    using Values = std::array<double, K>;
    using Integrand = std::function<Values(double)>;

    CumulativeTable(Integrand g, const CumulativeGrid& grid = {}) : g_(std::move(g)), grid_(grid) {
        const double s0 = std::log(grid_.t_min);
        const double s1 = std::log(grid_.t_max);
        const auto cells = static_cast<std::size_t>(std::ceil((s1 - s0) / grid_.log_step));
        nodes_.reserve(cells + 1);
        for (std::size_t i = 0; i <= cells; ++i) {
            nodes_.push_back(std::exp(s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(cells)));
        }
        cum_.resize(nodes_.size());
        cum_[0] = head(grid_.t_min);
        for (std::size_t i = 1; i < nodes_.size(); ++i) {
            const Values cell = gauss_legendre<K>(g_, nodes_[i - 1], nodes_[i]);
            for (std::size_t j = 0; j < K; ++j) cum_[i][j] = cum_[i - 1][j] + cell[j];
        }
    }

    /// G(r) for r >= 0.
    Values at(double r) const {
        if (r <= 0.0) return Values{};
        if (r <= nodes_.front()) return head(r);
        if (r >= nodes_.back()) {
            Values out = cum_.back();
            add_adaptive(out, nodes_.back(), r);
            return out;
        }
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
        const auto i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        Values out = cum_[i];
        const Values part = gauss_legendre<K>(g_, nodes_[i], r);
        for (std::size_t j = 0; j < K; ++j) out[j] += part[j];
        return out;
    }

    /// G(infinity); each integrand must be integrable at infinity.
    Values total() const {
        Values out = cum_.back();
        add_adaptive(out, nodes_.back(), std::numeric_limits<double>::infinity());
        return out;
    }

    const Integrand& integrand() const { return g_; }

  private:
    Values head(double r) const {
        Values out{};
        add_adaptive(out, 0.0, r);
        return out;
    }

    // Tails toward infinity are integrated in s = ln(t / a), where algebraic
    // decay becomes exponential.
    void add_adaptive(Values& out, double a, double b) const {
        const QuadratureTolerance tol{1e-14, 1e-12, 18};
        for (std::size_t j = 0; j < K; ++j) {
            const std::string label = "cumulative integrand " + std::to_string(j);
            if (std::isinf(b) && a > 0.0) {
                out[j] += integrate(
                              [&](double s) {
                                  const double t = a * std::exp(s);
                                  return t == std::numeric_limits<double>::infinity() ? 0.0 : g_(t)[j] * t;
                              },
                              0.0, b, tol, label)
                              .value;
            } else {
                out[j] += integrate([&](double t) { return g_(t)[j]; }, a, b, tol, label).value;
            }
        }
    }

    Integrand g_;
    CumulativeGrid grid_;
    std::vector<double> nodes_;
    std::vector<Values> cum_;
};

}  // namespace abjm
