#include "abjm/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace abjm {

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureTolerance& tol,
                           const std::string& label) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    double error = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    try {
        // The rule only knows a relative stopping test; a single-pass L1
        // estimate turns the absolute tolerance into an equivalent one.
        Rule::integrate(f, a, b, 0, 1.0, &error, &l1);
        double rel = std::max(tol.rel, 4.0 * std::numeric_limits<double>::epsilon());
        if (l1 > 0.0) rel = std::max(rel, 0.5 * tol.abs / l1);
        value = Rule::integrate(f, a, b, tol.max_depth, rel, &error, &l1);
    } catch (const std::exception& e) {
        std::ostringstream os;
        os << label << " on [" << a << ", " << b << "]: " << e.what();
        throw QuadratureError(os.str());
    }
    if (!std::isfinite(value) || error > std::max(tol.abs, tol.rel * l1)) {
        std::ostringstream os;
        os << label << " on [" << a << ", " << b << "] did not converge: value=" << value << " error estimate=" << error
           << " (abs tol " << tol.abs << ", rel tol " << tol.rel << ")";
        throw QuadratureError(os.str());
    }
    return {value, error};
}

namespace detail {

const std::array<double, 10>& gl20_abscissa() {
    static const std::array<double, 10> x = [] {
        std::array<double, 10> out{};
        const auto& src = boost::math::quadrature::gauss<double, 20>::abscissa();
        std::copy(src.begin(), src.end(), out.begin());
        return out;
    }();
    return x;
}

const std::array<double, 10>& gl20_weights() {
    static const std::array<double, 10> w = [] {
        std::array<double, 10> out{};
        const auto& src = boost::math::quadrature::gauss<double, 20>::weights();
        std::copy(src.begin(), src.end(), out.begin());
        return out;
    }();
    return w;
}

}  // namespace detail
}  // namespace abjm
