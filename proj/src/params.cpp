#include "abjm/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace abjm {

void VortexParams::validate() const {
    if (n1 < 1 || n2 < 1) {
        // int t e^{u0} dt diverges for a zero multiplicity
        throw InvalidArgument("winding multiplicities must be >= 1 (got n1=" + std::to_string(n1) +
                              ", n2=" + std::to_string(n2) + ")");
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("sigma must be a finite positive number");
    }
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw InvalidArgument("k must be a finite positive number");
    }
    if (n_mat < 2) {
        throw InvalidArgument("matrix size N must be >= 2 (got " + std::to_string(n_mat) + ")");
    }
}

double lambda_of(const VortexParams& params) { return 4.0 * params.sigma * params.sigma; }

double flux_from_functional(double f_inf) { return std::numbers::pi * f_inf; }

double flux_over_2pi(double f_inf) { return 0.5 * f_inf; }

double energy_prefactor(const VortexParams& params) {
    const double n = params.n_mat;
    return n * (n - 1.0) * params.sigma * params.sigma * params.sigma * params.k;
}

double energy_from_integrals(const VortexParams& params, double int_eu, double int_ev) {
    return energy_prefactor(params) * (int_eu + int_ev);
}

EnergyConventions energy_conventions(const VortexParams& params, double int_eu, double int_ev) {
    const double n = params.n_mat;
    const double total = int_eu + int_ev;
    const double base = n * (n - 1.0) * params.sigma * params.k * total;
    return {energy_from_integrals(params, int_eu, int_ev), base / 4.0, base / 2.0};
}

std::string describe(const VortexParams& params) {
    std::ostringstream os;
    os << "n1=" << params.n1 << " n2=" << params.n2 << " sigma=" << params.sigma << " k=" << params.k
       << " N=" << params.n_mat;
    return os.str();
}

}  // namespace abjm
