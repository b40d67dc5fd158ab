#pragma once

#include <stdexcept>
#include <string>

namespace abjm {

/// Thrown for parameter sets or arguments outside the admissible domain.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Physical input of a vortex problem with both zeros superimposed at the origin.
///
/// n1, n2 are the vanishing orders of the two scalars. sigma and k enter only
/// the conversion to physical units; n_mat only the energy prefactor N(N-1).
struct VortexParams {
    int n1 = 1;
    int n2 = 1;
    double sigma = 0.5;
    double k = 1.0;
    int n_mat = 2;

    /// Throws InvalidArgument on n1, n2 < 1, sigma, k <= 0 or n_mat < 2.
    void validate() const;

    /// N1 + N2 + 1, the exponent scale of the interaction term.
    int total_order() const { return n1 + n2 + 1; }
};

/// Normalization of the reduced system: 4 sigma^2.
double lambda_of(const VortexParams& params);

/// Flux Phi = pi * F(inf) of a radial functional limit F(inf).
double flux_from_functional(double f_inf);

/// Same quantity in the natural units Phi / (2 pi) = F(inf) / 2.
double flux_over_2pi(double f_inf);

/// N(N-1) sigma^3 k, the factor converting (int t e^u + int t e^v) into energy.
double energy_prefactor(const VortexParams& params);

/// E = N(N-1) sigma^3 k (int_eu + int_ev), with int_eu = int_0^inf t e^u dt etc.
double energy_from_integrals(const VortexParams& params, double int_eu, double int_ev);

/// The other two normalizations found for the same energy. Both are
/// reported alongside the canonical value and never used for targeting.
struct EnergyConventions {
    double canonical;     // N(N-1) sigma^3 k * I
    double flux_quarter;  // N(N-1) sigma k / (4 pi) * int (f1 - f2) dx = N(N-1) sigma k I / 4
    double flux_half;     // N(N-1) sigma k / (2 pi) * int (f1 - f2) dx = N(N-1) sigma k I / 2
};

EnergyConventions energy_conventions(const VortexParams& params, double int_eu, double int_ev);

std::string describe(const VortexParams& params);

}  // namespace abjm
