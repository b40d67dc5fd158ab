#pragma once

#include <vector>

#include "abjm/functionals.hpp"
#include "abjm/params.hpp"
#include "abjm/shooter.hpp"

namespace abjm {

/// Physical field data at one radius.
///
/// energy_density is the self-dual density N(N-1) sigma k / (4 pi) (f12_1 - f12_2);
/// the divergence terms of the full density integrate to zero and are omitted.
struct FieldSample {
    double r_phys = 0.0;
    double phi1_sq = 0.0;
    double phi2_sq = 0.0;
    double f12_1 = 0.0;
    double f12_2 = 0.0;
    double dphi1_sq = 0.0;
    double dphi2_sq = 0.0;
    double energy_density = 0.0;
};

/// Samples at every checkpoint of the dimensionless profile, r_phys = r / sqrt(lambda).
std::vector<FieldSample> reconstruct(const RadialProfile& profile, const VortexParams& params);

FieldSample field_at(const RadialProfile& profile, std::size_t index, const VortexParams& params);

struct Totals {
    double flux1 = 0.0;  // Phi_1 = pi F1(inf)
    double flux2 = 0.0;
    double flux1_over_2pi = 0.0;
    double flux2_over_2pi = 0.0;
    double energy = 0.0;  // canonical convention
    EnergyConventions conventions{};
};

Totals totals(const TailEstimate& estimate, const VortexParams& params);

/// Fluxes and self-dual energy recomputed by quadrature of the reconstructed
/// fields over the profile grid (trapezoid with derivative end corrections in
/// ln r), plus the series part below r_start and the analytic tails.
struct FieldQuadrature {
    double flux1 = 0.0;
    double flux2 = 0.0;
    double energy = 0.0;  // same convention as energy_density
};

FieldQuadrature field_quadrature(const RadialProfile& profile, const TailEstimate& estimate,
                                 const VortexParams& params);

}  // namespace abjm
