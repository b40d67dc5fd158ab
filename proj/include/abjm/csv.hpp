#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abjm/fields.hpp"
#include "abjm/liouville.hpp"
#include "abjm/perturbation.hpp"
#include "abjm/shooter.hpp"
#include "abjm/targeting.hpp"

namespace abjm {

/// Unreadable or ill-formed input file; the message carries the line number.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to the same double; inf, -inf, nan otherwise.
std::string format_double(double x);

/// Inverse of format_double. Throws ParseError unless the whole token is a number.
double parse_double(std::string_view token);

/// Profile CSV: one `# abjm-profile key=value ...` metadata line, a header row
/// r,U,V,dU,dV,F1,F2,int_euv,int_eu,int_ev, a row at r = 0 holding the initial
/// data, then one row per checkpoint.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

/// Metadata the caller may supply when the file lacks it.
struct ProfileDefaults {
    int n1 = 0;  // 0: take from the file
    int n2 = 0;
};

RadialProfile read_profile_csv(std::istream& in, const std::string& source, const ProfileDefaults& defaults = {});
RadialProfile read_profile_csv_file(const std::string& path, const ProfileDefaults& defaults = {});

void write_field_csv(std::ostream& out, const std::vector<FieldSample>& samples);

/// alpha, alpha2, verdict, F1_inf, F2_inf, flux1_over_2pi, flux2_over_2pi, energy, beta1, beta2
void write_scan_csv(std::ostream& out, const std::vector<ShotOutcome>& rows);

/// alpha, flux1_over_2pi, flux2_over_2pi for the integrable rows.
void write_flux_region_csv(std::ostream& out, const std::vector<ShotOutcome>& rows);

void write_baseline_csv(std::ostream& out, const std::vector<double>& radii, int n1, int n2);

void write_concentration_csv(std::ostream& out, const std::vector<ConcentrationRow>& rows);

}  // namespace abjm
