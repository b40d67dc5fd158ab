#pragma once

#include <map>
#include <optional>
#include <string>

#include "abjm/diagnostics.hpp"
#include "abjm/fields.hpp"
#include "abjm/targeting.hpp"
#include "json.hpp"

namespace abjm {

inline constexpr const char* kReportVersion = "1.0";

using Json = nlohmann::ordered_json;

/// Records non-finite numbers as null together with the reason, keyed by JSON pointer.
class NullLedger {
  public:
    Json number(double x, const std::string& pointer, const std::string& reason);
    const Json& reasons() const { return reasons_; }

  private:
    Json reasons_ = Json::object();
};

/// Verdict, limits, energies, identity residuals and predicates of one profile.
/// Shared by solve and check so that both emit the same block.
Json diagnostics_json(const RadialProfile& profile, const TailEstimate& estimate, const VortexParams& params,
                      double pohozaev_tolerance, NullLedger& nulls, const std::string& prefix = "");

Json params_json(const VortexParams& params);

struct SolveContext {
    std::string command = "solve";
    VortexParams params;
    ShooterControls controls;
    double band = kDefaultBand;
    double pohozaev_tolerance = 1e-6;
    std::optional<TargetSpec> target;
    const TargetResult* targeting = nullptr;
    std::optional<VerifyResult> verify;
    double wall_time = 0.0;
    std::map<std::string, std::string> files;
};

Json solve_report(const Shot& shot, const SolveContext& context);

/// Number of failed predicates in a diagnostics block.
std::size_t failed_predicates(const Json& diagnostics);

}  // namespace abjm
