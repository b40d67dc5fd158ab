#include "abjm/report.hpp"

#include <cmath>

namespace abjm {

namespace {

std::string reason_for(double x, const std::string& what) {
    if (std::isnan(x)) return what + " undefined (integration did not complete)";
    return what + " infinite (radial integral does not converge on this run)";
}

}  // namespace

Json NullLedger::number(double x, const std::string& pointer, const std::string& reason) {
    if (std::isfinite(x)) return x;
    reasons_[pointer] = reason;
    return nullptr;
}

Json params_json(const VortexParams& p) {
    return Json{{"n1", p.n1}, {"n2", p.n2},       {"sigma", p.sigma},
                {"k", p.k},   {"n_mat", p.n_mat}, {"lambda", lambda_of(p)}};
}

Json diagnostics_json(const RadialProfile& profile, const TailEstimate& e, const VortexParams& params, double tolerance,
                      NullLedger& nulls, const std::string& prefix) {
    auto num = [&](double x, const std::string& path, const std::string& what) {
        return nulls.number(x, prefix + path, reason_for(x, what));
    };
    const bool integrable = e.decided == Verdict::integrable;
    const auto t = totals(e, params);

    Json d;
    d["verdict"] = to_string(e.decided);
    d["diagnostic"] = e.diagnostic;
    d["F1_inf"] = num(e.f1_inf, "/F1_inf", "F1(inf)");
    d["F2_inf"] = num(e.f2_inf, "/F2_inf", "F2(inf)");
    d["beta1"] = num(e.beta1, "/beta1", "beta1");
    d["beta2"] = num(e.beta2, "/beta2", "beta2");
    d["flux1_over_2pi"] = num(t.flux1_over_2pi, "/flux1_over_2pi", "flux 1");
    d["flux2_over_2pi"] = num(t.flux2_over_2pi, "/flux2_over_2pi", "flux 2");
    d["flux1"] = num(t.flux1, "/flux1", "flux 1");
    d["flux2"] = num(t.flux2, "/flux2", "flux 2");
    d["energy"] = {{"canonical", num(t.conventions.canonical, "/energy/canonical", "energy")},
                   {"flux_quarter", num(t.conventions.flux_quarter, "/energy/flux_quarter", "energy")},
                   {"flux_half", num(t.conventions.flux_half, "/energy/flux_half", "energy")}};
    d["uncertainty"] = {{"F1_inf", num(e.uncertainty.f1, "/uncertainty/F1_inf", "F1(inf) uncertainty")},
                        {"F2_inf", num(e.uncertainty.f2, "/uncertainty/F2_inf", "F2(inf) uncertainty")},
                        {"int_euv", num(e.uncertainty.int_euv, "/uncertainty/int_euv", "uncertainty")},
                        {"int_eu", num(e.uncertainty.int_eu, "/uncertainty/int_eu", "uncertainty")},
                        {"int_ev", num(e.uncertainty.int_ev, "/uncertainty/int_ev", "uncertainty")}};
    d["band"] = e.band;
    d["integrals"] = {{"int_euv", num(e.int_euv, "/integrals/int_euv", "int t e^{u+v}")},
                      {"int_eu", num(e.int_eu, "/integrals/int_eu", "int t e^u")},
                      {"int_ev", num(e.int_ev, "/integrals/int_ev", "int t e^v")}};
    if (integrable) {
        const auto li = limit_integrals(e, profile.n1, profile.n2);
        d["closed_form_integrals"] = {{"int_euv", li.int_euv}, {"int_eu", li.int_eu}, {"int_ev", li.int_ev}};
        const auto q = field_quadrature(profile, e, params);
        d["field_quadrature"] = {{"flux1", q.flux1}, {"flux2", q.flux2}, {"energy_flux_quarter", q.energy}};
    } else {
        d["closed_form_integrals"] = nullptr;
        d["field_quadrature"] = nullptr;
    }

    const auto poh = pohozaev_report(profile, e, tolerance);
    Json limit = nullptr;
    if (poh.limit_available) {
        limit = {{"res_mass", poh.limit.res_mass},
                 {"res_v_form", poh.limit.res_v_form},
                 {"res_u_form", poh.limit.res_u_form}};
    }
    d["pohozaev"] = {{"tolerance", tolerance}, {"checkpoints", poh.radii.size()},
                     {"max_euv", poh.max_euv}, {"max_eu", poh.max_eu},
                     {"max_ev", poh.max_ev},   {"limit", limit},
                     {"pass", poh.pass}};

    const auto s = structure_check(profile, e);
    d["structure"] = {
        {"zeros", s.zeros},
        {"expected_zeros", s.expected_zeros},
        {"second_zero_beyond_range", s.second_zero_beyond_range},
        {"predicted_second_zero", s.second_zero_beyond_range ? Json(s.predicted_second_zero) : Json(nullptr)}};

    Json preds = Json::array();
    std::size_t failed = 0;
    const auto list = all_predicates(profile, e, tolerance);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& q = list[i];
        failed += q.pass ? 0 : 1;
        preds.push_back({{"name", q.name},
                         {"pass", q.pass},
                         {"margin", num(q.margin, "/predicates/" + std::to_string(i) + "/margin", "margin")},
                         {"detail", q.detail}});
    }
    d["predicates"] = preds;
    d["predicates_failed"] = failed;
    return d;
}

Json solve_report(const Shot& shot, const SolveContext& ctx) {
    NullLedger nulls;
    const auto& o = shot.outcome;
    Json r;
    r["spec_version"] = kReportVersion;
    r["command"] = ctx.command;
    r["params"] = params_json(ctx.params);
    r["mode"] = ctx.target ? "target" : "direct";
    if (ctx.target) {
        const auto& t = *ctx.target;
        Json tj = {{"kind", to_string(t.kind)},
                   {"value", t.value},
                   {"F_value", t.kind == TargetKind::energy ? Json(nullptr) : Json(2.0 * t.value)},
                   {"tol", t.tol},
                   {"line_offset", t.line_offset}};
        if (ctx.targeting) {
            const auto& res = *ctx.targeting;
            tj["achieved"] = nulls.number(res.achieved, "/target/achieved", "achieved value not finite");
            tj["bracket"] = {res.bracket_lo, res.bracket_hi};
            tj["iterations"] = res.iterations;
            tj["other_sign_changes"] = res.other_sign_changes;
            tj["probes"] = res.probes.size();
        }
        r["target"] = tj;
    } else {
        r["target"] = nullptr;
    }
    r["init"] = {{"alpha1", o.init.alpha1},
                 {"alpha2", o.init.alpha2},
                 {"alpha", o.init.alpha},
                 {"line_offset", o.init.line_offset},
                 {"on_line", o.init.on_line}};
    r["tightened"] = o.tightened;

    if (shot.profile.size() >= 2) {
        r.update(diagnostics_json(shot.profile, o.estimate, ctx.params, ctx.pohozaev_tolerance, nulls));
    } else {
        r["verdict"] = to_string(o.verdict);
        r["diagnostic"] = o.diagnostic;
    }

    if (ctx.verify) {
        const auto& v = *ctx.verify;
        r["verify"] = {{"method", "fixed-step RK4"},
                       {"steps", v.steps},
                       {"F1_inf", nulls.number(v.f1_inf, "/verify/F1_inf", reason_for(v.f1_inf, "F1(inf)"))},
                       {"F2_inf", nulls.number(v.f2_inf, "/verify/F2_inf", reason_for(v.f2_inf, "F2(inf)"))},
                       {"F1_difference",
                        nulls.number(v.f1_difference, "/verify/F1_difference", reason_for(v.f1_difference, "F1"))},
                       {"F2_difference",
                        nulls.number(v.f2_difference, "/verify/F2_difference", reason_for(v.f2_difference, "F2"))}};
    } else {
        r["verify"] = nullptr;
    }

    const auto& p = shot.profile;
    r["solver"] = {{"method", "Dormand-Prince 5(4) in ln r"},
                   {"rtol", p.rtol > 0 ? p.rtol : ctx.controls.rtol},
                   {"atol", p.atol > 0 ? p.atol : ctx.controls.atol},
                   {"r_max", ctx.controls.r_max},
                   {"v_cap", ctx.controls.v_cap},
                   {"band", ctx.band},
                   {"r_start", p.r_start},
                   {"terminal_r", p.terminal_r},
                   {"termination", to_string(p.termination)},
                   {"steps", p.steps},
                   {"rejected", p.rejected},
                   {"checkpoints", p.size()},
                   {"error_estimate", p.error_estimate},
                   {"wall_time_s", ctx.wall_time}};
    r["files"] = ctx.files;
    r["metadata"] = {
        {"flux_units", "flux*_over_2pi = Phi/(2 pi) = F(inf)/2; flux* = Phi = pi F(inf)"},
        {"energy_density", "self-dual density N(N-1) sigma k/(4 pi) (f12_1 - f12_2); divergence terms omitted"},
        {"energy_conventions",
         "canonical = N(N-1) sigma^3 k I; flux_quarter = N(N-1) sigma k I/4; flux_half = N(N-1) sigma k I/2; "
         "I = int t (e^u + e^v) dt"}};
    r["null_reasons"] = nulls.reasons();
    return r;
}

std::size_t failed_predicates(const Json& d) {
    return d.contains("predicates_failed") ? d["predicates_failed"].get<std::size_t>() : 0;
}

}  // namespace abjm
