// abjm-vortex: radial non-topological vortex solver.
//
// Exit codes: 0 success, 2 target unreachable, 3 inconclusive, 4 invalid
// arguments, 5 unreadable or ill-formed input file.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "abjm/csv.hpp"
#include "abjm/report.hpp"

namespace fs = std::filesystem;
using namespace abjm;

namespace {

enum Exit { kOk = 0, kUnreachable = 2, kInconclusive = 3, kBadArgs = 4, kBadInput = 5 };

struct Model {
    VortexParams params;
    void add_to(CLI::App* sub) {
        sub->add_option("--n1", params.n1, "vanishing order of the first scalar")->capture_default_str();
        sub->add_option("--n2", params.n2, "vanishing order of the second scalar")->capture_default_str();
        sub->add_option("--sigma", params.sigma, "mass deformation")->capture_default_str();
        sub->add_option("--k", params.k, "Chern-Simons level")->capture_default_str();
        sub->add_option("--nmat", params.n_mat, "matrix size N")->capture_default_str();
    }
};

struct Solver {
    ShooterControls controls;
    double band = kDefaultBand;
    void add_to(CLI::App* sub) {
        sub->add_option("--rmax", controls.r_max, "largest radius")->capture_default_str();
        sub->add_option("--rtol", controls.rtol, "integrator relative tolerance")->capture_default_str();
        sub->add_option("--atol", controls.atol, "integrator absolute tolerance")->capture_default_str();
        sub->add_option("--band", band, "undecidable half-width around F2(inf) = 2(n2+1)")->capture_default_str();
    }
};

// Fills options not given on the command line from a flat key = value file.
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    const auto items = CLI::ConfigTOML().from_config(in);
    for (const auto& item : items) {
        if (item.name == "++" || item.name == "--") continue;  // section markers
        if (!item.parents.empty() && item.parents != std::vector<std::string>{sub->get_name()}) continue;
        auto* opt = sub->get_option_no_throw("--" + item.name);
        if (!opt || item.name == "config") throw CLI::ValidationError("--config", "unknown key '" + item.name + "'");
        if (opt->count() > 0) continue;
        for (const auto& v : item.inputs) opt->add_result(v);
        opt->run_callback();
    }
}

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

template <class F>
void write_with(const fs::path& path, F&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    writer(out);
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void write_report_csv(const fs::path& path, const Json& report) {
    write_with(path, [&](std::ostream& out) {
        out << "key,value\n";
        const Json flat = report.flatten();
        for (const auto& [key, value] : flat.items()) {
            const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
            out << csv_quote(key) << ',' << csv_quote(text) << '\n';
        }
    });
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    Model model;
    Solver solver;
    double line_offset = 0.0;
    std::optional<double> flux2, flux1, energy, alpha;
    double tol = 1e-4;
    TargetSpec box;
    std::string out_dir = ".";
    std::string name = "solve";
    std::string format = "json";
    std::string config;
    bool verify = false;
    double pohozaev_tol = 1e-6;
};

CLI::App* add_solve(CLI::App& app, SolveArgs& a) {
    auto* sub = app.add_subcommand("solve", "shoot once, or hit a prescribed flux or energy");
    a.model.add_to(sub);
    a.solver.add_to(sub);
    sub->add_option("--L", a.line_offset, "line offset (2n2+1) alpha1 - (2n1+1) alpha2")->capture_default_str();
    sub->add_option("--target-flux2", a.flux2, "Phi_2/(2 pi) in (n2+1, n1+n2+1)");
    sub->add_option("--target-flux1", a.flux1, "Phi_1/(2 pi) above n1+n2+1");
    sub->add_option("--target-energy", a.energy, "total energy E > 0");
    sub->add_option("--alpha", a.alpha, "direct shot at this alpha");
    sub->add_option("--tol", a.tol, "matching tolerance (Phi/(2 pi) units; relative for energy)")
        ->capture_default_str();
    sub->add_option("--alpha-lo", a.box.alpha_lo, "initial bracketing window, lower end")->capture_default_str();
    sub->add_option("--alpha-hi", a.box.alpha_hi, "initial bracketing window, upper end")->capture_default_str();
    sub->add_option("--alpha-limit", a.box.alpha_limit, "the window grows up to |alpha| = limit")
        ->capture_default_str();
    sub->add_option("--out-dir", a.out_dir, "output directory")->capture_default_str();
    sub->add_option("--name", a.name, "output file prefix")->capture_default_str();
    sub->add_option("--format", a.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_flag("--verify", a.verify, "re-integrate with fixed-step RK4 at 4x resolution");
    sub->add_option("--pohozaev-tol", a.pohozaev_tol, "identity residual tolerance")->capture_default_str();
    sub->add_option("--config", a.config, "file with the same keys as the flags");
    return sub;
}

int run_solve(const SolveArgs& a) {
    const int given = (a.flux2 ? 1 : 0) + (a.flux1 ? 1 : 0) + (a.energy ? 1 : 0) + (a.alpha ? 1 : 0);
    if (given != 1) {
        std::cerr << "solve: give exactly one of --target-flux2, --target-flux1, --target-energy, --alpha\n";
        return kBadArgs;
    }
    const auto& params = a.model.params;
    params.validate();
    if (!(a.solver.band >= 0.0)) throw InvalidArgument("--band must be non-negative");

    SolveContext ctx;
    ctx.params = params;
    ctx.controls = a.solver.controls;
    ctx.band = a.solver.band;
    ctx.pohozaev_tolerance = a.pohozaev_tol;

    const auto t0 = std::chrono::steady_clock::now();
    Shot shot;
    TargetResult result;
    if (a.alpha) {
        shot = shoot(*a.alpha, a.line_offset, params, ctx.controls, ctx.band);
    } else {
        TargetSpec spec = a.box;
        spec.kind = a.flux2 ? TargetKind::flux2 : a.flux1 ? TargetKind::flux1 : TargetKind::energy;
        spec.value = a.flux2 ? *a.flux2 : a.flux1 ? *a.flux1 : *a.energy;
        spec.line_offset = a.line_offset;
        spec.tol = a.tol;
        spec.band = ctx.band;
        validate_target(spec, params);
        ctx.target = spec;
        try {
            result = solve_target(spec, params, ctx.controls);
        } catch (const TargetUnreachable& e) {
            std::cerr << "solve: " << e.what() << '\n';
            return kUnreachable;
        } catch (const PrecisionError& e) {
            std::cerr << "solve: " << e.what() << '\n';
            return kInconclusive;
        }
        shot = result.shot;
        ctx.targeting = &result;
    }
    if (a.verify && shot.profile.size() >= 2) ctx.verify = verify_shot(shot, params);
    ctx.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path report_path = dir / (a.name + "_report.json");
    const fs::path profile_path = dir / (a.name + "_profile.csv");
    const fs::path fields_path = dir / (a.name + "_fields.csv");
    ctx.files = {
        {"report", report_path.string()}, {"profile", profile_path.string()}, {"fields", fields_path.string()}};
    if (a.format == "csv") ctx.files["report_csv"] = (dir / (a.name + "_report.csv")).string();

    if (shot.profile.size() >= 2) {
        write_with(profile_path, [&](std::ostream& out) { write_profile_csv(out, shot.profile); });
        write_with(fields_path, [&](std::ostream& out) { write_field_csv(out, reconstruct(shot.profile, params)); });
    }
    const Json report = solve_report(shot, ctx);
    write_text(report_path, report.dump(2) + "\n");
    if (a.format == "csv") write_report_csv(ctx.files["report_csv"], report);

    const auto& o = shot.outcome;
    std::cout << "verdict=" << to_string(o.verdict) << " alpha1=" << num(o.init.alpha1)
              << " alpha2=" << num(o.init.alpha2) << " flux1_over_2pi=" << num(o.flux1_over_2pi())
              << " flux2_over_2pi=" << num(o.flux2_over_2pi()) << " energy=" << num(o.energy)
              << " failed_checks=" << failed_predicates(report) << " report=" << report_path.string() << '\n';
    if (!o.diagnostic.empty() && o.verdict != Verdict::integrable) std::cerr << "note: " << o.diagnostic << '\n';
    return o.verdict == Verdict::inconclusive ? kInconclusive : kOk;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
    Model model;
    Solver solver;
    double alpha_min = -10.0, alpha_max = 14.0;
    std::size_t steps = 25;
    double line_offset = 0.0;
    std::size_t jobs = 1;
    std::string out_dir = ".";
    std::string name = "scan";
    std::string config;
};

CLI::App* add_scan(CLI::App& app, ScanArgs& a) {
    auto* sub = app.add_subcommand("scan", "classify a grid of alpha on one line");
    a.model.add_to(sub);
    a.solver.add_to(sub);
    sub->add_option("--alpha-min", a.alpha_min)->capture_default_str();
    sub->add_option("--alpha-max", a.alpha_max)->capture_default_str();
    sub->add_option("--alpha-steps", a.steps)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--L", a.line_offset, "line offset")->capture_default_str();
    sub->add_option("--jobs", a.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out-dir", a.out_dir)->capture_default_str();
    sub->add_option("--name", a.name, "output file prefix")->capture_default_str();
    sub->add_option("--config", a.config, "file with the same keys as the flags");
    return sub;
}

int run_scan(const ScanArgs& a) {
    a.model.params.validate();
    const auto grid = alpha_grid(a.alpha_min, a.alpha_max, a.steps);
    const auto rows = scan(grid, a.line_offset, a.model.params, a.solver.controls, a.jobs, a.solver.band);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path table = dir / (a.name + ".csv");
    const fs::path region = dir / (a.name + "_flux_region.csv");
    write_with(table, [&](std::ostream& out) { write_scan_csv(out, rows); });
    write_with(region, [&](std::ostream& out) { write_flux_region_csv(out, rows); });
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : rows) ++counts[static_cast<int>(r.verdict)];
    std::cout << "points=" << rows.size() << " integrable=" << counts[0] << " non_integrable=" << counts[1]
              << " inconclusive=" << counts[2] << " table=" << table.string() << " flux_region=" << region.string()
              << '\n';
    return kOk;
}

// ---------------------------------------------------------------- baseline

struct BaselineArgs {
    Model model;
    double r_min = 1e-3, r_max = 1e3;
    std::size_t points = 61;
    std::string out_dir = ".";
    std::string name = "baseline";
    std::string config;
};

CLI::App* add_baseline(CLI::App& app, BaselineArgs& a) {
    auto* sub = app.add_subcommand("baseline", "tabulate the limiting Liouville solution");
    a.model.add_to(sub);
    sub->add_option("--r-min", a.r_min)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--r-max", a.r_max)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--points", a.points)->check(CLI::Range(2, 1000000))->capture_default_str();
    sub->add_option("--out-dir", a.out_dir)->capture_default_str();
    sub->add_option("--name", a.name, "output file prefix")->capture_default_str();
    sub->add_option("--config", a.config, "file with the same keys as the flags");
    return sub;
}

int run_baseline(const BaselineArgs& a) {
    a.model.params.validate();
    if (!(a.r_max > a.r_min)) throw InvalidArgument("--r-max must exceed --r-min");
    std::vector<double> radii(a.points);
    for (std::size_t i = 0; i < a.points; ++i) {
        radii[i] = a.r_min * std::pow(a.r_max / a.r_min, static_cast<double>(i) / static_cast<double>(a.points - 1));
    }
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path table = dir / (a.name + ".csv");
    const int n1 = a.model.params.n1, n2 = a.model.params.n2;
    write_with(table, [&](std::ostream& out) { write_baseline_csv(out, radii, n1, n2); });
    const auto [s1, s2] = sigma_integrals(n1, n2);
    std::cout << "sigma1=" << format_double(s1) << " sigma2=" << format_double(s2) << " table=" << table.string()
              << '\n';
    return kOk;
}

// ---------------------------------------------------------------- perturb

struct PerturbArgs {
    Model model;
    std::vector<double> eps;
    std::string out_dir = ".";
    std::string name = "perturb";
    std::string config;
};

CLI::App* add_perturb(CLI::App& app, PerturbArgs& a) {
    auto* sub = app.add_subcommand("perturb", "first-order perturbative profiles and their fluxes");
    a.model.add_to(sub);
    sub->add_option("--eps-list", a.eps, "comma-separated amplitudes in (0, 1)")->delimiter(',');
    sub->add_option("--out-dir", a.out_dir)->capture_default_str();
    sub->add_option("--name", a.name, "output file prefix")->capture_default_str();
    sub->add_option("--config", a.config, "file with the same keys as the flags");
    return sub;
}

int run_perturb(const PerturbArgs& a) {
    a.model.params.validate();
    if (a.eps.empty()) throw InvalidArgument("--eps-list is required");
    auto eps = a.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    if (std::adjacent_find(eps.begin(), eps.end()) != eps.end()) throw InvalidArgument("--eps-list has duplicates");
    for (double e : eps) {
        if (!(e > 0.0 && e < 1.0)) throw InvalidArgument("eps must lie in (0, 1), got " + format_double(e));
    }
    const auto rows = concentration_report(a.model.params, eps);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    const fs::path table = dir / (a.name + ".csv");
    write_with(table, [&](std::ostream& out) { write_concentration_csv(out, rows); });
    std::cout << "eps flux1_over_2pi flux2_over_2pi energy residual\n";
    for (const auto& r : rows) {
        std::cout << num(r.eps) << ' ' << num(r.flux1_over_2pi) << ' ' << num(r.flux2_over_2pi) << ' ' << num(r.energy)
                  << ' ' << num(r.residual) << '\n';
        if (!r.warning.empty()) std::cerr << "warning: " << r.warning << '\n';
    }
    std::cout << "table=" << table.string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    Model model;
    double band = kDefaultBand;
    double pohozaev_tol = 1e-6;
    std::string path;
    std::string out;
    std::string config;
};

CLI::App* add_check(CLI::App& app, CheckArgs& a) {
    auto* sub = app.add_subcommand("check", "re-run the diagnostics on a stored profile CSV");
    a.model.add_to(sub);
    sub->add_option("profile", a.path, "profile CSV written by solve")->required();
    sub->add_option("--band", a.band)->capture_default_str();
    sub->add_option("--pohozaev-tol", a.pohozaev_tol)->capture_default_str();
    sub->add_option("--out", a.out, "write the report JSON here");
    sub->add_option("--config", a.config, "file with the same keys as the flags");
    return sub;
}

int run_check(const CheckArgs& a, bool multiplicities_given) {
    ProfileDefaults defaults;
    if (multiplicities_given) {
        a.model.params.validate();
        defaults.n1 = a.model.params.n1;
        defaults.n2 = a.model.params.n2;
    }
    const auto profile = read_profile_csv_file(a.path, defaults);
    VortexParams params = a.model.params;
    params.n1 = profile.n1;
    params.n2 = profile.n2;
    params.validate();
    const auto estimate = tail_extrapolate(profile, a.band);
    NullLedger nulls;
    Json report;
    report["spec_version"] = kReportVersion;
    report["command"] = "check";
    report["source"] = a.path;
    report["params"] = params_json(params);
    report["init"] = {{"alpha1", profile.init.alpha1}, {"alpha2", profile.init.alpha2}};
    report.update(diagnostics_json(profile, estimate, params, a.pohozaev_tol, nulls));
    report["null_reasons"] = nulls.reasons();
    if (!a.out.empty()) write_text(a.out, report.dump(2) + "\n");
    std::cout << "verdict=" << to_string(estimate.decided) << " checkpoints=" << profile.size()
              << " failed_checks=" << failed_predicates(report) << " of " << report["predicates"].size()
              << (a.out.empty() ? "" : " report=" + a.out) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radial non-topological vortices: shooting, targeting and diagnostics"};
    app.require_subcommand(1);
    SolveArgs solve_args;
    ScanArgs scan_args;
    BaselineArgs baseline_args;
    PerturbArgs perturb_args;
    CheckArgs check_args;
    auto* solve_cmd = add_solve(app, solve_args);
    auto* scan_cmd = add_scan(app, scan_args);
    auto* baseline_cmd = add_baseline(app, baseline_args);
    auto* perturb_cmd = add_perturb(app, perturb_args);
    auto* check_cmd = add_check(app, check_args);

    try {
        app.parse(argc, argv);
        apply_config(solve_cmd, solve_args.config);
        apply_config(scan_cmd, scan_args.config);
        apply_config(baseline_cmd, baseline_args.config);
        apply_config(perturb_cmd, perturb_args.config);
        apply_config(check_cmd, check_args.config);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        if (*solve_cmd) return run_solve(solve_args);
        if (*scan_cmd) return run_scan(scan_args);
        if (*baseline_cmd) return run_baseline(baseline_args);
        if (*perturb_cmd) return run_perturb(perturb_args);
        if (*check_cmd) {
            const bool given = check_cmd->count("--n1") > 0 || check_cmd->count("--n2") > 0;
            return run_check(check_args, given);
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadArgs;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInconclusive;
    }
    return kBadArgs;
}
