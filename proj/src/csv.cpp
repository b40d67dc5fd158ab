#include "abjm/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace abjm {

namespace {

constexpr std::string_view kProfileTag = "# abjm-profile";
constexpr std::string_view kProfileHeader = "r,U,V,dU,dV,F1,F2,int_euv,int_eu,int_ev";

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

Termination termination_from(std::string_view s) {
    if (s == "tail_converged") return Termination::tail_converged;
    if (s == "divergent_v") return Termination::divergent_v;
    if (s == "r_max") return Termination::r_max;
    throw ParseError("unknown termination '" + std::string(s) + "'");
}

template <class... T>
void row(std::ostream& out, const T&... fields) {
    bool first = true;
    ((out << (first ? "" : ",") << fields, first = false), ...);
    out << '\n';
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token) {
    if (token == "inf") return INFINITY;
    if (token == "-inf") return -INFINITY;
    if (token == "nan") return NAN;
    double x = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size() || token.empty()) {
        throw ParseError("not a number: '" + std::string(token) + "'");
    }
    return x;
}

void write_profile_csv(std::ostream& out, const RadialProfile& p) {
    const auto f = format_double;
    out << kProfileTag << " n1=" << p.n1 << " n2=" << p.n2 << " alpha1=" << f(p.init.alpha1)
        << " alpha2=" << f(p.init.alpha2) << " alpha=" << f(p.init.alpha) << " line_offset=" << f(p.init.line_offset)
        << " on_line=" << (p.init.on_line ? 1 : 0) << " rtol=" << f(p.rtol) << " atol=" << f(p.atol)
        << " r_start=" << f(p.r_start) << " terminal_r=" << f(p.terminal_r)
        << " termination=" << to_string(p.termination) << " steps=" << p.steps << " rejected=" << p.rejected
        << " error_estimate=" << f(p.error_estimate) << " rows=" << p.size() + 1 << '\n';
    out << kProfileHeader << '\n';
    row(out, "0", f(p.init.alpha1), f(p.init.alpha2), "0", "0", "0", "0", "0", "0", "0");
    for (std::size_t i = 0; i < p.size(); ++i) {
        row(out, f(p.r[i]), f(p.U[i]), f(p.V[i]), f(p.dU[i]), f(p.dV[i]), f(p.F1[i]), f(p.F2[i]), f(p.int_euv[i]),
            f(p.int_eu[i]), f(p.int_ev[i]));
    }
}

RadialProfile read_profile_csv(std::istream& in, const std::string& source, const ProfileDefaults& defaults) {
    RadialProfile p;
    std::map<std::string, std::string> meta;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false, have_origin = false;
    std::size_t data_rows = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind(kProfileTag, 0) == 0) {
            if (have_header) fail(source, lineno, "metadata after the header");
            std::istringstream is(line.substr(kProfileTag.size()));
            std::string kv;
            while (is >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) fail(source, lineno, "bad metadata entry '" + kv + "'");
                meta[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            continue;
        }
        if (line[0] == '#') continue;
        if (!have_header) {
            if (line != kProfileHeader) fail(source, lineno, "expected header '" + std::string(kProfileHeader) + "'");
            have_header = true;
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 10) {
            fail(source, lineno, "expected 10 fields, found " + std::to_string(fields.size()));
        }
        double v[10];
        for (std::size_t j = 0; j < 10; ++j) {
            try {
                v[j] = parse_double(fields[j]);
            } catch (const ParseError& e) {
                fail(source, lineno, "column " + std::to_string(j + 1) + ": " + e.what());
            }
            if (std::isnan(v[j])) fail(source, lineno, "column " + std::to_string(j + 1) + " is nan");
        }
        ++data_rows;
        if (v[0] == 0.0) {
            if (have_origin || data_rows != 1) fail(source, lineno, "r = 0 row must come first and only once");
            have_origin = true;
            p.init = InitialData::direct(v[1], v[2]);
            continue;
        }
        if (!(v[0] > 0.0) || (!p.r.empty() && !(v[0] > p.r.back()))) {
            fail(source, lineno, "radii must be positive and strictly increasing");
        }
        p.r.push_back(v[0]);
        p.U.push_back(v[1]);
        p.V.push_back(v[2]);
        p.dU.push_back(v[3]);
        p.dV.push_back(v[4]);
        p.F1.push_back(v[5]);
        p.F2.push_back(v[6]);
        p.int_euv.push_back(v[7]);
        p.int_eu.push_back(v[8]);
        p.int_ev.push_back(v[9]);
    }
    if (in.bad()) fail(source, lineno, "read error");
    if (!have_header) fail(source, lineno, "missing header");
    if (p.r.size() < 2) fail(source, lineno, "fewer than two checkpoints");

    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = meta.find(key);
        return it == meta.end() ? nullptr : &it->second;
    };
    try {
        if (const auto* s = get("rows"); s && std::stoul(*s) != data_rows) {
            fail(source, lineno,
                 "file ends after " + std::to_string(data_rows) + " data rows, metadata announces " + *s);
        }
        p.n1 = defaults.n1 > 0 ? defaults.n1 : (get("n1") ? std::stoi(*get("n1")) : 0);
        p.n2 = defaults.n2 > 0 ? defaults.n2 : (get("n2") ? std::stoi(*get("n2")) : 0);
        if (p.n1 < 1 || p.n2 < 1) fail(source, 1, "multiplicities n1, n2 missing; pass them explicitly");
        if (get("alpha1") && get("alpha2")) {
            p.init.alpha1 = parse_double(*get("alpha1"));
            p.init.alpha2 = parse_double(*get("alpha2"));
        }
        p.init.alpha = get("alpha") ? parse_double(*get("alpha")) : p.init.alpha1;
        p.init.line_offset = get("line_offset") ? parse_double(*get("line_offset")) : 0.0;
        p.init.on_line = get("on_line") && *get("on_line") == "1";
        p.rtol = get("rtol") ? parse_double(*get("rtol")) : ShooterControls{}.rtol;
        p.atol = get("atol") ? parse_double(*get("atol")) : ShooterControls{}.atol;
        p.r_start = get("r_start") ? parse_double(*get("r_start")) : p.r.front();
        p.terminal_r = get("terminal_r") ? parse_double(*get("terminal_r")) : p.r.back();
        p.steps = get("steps") ? std::stoul(*get("steps")) : p.r.size() - 1;
        p.rejected = get("rejected") ? std::stoul(*get("rejected")) : 0;
        p.error_estimate = get("error_estimate") ? parse_double(*get("error_estimate")) : 0.0;
        if (get("termination")) {
            p.termination = termination_from(*get("termination"));
        } else {
            const std::size_t i = p.size() - 1;
            p.termination = (p.v(i) > ShooterControls{}.v_cap && p.F2[i] < 2.0 * p.n2) ? Termination::divergent_v
                                                                                       : Termination::r_max;
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        fail(source, 1, std::string("bad metadata: ") + e.what());
    }
    return p;
}

RadialProfile read_profile_csv_file(const std::string& path, const ProfileDefaults& defaults) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    return read_profile_csv(in, path, defaults);
}

void write_field_csv(std::ostream& out, const std::vector<FieldSample>& samples) {
    const auto f = format_double;
    out << "r_phys,phi1_sq,phi2_sq,f12_1,f12_2,dphi1_sq,dphi2_sq,energy_density\n";
    for (const auto& s : samples) {
        row(out, f(s.r_phys), f(s.phi1_sq), f(s.phi2_sq), f(s.f12_1), f(s.f12_2), f(s.dphi1_sq), f(s.dphi2_sq),
            f(s.energy_density));
    }
}

void write_scan_csv(std::ostream& out, const std::vector<ShotOutcome>& rows) {
    const auto f = format_double;
    out << "alpha,alpha2,verdict,F1_inf,F2_inf,flux1_over_2pi,flux2_over_2pi,energy,beta1,beta2\n";
    for (const auto& o : rows) {
        row(out, f(o.alpha), f(o.init.alpha2), to_string(o.verdict), f(o.f1_inf), f(o.f2_inf), f(o.flux1_over_2pi()),
            f(o.flux2_over_2pi()), f(o.energy), f(o.beta1), f(o.beta2));
    }
}

void write_flux_region_csv(std::ostream& out, const std::vector<ShotOutcome>& rows) {
    const auto f = format_double;
    out << "alpha,flux1_over_2pi,flux2_over_2pi\n";
    for (const auto& o : rows) {
        if (o.verdict == Verdict::integrable) row(out, f(o.alpha), f(o.flux1_over_2pi()), f(o.flux2_over_2pi()));
    }
}

void write_baseline_csv(std::ostream& out, const std::vector<double>& radii, int n1, int n2) {
    const auto f = format_double;
    out << "r,u0,v0,exp_u0,exp_v0,rho,phi0\n";
    for (double r : radii) {
        const auto b = baseline(r, n1, n2);
        row(out, f(r), f(b.u0), f(b.v0), f(b.exp_u0), f(b.exp_v0), f(b.rho), f(phi0(r, n1, n2)));
    }
}

void write_concentration_csv(std::ostream& out, const std::vector<ConcentrationRow>& rows) {
    const auto f = format_double;
    out << "eps,flux1_over_2pi,flux2_over_2pi,energy,core_fraction,residual,beta1_fit,beta2_fit\n";
    for (const auto& c : rows) {
        row(out, f(c.eps), f(c.flux1_over_2pi), f(c.flux2_over_2pi), f(c.energy), f(c.core_fraction), f(c.residual),
            f(c.beta1_fit), f(c.beta2_fit));
    }
}

}  // namespace abjm
