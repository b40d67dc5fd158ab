#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "abjm/csv.hpp"
#include "abjm/report.hpp"
#include "doctest.h"

using namespace abjm;

namespace {

VortexParams params_of(int n1, int n2) {
    VortexParams p;
    p.n1 = n1;
    p.n2 = n2;
    return p;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void check_same(const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));
}

std::string written(const RadialProfile& p) {
    std::ostringstream os;
    write_profile_csv(os, p);
    return os.str();
}

RadialProfile reread(const std::string& text, const ProfileDefaults& d = {}) {
    std::istringstream is(text);
    return read_profile_csv(is, "mem", d);
}

std::string parse_message(const std::string& text) {
    try {
        reread(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("doubles survive the text form bit for bit") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> bits;
    int tested = 0;
    while (tested < 20000) {
        const std::uint64_t b = bits(rng);
        double x;
        std::memcpy(&x, &b, sizeof x);
        if (std::isnan(x)) continue;
        CHECK(same_bits(parse_double(format_double(x)), x));
        ++tested;
    }
    for (double x : {0.0, -0.0, 1.0, 0.1, std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(),
                     std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}) {
        CHECK(same_bits(parse_double(format_double(x)), x));
    }
    CHECK(std::isnan(parse_double(format_double(std::nan("")))));
    CHECK_THROWS_AS(parse_double(""), ParseError);
    CHECK_THROWS_AS(parse_double("1.0x"), ParseError);
    CHECK_THROWS_AS(parse_double(" 1"), ParseError);
}

TEST_CASE("profile CSV round trip is exact") {
    for (auto [n1, n2, alpha] : {std::tuple{1, 1, 3.0}, std::tuple{2, 3, -4.0}, std::tuple{3, 1, 9.5}}) {
        const auto params = params_of(n1, n2);
        const auto p = integrate(params, InitialData::from_line(alpha, 1.0, n1, n2));
        const std::string text = written(p);
        CHECK(text.find('\r') == std::string::npos);
        const auto q = reread(text);
        CHECK(q.n1 == p.n1);
        CHECK(q.n2 == p.n2);
        CHECK(same_bits(q.init.alpha1, p.init.alpha1));
        CHECK(same_bits(q.init.alpha2, p.init.alpha2));
        CHECK(same_bits(q.init.alpha, p.init.alpha));
        CHECK(same_bits(q.init.line_offset, p.init.line_offset));
        CHECK(q.init.on_line == p.init.on_line);
        CHECK(same_bits(q.r_start, p.r_start));
        CHECK(same_bits(q.terminal_r, p.terminal_r));
        CHECK(q.termination == p.termination);
        CHECK(q.steps == p.steps);
        CHECK(q.rejected == p.rejected);
        CHECK(same_bits(q.error_estimate, p.error_estimate));
        check_same(q.r, p.r);
        check_same(q.U, p.U);
        check_same(q.V, p.V);
        check_same(q.dU, p.dU);
        check_same(q.dV, p.dV);
        check_same(q.F1, p.F1);
        check_same(q.F2, p.F2);
        check_same(q.int_euv, p.int_euv);
        check_same(q.int_eu, p.int_eu);
        check_same(q.int_ev, p.int_ev);
        CHECK(written(q) == text);

        // Diagnostics of the re-read profile are the same document.
        NullLedger a, b;
        const auto da = diagnostics_json(p, tail_extrapolate(p), params, 1e-6, a);
        const auto db = diagnostics_json(q, tail_extrapolate(q), params, 1e-6, b);
        CHECK(da.dump() == db.dump());
    }
}

TEST_CASE("ill-formed profiles report the offending line") {
    const auto p = integrate(params_of(1, 1), InitialData::from_line(2.0, 0.0, 1, 1));
    const std::string text = written(p);
    std::vector<std::string> lines;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) lines.push_back(l);
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& l : v) s += l + "\n";
        return s;
    };

    auto truncated = lines;
    truncated.resize(12);
    CHECK(parse_message(join(truncated)).rfind("mem:12:", 0) == 0);

    auto corrupt = lines;
    corrupt[6] = corrupt[6].substr(0, corrupt[6].size() - 2) + "e+";
    CHECK(parse_message(join(corrupt)).rfind("mem:7:", 0) == 0);

    auto extra = lines;
    extra[5] += ",1";
    CHECK(parse_message(join(extra)).rfind("mem:6:", 0) == 0);

    auto unordered = lines;
    std::swap(unordered[8], unordered[9]);
    CHECK(parse_message(join(unordered)).rfind("mem:10:", 0) == 0);

    auto origin_twice = lines;
    origin_twice[4] = origin_twice[2];
    CHECK(parse_message(join(origin_twice)).rfind("mem:5:", 0) == 0);

    auto nan_row = lines;
    nan_row[7] = "nan" + nan_row[7].substr(nan_row[7].find(','));
    CHECK(parse_message(join(nan_row)).rfind("mem:8:", 0) == 0);

    CHECK(parse_message("r,U\n").rfind("mem:1:", 0) == 0);
    CHECK(parse_message("").find("missing header") != std::string::npos);

    std::vector<std::string> bare(lines.begin() + 1, lines.end());
    CHECK(parse_message(join(bare)).find("multiplicities") != std::string::npos);
    const auto q = reread(join(bare), ProfileDefaults{1, 1});
    CHECK(q.size() == p.size());
    CHECK(q.termination == p.termination);
}

TEST_CASE("tabular writers emit one header and one row per record") {
    const auto params = params_of(1, 1);
    const auto p = integrate(params, InitialData::from_line(4.0, 0.0, 1, 1));
    const auto samples = reconstruct(p, params);
    std::ostringstream fields;
    write_field_csv(fields, samples);
    const std::string f = fields.str();
    CHECK(static_cast<std::size_t>(std::count(f.begin(), f.end(), '\n')) == samples.size() + 1);
    CHECK(f.rfind("r_phys,phi1_sq,phi2_sq,f12_1,f12_2,dphi1_sq,dphi2_sq,energy_density\n", 0) == 0);

    std::ostringstream base;
    write_baseline_csv(base, {0.5, 1.0, 2.0}, 1, 1);
    CHECK(base.str().rfind("r,u0,v0,exp_u0,exp_v0,rho,phi0\n0.5,", 0) == 0);
}
