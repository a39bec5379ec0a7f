// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli_examples.hpp"
#include "qsubfactor/cli.hpp"
#include "qsubfactor/corep.hpp"
#include "qsubfactor/type3.hpp"
#include "qsubfactor/verify.hpp"
#include "qsubfactor/wassermann.hpp"
#include "support.hpp"

using namespace qsf;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

double max_residual(const std::vector<CheckResult>& rs, const std::string& skip = "") {
    double m = 0.0;
    for (const auto& r : rs)
        if (r.name != skip) m = std::max(m, r.residual);
    return m;
}

Verdict exact_algebra() {
    int bad = 0, pairs = 0;
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            const auto x = CorepDecomp::irreducible(Spin(a)), y = CorepDecomp::irreducible(Spin(b));
            bad += dim_q(fuse(x, y)) == dim_q(x) * dim_q(y) ? 0 : 1;
            ++pairs;
        }
    return {bad == 0, fmt::format("{} pairs, {} mismatches", pairs, bad)};
}

Verdict trace_symmetry() {
    std::mt19937 rng(20240611);
    int bad = 0;
    for (int i = 0; i < 50; ++i) {
        const FMatrix f(testing::random_corep(rng, 8));
        bad += f.trace() == f.inverse_trace() ? 0 : 1;
    }
    return {bad == 0, fmt::format("50 random decompositions, {} mismatches", bad)};
}

Verdict index_values() {
    const auto half = parse_rep("1/2");
    const LaurentPoly q_plus_qinv = LaurentPoly::monomial(1) + LaurentPoly::monomial(-1);
    const bool exact = index_poly(half) == q_plus_qinv * q_plus_qinv;
    const double v = index_value(half, 0.5);
    bool monotone = true, above4 = true;
    double prev = 0.0;
    for (int k = 99; k >= 10; k -= (k == 99 ? 9 : 10)) {
        const double q = k / 100.0;
        const double x = index_value(half, q);
        monotone = monotone && x > prev;
        above4 = above4 && x > 4.0;
        prev = x;
    }
    return {exact && std::abs(v - 6.25) <= 1e-12 && monotone && above4,
            fmt::format("poly {}, value(0.5) = {:.15g}, decreasing in q: {}, all > 4: {}", to_string(index_poly(half)), v,
                        monotone, above4)};
}

Verdict lemma1() {
    const std::vector<std::string> reps = {"0", "1/2", "1", "0 + 1/2", "0 + 1", "1/2 + 1", "0 + 1/2 + 1"};
    double worst = 0.0;
    int cases = 0;
    for (double q : {0.3, 0.5, 0.7})
        for (const auto& p : reps)
            for (const auto& s : reps) {
                worst = std::max(worst, lemma1_check(parse_rep(p), ToyAction{parse_rep(s), q}));
                ++cases;
            }
    return {worst < 1e-8, fmt::format("{} cases, max residual {:.3e}", cases, worst)};
}

Verdict relations() {
    const std::vector<double> qs = {0.3, 0.5, 0.7};
    const double r = std::max(max_residual(verify_relations(qs)), max_residual(verify_haar(qs)));
    return {r < 1e-9, fmt::format("generators, star, unitarity, Haar invariance; max residual {:.3e}", r)};
}

Verdict cg_suite() {
    const auto rs = verify_cg({0.3, 0.7}, 6);
    double content = 0.0;
    for (const auto& r : rs)
        if (r.name == "cg.spin_content") content = r.residual;
    const double r = max_residual(rs, "cg.spin_content");
    return {r < 1e-9 && content == 0.0,
            fmt::format("max residual {:.3e}, spin content mismatches {}", r, static_cast<int>(content))};
}

Verdict tower() {
    const auto t = jones_tower(parse_rep("1/2"), 4);
    std::vector<long> dims;
    bool ok = true;
    for (int k = 0; k <= 4; ++k) {
        dims.push_back(t.end_dim(k));
        ok = ok && dims.back() == testing::catalan(k + 1);
    }
    const long defect = bratteli_defect(t);
    return {ok && defect == 0, fmt::format("dims {}, Bratteli defect {}", fmt::join(dims, ","), defect)};
}

Verdict type_II() {
    const std::vector<std::pair<std::string, bool>> cases = {{"0 + 1", true}, {"1/2 + 3/2", true}, {"0 + 1/2", false}};
    bool ok = true;
    double par = 0.0;
    std::vector<std::string> got;
    for (const auto& [s, want] : cases) {
        const auto pi = parse_rep(s);
        const bool a = essentially_type_II(pi);
        ok = ok && a == want && all_parities_equal(pi, 0.5) == a;
        par = std::max(par, parity_residual(pi, 0.5));
        got.push_back(a ? "true" : "false");
    }
    return {ok && par < 1e-9, fmt::format("({}), parity residual {:.3e}", fmt::join(got, ", "), par)};
}

Verdict composition() {
    double worst = 0.0;
    for (double q : {0.3, 0.6})
        for (const char* p : {"2x1/2", "0 + 1", "1/2 + 3/2"})
            worst = std::max(worst, verify_composition(parse_rep(p), ToyAction{parse_rep("1/2"), q}));
    return {worst < 1e-8, fmt::format("max residual {:.3e}", worst)};
}

Verdict t0_parity() {
    const double t = t0(std::exp(-std::numbers::pi));
    double worst = 0.0;
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (int two_m = -6; two_m <= 6; ++two_m) {
            const auto z = std::polar(1.0, t0(q) * std::log(std::pow(q, two_m)));
            worst = std::max(worst, std::abs(z - std::complex<double>(two_m % 2 == 0 ? 1.0 : -1.0, 0.0)));
        }
    return {std::abs(t - 1.0) <= 1e-12 && worst < 1e-9,
            fmt::format("t0(e^-pi) - 1 = {:.3e}, parity residual {:.3e}", t - 1.0, worst)};
}

std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int st = pclose(p);
    status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

std::string quote(const std::string& s) {
    std::string r = "'";
    for (char c : s) r += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return r + "'";
}

Verdict cli_contract(const std::string& exe) {
    int unstable = 0, bad_codes = 0;
    auto in_process = [](const std::vector<std::string>& args, int& code) {
        std::ostringstream out, err;
        code = cli::run(args, out, err);
        return out.str() + "\x1f" + err.str();
    };
    for (const auto& ex : testing::documented_examples()) {
        int c1 = 0, c2 = 0;
        if (in_process(ex, c1) != in_process(ex, c2) || c1 != 0 || c2 != 0) ++unstable;
        if (!exe.empty()) {
            std::string cmd = quote(exe);
            for (const auto& a : ex) cmd += " " + quote(a);
            int s1 = 0, s2 = 0;
            if (capture(cmd + " 2>/dev/null", s1) != capture(cmd + " 2>/dev/null", s2) || s1 != 0 || s2 != 0) ++unstable;
        }
    }
    const std::vector<std::pair<std::vector<std::string>, int>> malformed = {
        {{"fuse", "--rep", "1/2 +", "--rep2", "1"}, 2},
        {{"fuse", "--rep", "x", "--rep2", "1"}, 2},
        {{"dim", "--rep", "1/4"}, 2},
        {{"fuse", "--rep", "1/2", "--rep2", "1", "--so3"}, 2},
        {{"index", "--rep", "1/2", "--q", "2"}, 2},
        {{"tower", "--rep", "1/2", "--n", "99"}, 2},
        {{"verify", "everything"}, 2},
        {{"verify", "cg", "--q", "0.5", "--tol", "1e-300"}, 3},
    };
    for (const auto& [args, want] : malformed) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        if (code != want || err.str().rfind("error: ", 0) != 0 && want == 2) ++bad_codes;
    }
    return {unstable == 0 && bad_codes == 0,
            fmt::format("{} documented examples{}, {} unstable; {} exit-code violations",
                        testing::documented_examples().size(), exe.empty() ? "" : " (in-process and subprocess)",
                        unstable, bad_codes)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? argv[1] : "";
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // 0: no runtime bound
        std::function<Verdict()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "exact algebra: dim_q(fuse(a,b)) = dim_q(a) dim_q(b)", 1.0, exact_algebra},
        {2, "Tr F = Tr F^-1 on random decompositions", 0.0, trace_symmetry},
        {3, "index(1/2) = (q + q^-1)^2", 0.0, index_values},
        {4, "q-trace intertwining identity", 30.0, lemma1},
        {5, "generator relations, unitarity, Haar invariance", 0.0, relations},
        {6, "Clebsch-Gordan suite", 0.0, cg_suite},
        {7, "tower dimensions and Bratteli consistency", 1.0, tower},
        {8, "essentially type II decision", 0.0, type_II},
        {9, "three-step composition identity", 0.0, composition},
        {10, "T0 and parity consistency", 0.0, t0_parity},
        {11, "CLI determinism and exit codes", 0.0, [&] { return cli_contract(exe); }},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v{false, ""};
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = c.budget_s == 0.0 || secs < c.budget_s;
        const bool pass = v.pass && in_budget;
        failures += pass ? 0 : 1;
        std::string timing = fmt::format("{:.3f} s", secs);
        if (c.budget_s > 0.0) timing += fmt::format(" of {:g} s", c.budget_s);
        fmt::print("criterion {:>2} {} {} | {} [{}]\n", c.id, pass ? "PASS" : "FAIL", c.name, v.detail, timing);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
    return failures;
}
