#include "qsubfactor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>

#include <fmt/format.h>

#include "qsubfactor/corep.hpp"
#include "qsubfactor/error.hpp"
#include "qsubfactor/haar.hpp"
#include "qsubfactor/type3.hpp"
#include "qsubfactor/uqsl2.hpp"
#include "qsubfactor/wassermann.hpp"

namespace qsf {

namespace {

std::string join_qs(const std::vector<double>& qs) {
    std::string s;
    for (double q : qs) s += (s.empty() ? "" : ",") + fmt::format("{:g}", q);
    return "q in {" + s + "}";
}

// All coefficient symbols with 2l <= max_twice.
std::vector<PWElement> symbols_up_to(double q, int max_twice) {
    std::vector<PWElement> out;
    for (int t = 0; t <= max_twice; ++t)
        for (int i = 0; i <= t; ++i)
            for (int j = 0; j <= t; ++j) out.push_back(PWElement::symbol(q, Symbol{t, i, j}));
    return out;
}

double dist(const PWElement& a, const PWElement& b) { return (a - b).max_abs(); }

}  // namespace

std::vector<CheckResult> verify_relations(const std::vector<double>& qs) {
    double gen = 0, unit = 0, star_r = 0, env = 0;
    for (double q : qs) {
        const auto x = generator("x", q), u = generator("u", q), v = generator("v", q), y = generator("y", q);
        auto m = [](const PWElement& a, const PWElement& b) { return multiply(a, b); };
        gen = std::max({gen, dist(m(u, x), q * m(x, u)), dist(m(v, x), q * m(x, v)), dist(m(y, u), q * m(u, y)),
                        dist(m(y, v), q * m(v, y)), dist(m(u, v), m(v, u))});
        star_r = std::max({star_r, dist(star(x), y), dist(star(u), (-1.0 / q) * v), dist(star(star(u)), u),
                           dist(star(m(x, u)), m(star(u), star(x)))});
        const PWMatrix U = {{x, u}, {v, y}};
        for (const auto& prod : {matmul(U, adjoint(U)), matmul(adjoint(U), U)})
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    unit = std::max(unit, dist(prod[i][j], i == j ? PWElement::unit(q) : PWElement(q)));
        for (int t = 1; t <= 6; ++t) {
            env = std::max(env, relation_residual(irrep(Spin(t), q)));
            env = std::max(env, relation_residual(tensor(irrep(Spin(1), q), irrep(Spin(t), q))));
        }
    }
    const auto d = join_qs(qs);
    return {{"relations.commutation", gen, d + "; ux=qxu, vx=qxv, yu=quy, yv=qvy, uv=vu"},
            {"relations.star", star_r, d + "; x*=y, u*=-q^-1 v, involution, anti-multiplicativity"},
            {"relations.unitarity", unit, d + "; UU*=U*U=1 for the fundamental matrix"},
            {"relations.uqsl2", env, d + "; irreps and 1/2 (x) l for 2l <= 6"}};
}

std::vector<CheckResult> verify_haar(const std::vector<double>& qs) {
    double left = 0, right = 0, coassoc = 0, orth = 0;
    for (double q : qs) {
        auto samples = symbols_up_to(q, 2);
        const auto x = generator("x", q), u = generator("u", q), v = generator("v", q), y = generator("y", q);
        samples.push_back(multiply(x, y));
        samples.push_back(multiply(u, v) + 2.0 * multiply(y, x));
        samples.push_back(multiply(x, star(x)));
        for (const auto& a : samples) {
            const auto h1 = haar(a) * PWElement::unit(q);
            const auto da = delta(a);
            left = std::max(left, dist(haar_left(da), h1));
            right = std::max(right, dist(haar_right(da), h1));
            coassoc = std::max(coassoc, coassociativity_defect(a));
        }
        // Orthogonality: h(u_ij u_kl^*) = delta_ik delta_jl w_j with w_j > 0, sum_j w_j = 1,
        // and {w_j} equal to {q^{2m} / [2l+1]_q} as a multiset.
        for (int t = 0; t <= 4; ++t) {
            const int d = t + 1;
            std::vector<double> w(d, 0.0);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k)
                        for (int l = 0; l < d; ++l) {
                            const double hv = haar_product(PWElement::symbol(q, {t, i, j}),
                                                           star(PWElement::symbol(q, {t, k, l})));
                            if (i == k && j == l) {
                                if (i == 0) w[j] = hv;
                                orth = std::max(orth, std::abs(hv - w[j]));
                            } else {
                                orth = std::max(orth, std::abs(hv));
                            }
                        }
            const double dq = eval(qint(d), q);
            std::vector<double> expect;
            for (int two_m = -t; two_m <= t; two_m += 2) expect.push_back(std::pow(q, two_m) / dq);
            std::sort(w.begin(), w.end());
            std::sort(expect.begin(), expect.end());
            for (int j = 0; j < d; ++j) orth = std::max(orth, std::abs(w[j] - expect[j]));
        }
    }
    const auto d = join_qs(qs);
    return {{"haar.left_invariance", left, d + "; (h (x) id) delta(a) = h(a) 1, spins <= 1 and products"},
            {"haar.right_invariance", right, d + "; (id (x) h) delta(a) = h(a) 1"},
            {"haar.coassociativity", coassoc, d},
            {"haar.orthogonality", orth, d + "; h(u_ij u_kl^*) for 2l <= 4"}};
}

std::vector<CheckResult> verify_cg(const std::vector<double>& qs, int max_twice) {
    double iso = 0, comp = 0, inter = 0, content = 0;
    for (double q : qs)
        for (int a = 0; a <= max_twice; ++a)
            for (int b = 0; b <= max_twice; ++b) {
                const auto t = tensor(irrep(Spin(a), q), irrep(Spin(b), q));
                const auto cgs = decompose(t);
                iso = std::max(iso, isometry_residual(cgs));
                comp = std::max(comp, completeness_residual(cgs, t.dim()));
                inter = std::max(inter, intertwining_residual(t, cgs));
                const auto expect = fuse(CorepDecomp::irreducible(Spin(a)), CorepDecomp::irreducible(Spin(b)));
                if (!(spin_content(cgs) == expect)) content += 1.0;
            }
    const auto d = fmt::format("{}; all pairs 2l <= {}", join_qs(qs), max_twice);
    return {{"cg.completeness", comp, d},
            {"cg.intertwining", inter, d},
            {"cg.isometry", iso, d},
            {"cg.spin_content", content, d + "; number of pairs whose content differs from fuse"}};
}

std::vector<CheckResult> verify_lemma1(const std::vector<double>& qs) {
    double worst = 0;
    const std::vector<std::string> reps = {"0", "1/2", "1", "0 + 1/2"};
    for (double q : qs)
        for (const auto& p : reps)
            for (const auto& s : reps)
                worst = std::max(worst, lemma1_check(parse_rep(p), ToyAction{parse_rep(s), q}));
    return {{"lemma1", worst, join_qs(qs) + "; pi, sigma in {0, 1/2, 1, 0 + 1/2}"}};
}

std::vector<CheckResult> verify_composition_suite(const std::vector<double>& qs) {
    double comp = 0, hb = 0, pin = 0, par = 0, pred = 0;
    const std::vector<std::string> reps = {"2x1/2", "0 + 1", "1/2 + 3/2", "1"};
    for (double q : qs) {
        for (const auto& p : reps) {
            const auto ts = three_step_decomposition(parse_rep(p), ToyAction{parse_rep("1/2"), q});
            comp = std::max(comp, verify_composition(ts));
            hb = std::max(hb, h_block_residual(ts));
            pin = std::max(pin, (ts.G.compose(ts.G).matrix() - ts.G.matrix()).norm());
        }
        for (const auto& p : {"0 + 1/2 + 1", "1/2 + 3/2", "0 + 1", "0 + 1/2"}) {
            const auto pi = parse_rep(p);
            par = std::max(par, parity_residual(pi, q));
            if (all_parities_equal(pi, q) != essentially_type_II(pi)) pred += 1.0;
        }
    }
    const auto d = join_qs(qs);
    return {{"composition.three_step", comp, d + "; pi in {2x1/2, 0 + 1, 1/2 + 3/2, 1}, sigma = 1/2"},
            {"composition.h_block", hb, d + "; two realizations of H on G(M(pi))"},
            {"composition.pinching", pin, d + "; ||G o G - G||"},
            {"composition.parity", par, d + "; |exp(i T0 log f) - parity|"},
            {"composition.type_II_predicates", pred, d + "; disagreements between the two criteria"}};
}

const std::vector<std::string>& verify_targets() {
    static const std::vector<std::string> t = {"relations", "haar", "cg", "lemma1", "composition", "all"};
    return t;
}

std::vector<CheckResult> run_verify(std::string_view target, const VerifyOptions& opts) {
    auto grid = [&](std::vector<double> dflt) { return opts.q ? std::vector<double>{*opts.q} : dflt; };
    using Suite = std::function<std::vector<CheckResult>()>;
    std::vector<std::pair<std::string, Suite>> suites = {
        {"relations", [&] { return verify_relations(grid({0.3, 0.5, 0.7})); }},
        {"haar", [&] { return verify_haar(grid({0.3, 0.5, 0.7})); }},
        {"cg", [&] { return verify_cg(grid({0.3, 0.7})); }},
        {"lemma1", [&] { return verify_lemma1(grid({0.3, 0.5, 0.7})); }},
        {"composition", [&] { return verify_composition_suite(grid({0.3, 0.6})); }},
    };
    if (opts.q) require_q(*opts.q);
    std::vector<Suite> chosen;
    for (const auto& [name, fn] : suites)
        if (target == "all" || target == name) chosen.push_back(fn);
    if (chosen.empty()) throw DomainError(fmt::format("unknown verify target '{}'", target));

    std::vector<CheckResult> out;
    if (opts.parallel && chosen.size() > 1) {
        std::vector<std::future<std::vector<CheckResult>>> fs;
        for (auto& fn : chosen) fs.push_back(std::async(std::launch::async, fn));
        for (auto& f : fs) {
            auto r = f.get();
            out.insert(out.end(), r.begin(), r.end());
        }
    } else {
        for (auto& fn : chosen) {
            auto r = fn();
            out.insert(out.end(), r.begin(), r.end());
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

nlohmann::json to_json(const std::vector<CheckResult>& r, double tol) {
    nlohmann::json checks = nlohmann::json::array();
    bool ok = true;
    for (const auto& c : r) {
        const bool pass = c.residual <= tol;
        ok = ok && pass;
        checks.push_back({{"name", c.name}, {"residual", c.residual}, {"pass", pass}, {"detail", c.detail}});
    }
    return {{"tol", tol}, {"pass", ok}, {"checks", checks}};
}

}  // namespace qsf
