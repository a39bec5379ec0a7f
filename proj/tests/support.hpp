#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "qsubfactor/corep.hpp"
#include "qsubfactor/uqsl2.hpp"

namespace qsf::testing {

/// Random decomposition with spins 2l <= max_twice and multiplicities <= max_mult.
inline CorepDecomp random_corep(std::mt19937& rng, int max_twice, int max_mult = 3, int max_terms = 4) {
    std::uniform_int_distribution<int> terms(1, max_terms), twice(0, max_twice), mult(1, max_mult);
    std::vector<Block> b;
    const int n = terms(rng);
    for (int i = 0; i < n; ++i) b.push_back(Block{Spin(twice(rng)), mult(rng)});
    return CorepDecomp(std::move(b));
}

/// Weight multiset {2m -> count} of a representation.
inline std::map<int, int> character(const CorepDecomp& a) {
    std::map<int, int> ch;
    for (const auto& b : a.blocks())
        for (int w = -b.spin.twice(); w <= b.spin.twice(); w += 2) ch[w] += b.mult;
    return ch;
}

/// Peels highest weights off a character.
inline CorepDecomp from_character(std::map<int, int> ch) {
    std::vector<Block> out;
    while (!ch.empty()) {
        auto it = std::prev(ch.end());
        const int top = it->first, m = it->second;
        if (m == 0) {
            ch.erase(it);
            continue;
        }
        out.push_back(Block{Spin(top), m});
        for (int w = -top; w <= top; w += 2)
            if ((ch[w] -= m) == 0) ch.erase(w);
    }
    return CorepDecomp(std::move(out));
}

inline CorepDecomp fuse_by_characters(const CorepDecomp& a, const CorepDecomp& b) {
    std::map<int, int> ch;
    for (auto [wa, ma] : character(a))
        for (auto [wb, mb] : character(b)) ch[wa + wb] += ma * mb;
    return from_character(std::move(ch));
}

/// Classical Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> (Racah), arguments doubled.
inline double classical_cg(int j1, int m1, int j2, int m2, int J, int M) {
    if (m1 + m2 != M) return 0.0;
    auto f = [](int twice) { return std::tgamma(twice / 2 + 1.0); };
    const double pre = std::sqrt((J + 1.0) * f(J + j1 - j2) * f(J - j1 + j2) * f(j1 + j2 - J) / f(j1 + j2 + J + 2)) *
                       std::sqrt(f(J + M) * f(J - M) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2));
    double s = 0.0;
    for (int k = 0; k <= 2 * (j1 + j2); k += 2) {
        const int a[] = {j1 + j2 - J - k, j1 - m1 - k, j2 + m2 - k, J - j2 + m1 + k, J - j1 - m2 + k};
        bool ok = true;
        for (int x : a) ok = ok && x >= 0;
        if (!ok) continue;
        double d = f(k);
        for (int x : a) d *= f(x);
        s += ((k / 2) % 2 ? -1.0 : 1.0) / d;
    }
    return pre * s;
}

/// Dimension of the commutant of {K, E, F} with K diagonal, by brute force:
/// X commutes with K iff it preserves the eigenspaces of K, so only those
/// entries are unknowns; the remaining generators give X -> [A, X] = 0.
inline int commutant_dim(const Eigen::MatrixXd& K, const std::vector<Eigen::MatrixXd>& gens) {
    const Eigen::Index n = K.rows();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> unknowns;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l)
            if (std::abs(K(k, k) - K(l, l)) <= 1e-12 * std::max(std::abs(K(k, k)), 1.0)) unknowns.emplace_back(k, l);
    const auto nu = static_cast<Eigen::Index>(unknowns.size());
    Eigen::MatrixXd big(static_cast<Eigen::Index>(gens.size()) * n * n, nu);
    for (std::size_t g = 0; g < gens.size(); ++g)
        for (Eigen::Index u = 0; u < nu; ++u) {
            const auto [k, l] = unknowns[static_cast<std::size_t>(u)];
            // [A, e_kl] = A e_kl - e_kl A
            Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
            c.col(l) += gens[g].col(k);
            c.row(k) -= gens[g].row(l);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    big(static_cast<Eigen::Index>(g) * n * n + i * n + j, u) = c(i, j);
        }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(big);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * s(0)) ++rank;
    return static_cast<int>(nu) - rank;
}

/// Direct sum of U_q(sl2) actions for a CorepDecomp, in the global basis.
inline ActionMatrices module_of(const CorepDecomp& a, double q) {
    const int n = a.classical_dim();
    ActionMatrices m;
    m.q = q;
    m.E = m.F = m.K = Eigen::MatrixXd::Zero(n, n);
    int off = 0;
    for (const auto& b : a.blocks())
        for (int c = 0; c < b.mult; ++c) {
            const auto ir = irrep(b.spin, q);
            const int d = b.spin.dim();
            m.E.block(off, off, d, d) = ir.E;
            m.F.block(off, off, d, d) = ir.F;
            m.K.block(off, off, d, d) = ir.K;
            off += d;
        }
    return m;
}

inline long catalan(int k) {
    long c = 1;
    for (int i = 0; i < k; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

}  // namespace qsf::testing
