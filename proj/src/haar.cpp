#include "qsubfactor/haar.hpp"

#include <cmath>
#include <mutex>
#include <tuple>

#include "qsubfactor/error.hpp"
#include "qsubfactor/uqsl2.hpp"

namespace qsf {

namespace {

constexpr double kPrune = 1e-14;

struct ConjData {
    Eigen::MatrixXd J, Jinv;
};

// CG tables and conjugation intertwiners are built on first use and never
// mutated afterwards; the lock serializes population.  std::map nodes are
// stable, so returned references stay valid.
class Tables {
public:
    static Tables& instance() {
        static Tables t;
        return t;
    }

    // Isometries of V_{t2} (x) V_{t1}.
    const std::vector<CGIsometry>& cg(double q, int t2, int t1) {
        std::lock_guard lock(mu_);
        auto key = std::make_tuple(q, t2, t1);
        auto it = cg_.find(key);
        if (it == cg_.end()) it = cg_.emplace(key, decompose(tensor(irrep(Spin(t2), q), irrep(Spin(t1), q)))).first;
        return it->second;
    }

    // Spin-0 column of V_t (x) V_t.
    const Eigen::VectorXd& singlet(double q, int t) {
        std::lock_guard lock(mu_);
        auto it = singlets_.find({q, t});
        if (it != singlets_.end()) return it->second;
        for (const auto& c : cg(q, t, t))
            if (c.target_spin.twice() == 0) return singlets_.emplace(std::make_pair(q, t), c.C.col(0)).first->second;
        throw NumericalDegeneracy("no spin-0 summand in V_l (x) V_l");
    }

    // J_{ba} = singlet_{(a,b)}; star(u) = J u^T J^{-1}.
    const ConjData& conj(double q, int t) {
        std::lock_guard lock(mu_);
        auto it = conj_.find({q, t});
        if (it != conj_.end()) return it->second;
        const Eigen::VectorXd& s = singlet(q, t);
        const int d = t + 1;
        ConjData c;
        c.J.resize(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) c.J(b, a) = s(a * d + b);
        c.Jinv = c.J.inverse();
        return conj_.emplace(std::make_pair(q, t), std::move(c)).first->second;
    }

private:
    std::recursive_mutex mu_;
    std::map<std::tuple<double, int, int>, std::vector<CGIsometry>> cg_;
    std::map<std::pair<double, int>, Eigen::VectorXd> singlets_;
    std::map<std::pair<double, int>, ConjData> conj_;
};

void require_same_q(double a, double b) {
    if (a != b) throw DomainError("Peter-Weyl elements at different q");
}

}  // namespace

std::string to_string(const Symbol& s) {
    return "u[l=" + to_string(Spin(s.twice)) + ";" + std::to_string(s.i + 1) + "," + std::to_string(s.j + 1) + "]";
}

PWElement::PWElement(double q) : q_(q) { require_q(q); }

PWElement::PWElement(double q, Terms terms) : q_(q), terms_(std::move(terms)) {
    require_q(q);
    for (const auto& [s, c] : terms_)
        if (s.twice < 0 || s.i < 0 || s.j < 0 || s.i > s.twice || s.j > s.twice)
            throw DomainError("invalid matrix-coefficient symbol " + to_string(s));
    prune();
}

PWElement PWElement::unit(double q) { return symbol(q, Symbol{0, 0, 0}); }

PWElement PWElement::symbol(double q, Symbol s, double coeff) { return PWElement(q, Terms{{s, coeff}}); }

double PWElement::coeff(const Symbol& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? 0.0 : it->second;
}

double PWElement::max_abs() const {
    double m = 0.0;
    for (const auto& [s, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

int PWElement::max_twice() const {
    int m = -1;
    for (const auto& [s, c] : terms_) m = std::max(m, s.twice);
    return m;
}

void PWElement::prune() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kPrune; });
}

PWElement& PWElement::operator+=(const PWElement& rhs) {
    require_same_q(q_, rhs.q_);
    for (const auto& [s, c] : rhs.terms_) terms_[s] += c;
    prune();
    return *this;
}

PWElement& PWElement::operator-=(const PWElement& rhs) {
    require_same_q(q_, rhs.q_);
    for (const auto& [s, c] : rhs.terms_) terms_[s] -= c;
    prune();
    return *this;
}

PWElement& PWElement::operator*=(double s) {
    for (auto& [sym, c] : terms_) c *= s;
    prune();
    return *this;
}

PWElement generator(std::string_view name, double q) {
    require_q(q);
    if (name == "x") return PWElement::symbol(q, {1, 0, 0});
    if (name == "u") return PWElement::symbol(q, {1, 0, 1});
    if (name == "v") return PWElement::symbol(q, {1, 1, 0});
    if (name == "y") return PWElement::symbol(q, {1, 1, 1});
    throw DomainError("unknown generator '" + std::string(name) + "' (expected x, u, v or y)");
}

PWElement multiply(const PWElement& a, const PWElement& b) {
    require_same_q(a.q(), b.q());
    const double q = a.q();
    PWElement::Terms acc;
    for (const auto& [sa, ca] : a.terms()) {
        for (const auto& [sb, cb] : b.terms()) {
            const int d1 = sa.twice + 1;
            const Eigen::Index row = sb.i * d1 + sa.i;
            const Eigen::Index col = sb.j * d1 + sa.j;
            for (const auto& iso : Tables::instance().cg(q, sb.twice, sa.twice)) {
                const int t = iso.target_spin.twice();
                for (int r = 0; r <= t; ++r) {
                    const double cr = iso.C(row, r);
                    if (cr == 0.0) continue;
                    for (int s = 0; s <= t; ++s) {
                        const double cs = iso.C(col, s);
                        if (cs != 0.0) acc[Symbol{t, r, s}] += ca * cb * cr * cs;
                    }
                }
            }
        }
    }
    return PWElement(q, std::move(acc));
}

PWElement star(const PWElement& a) {
    const double q = a.q();
    PWElement::Terms acc;
    // star(u_{ji}) = sum_{k,l} J_{ik} u_{lk} Jinv_{lj}
    for (const auto& [s, c] : a.terms()) {
        const auto& cj = Tables::instance().conj(q, s.twice);
        const int j = s.i;
        const int i = s.j;
        for (int k = 0; k <= s.twice; ++k) {
            const double jk = cj.J(i, k);
            if (jk == 0.0) continue;
            for (int l = 0; l <= s.twice; ++l) {
                const double jl = cj.Jinv(l, j);
                if (jl != 0.0) acc[Symbol{s.twice, l, k}] += c * jk * jl;
            }
        }
    }
    return PWElement(q, std::move(acc));
}

double haar(const PWElement& a) { return a.coeff(Symbol{0, 0, 0}); }

double haar_product(const PWElement& a, const PWElement& b) {
    require_same_q(a.q(), b.q());
    double h = 0.0;
    for (const auto& [sa, ca] : a.terms()) {
        for (const auto& [sb, cb] : b.terms()) {
            if (sa.twice != sb.twice) continue;
            const int d = sa.twice + 1;
            const auto& s = Tables::instance().singlet(a.q(), sa.twice);
            h += ca * cb * s(sb.i * d + sa.i) * s(sb.j * d + sa.j);
        }
    }
    return h;
}

PWTensor delta(const PWElement& a) {
    PWTensor t;
    t.q = a.q();
    for (const auto& [s, c] : a.terms())
        for (int k = 0; k <= s.twice; ++k) t.terms[{Symbol{s.twice, s.i, k}, Symbol{s.twice, k, s.j}}] += c;
    return t;
}

PWElement haar_left(const PWTensor& t) {
    PWElement::Terms acc;
    for (const auto& [pair, c] : t.terms)
        if (pair.first == Symbol{0, 0, 0}) acc[pair.second] += c;
    return PWElement(t.q, std::move(acc));
}

PWElement haar_right(const PWTensor& t) {
    PWElement::Terms acc;
    for (const auto& [pair, c] : t.terms)
        if (pair.second == Symbol{0, 0, 0}) acc[pair.first] += c;
    return PWElement(t.q, std::move(acc));
}

double coassociativity_defect(const PWElement& a) {
    using Triple = std::array<Symbol, 3>;
    std::map<Triple, double> left, right;
    for (const auto& [pair, c] : delta(a).terms) {
        for (const auto& [p1, c1] : delta(PWElement::symbol(a.q(), pair.first)).terms)
            left[{p1.first, p1.second, pair.second}] += c * c1;
        for (const auto& [p2, c2] : delta(PWElement::symbol(a.q(), pair.second)).terms)
            right[{pair.first, p2.first, p2.second}] += c * c2;
    }
    double d = 0.0;
    for (const auto& [k, v] : left) {
        auto it = right.find(k);
        d = std::max(d, std::abs(v - (it == right.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, v] : right)
        if (!left.contains(k)) d = std::max(d, std::abs(v));
    return d;
}

PWMatrix corep_matrix(const CorepDecomp& a, double q) {
    const int n = a.classical_dim();
    PWMatrix u(n, std::vector<PWElement>(n, PWElement(q)));
    int off = 0;
    for (const auto& b : a.blocks()) {
        const int d = b.spin.dim();
        for (int c = 0; c < b.mult; ++c) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) u[off + i][off + j] = PWElement::symbol(q, Symbol{b.spin.twice(), i, j});
            off += d;
        }
    }
    return u;
}

PWMatrix tensor_corep_matrix(const PWMatrix& pi, const PWMatrix& sigma) {
    const std::size_t np = pi.size(), ns = sigma.size();
    if (np == 0 || ns == 0) throw ShapeError("tensor_corep_matrix: empty matrix");
    const double q = pi[0][0].q();
    PWMatrix u(np * ns, std::vector<PWElement>(np * ns, PWElement(q)));
    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t c = 0; c < np; ++c) {
            if (pi[a][c].is_zero()) continue;
            for (std::size_t b = 0; b < ns; ++b)
                for (std::size_t d = 0; d < ns; ++d)
                    if (!sigma[b][d].is_zero()) u[a * ns + b][c * ns + d] = multiply(pi[a][c], sigma[b][d]);
        }
    return u;
}

PWMatrix adjoint(const PWMatrix& u) {
    const std::size_t n = u.size();
    PWMatrix r(n, std::vector<PWElement>(n, PWElement(u[0][0].q())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = star(u[j][i]);
    return r;
}

PWMatrix matmul(const PWMatrix& a, const PWMatrix& b) {
    const std::size_t n = a.size(), m = b.size(), p = b.empty() ? 0 : b[0].size();
    if (n == 0 || a[0].size() != m) throw ShapeError("matmul: inner dimensions differ");
    PWMatrix r(n, std::vector<PWElement>(p, PWElement(a[0][0].q())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < m; ++k)
                if (!a[i][k].is_zero() && !b[k][j].is_zero()) r[i][j] += multiply(a[i][k], b[k][j]);
    return r;
}

nlohmann::json to_json(const PWElement& a) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [s, c] : a.terms()) terms.push_back({{"symbol", to_string(s)}, {"coeff", c}});
    return {{"q", a.q()}, {"terms", terms}};
}

}  // namespace qsf
