#include "qsubfactor/wassermann.hpp"

#include <cmath>
#include <sstream>

#include "qsubfactor/error.hpp"
#include "qsubfactor/haar.hpp"

namespace qsf {

MatrixMap::MatrixMap(int in_side, int out_side, Eigen::MatrixXd m) : in_(in_side), out_(out_side), m_(std::move(m)) {
    if (m_.rows() != out_ * out_ || m_.cols() != in_ * in_) throw ShapeError("MatrixMap: inconsistent sizes");
}

MatrixMap MatrixMap::identity(int side) {
    return MatrixMap(side, side, Eigen::MatrixXd::Identity(side * side, side * side));
}

Eigen::VectorXd vec(const Eigen::MatrixXd& x) {
    Eigen::VectorXd v(x.size());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j) v(i * x.cols() + j) = x(i, j);
    return v;
}

Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int side) {
    Eigen::MatrixXd x(side, side);
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) x(i, j) = v(i * side + j);
    return x;
}

Eigen::MatrixXd MatrixMap::operator()(const Eigen::MatrixXd& x) const {
    if (x.rows() != in_ || x.cols() != in_)
        throw ShapeError("MatrixMap: expected side " + std::to_string(in_) + ", got " + std::to_string(x.rows()));
    return unvec(m_ * vec(x), out_);
}

MatrixMap MatrixMap::compose(const MatrixMap& inner) const {
    if (inner.out_ != in_) throw ShapeError("MatrixMap::compose: side mismatch");
    return MatrixMap(inner.in_, out_, m_ * inner.m_);
}

int MatrixMap::rank(double rel_tol) const {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m_);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

MatrixMap fixed_expectation(const CorepDecomp& pi, const ToyAction& act) {
    require_q(act.q);
    const PWMatrix u = tensor_corep_matrix(corep_matrix(pi, act.q), corep_matrix(act.sigma, act.q));
    const int n = static_cast<int>(u.size());
    PWMatrix ustar(n, std::vector<PWElement>(n, PWElement(act.q)));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) ustar[j][l] = star(u[j][l]);

    // E(X)_{ij} = sum_{kl} h(U_ik U_jl^*) X_kl
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (u[i][k].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    if (!ustar[j][l].is_zero()) m(i * n + j, k * n + l) = haar_product(u[i][k], ustar[j][l]);
        }
    return MatrixMap(n, n, std::move(m));
}

MatrixMap action_expectation(const ToyAction& act) { return fixed_expectation(CorepDecomp::trivial(), act); }

MatrixMap fubini_qtrace(const CorepDecomp& pi, TraceSign sign, int sigma_dim, double q) {
    require_q(q);
    const int np = pi.classical_dim();
    const int n = np * sigma_dim;
    const std::vector<int> e = f_matrix(pi).exponents();
    const double dq = eval(dim_q(pi), q);
    const int power = sign == TraceSign::plus ? 1 : -1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(sigma_dim * sigma_dim, n * n);
    for (int a = 0; a < np; ++a) {
        const double w = std::pow(q, power * e[a]) / dq;
        for (int b = 0; b < sigma_dim; ++b)
            for (int d = 0; d < sigma_dim; ++d) m(b * sigma_dim + d, (a * sigma_dim + b) * n + a * sigma_dim + d) = w;
    }
    return MatrixMap(n, sigma_dim, std::move(m));
}

double lemma1_check(const CorepDecomp& pi, const ToyAction& act) {
    const int ds = act.dim();
    const MatrixMap e = fixed_expectation(pi, act);
    const MatrixMap eg = action_expectation(act);
    const MatrixMap lhs = fubini_qtrace(pi, TraceSign::minus, ds, act.q).compose(e);
    const MatrixMap rhs = eg.compose(fubini_qtrace(pi, TraceSign::plus, ds, act.q));
    // Column k of each matrix is the image of the k-th matrix unit.
    const Eigen::Index units = lhs.matrix().cols();
    return (lhs.matrix() - rhs.matrix()).norm() / static_cast<double>(units);
}

LaurentPoly index_poly(const CorepDecomp& pi) {
    const LaurentPoly d = dim_q(pi);
    return d * d;
}

double index_value(const CorepDecomp& pi, double q) { return eval(index_poly(pi), q); }

long TowerData::end_dim(std::size_t k) const {
    long s = 0;
    for (int m : end_dims.at(k)) s += static_cast<long>(m) * m;
    return s;
}

namespace {

std::vector<int> multiplicities(const CorepDecomp& a) {
    std::vector<int> m;
    for (const auto& b : a.blocks()) m.push_back(b.mult);
    return m;
}

std::vector<std::vector<int>> branching(const CorepDecomp& from, const CorepDecomp& step, const CorepDecomp& to) {
    std::vector<std::vector<int>> g(from.size(), std::vector<int>(to.size(), 0));
    for (std::size_t i = 0; i < from.size(); ++i) {
        const CorepDecomp image = fuse(CorepDecomp::irreducible(from.blocks()[i].spin), step);
        for (std::size_t j = 0; j < to.size(); ++j) g[i][j] = image.mult(to.blocks()[j].spin);
    }
    return g;
}

}  // namespace

TowerData jones_tower(const CorepDecomp& pi, int n) {
    if (n < 0) throw DomainError("jones_tower: depth must be nonnegative");
    TowerData t;
    t.pi = pi;
    t.index_poly = index_poly(pi);
    t.rhos.push_back(pi);
    t.end_dims.push_back(multiplicities(pi));
    const CorepDecomp pihat = dual(pi);
    for (int k = 1; k <= n; ++k) {
        const CorepDecomp& step = (k % 2 == 1) ? pihat : pi;
        CorepDecomp next = fuse(step, t.rhos.back());
        t.inclusion_matrices.push_back(branching(t.rhos.back(), step, next));
        t.end_dims.push_back(multiplicities(next));
        t.rhos.push_back(std::move(next));
    }
    return t;
}

long bratteli_defect(const TowerData& t) {
    long worst = 0;
    for (std::size_t k = 0; k + 1 < t.rhos.size(); ++k) {
        const auto& g = t.inclusion_matrices[k];
        const auto& cur = t.end_dims[k];
        const auto& nxt = t.end_dims[k + 1];
        for (std::size_t j = 0; j < nxt.size(); ++j) {
            long s = 0;
            for (std::size_t i = 0; i < cur.size(); ++i) s += static_cast<long>(cur[i]) * g[i][j];
            worst = std::max(worst, std::abs(s - nxt[j]));
        }
    }
    return worst;
}

nlohmann::json to_json(const TowerData& t, const double* q) {
    nlohmann::json rhos = nlohmann::json::array();
    for (const auto& r : t.rhos) rhos.push_back(render(r));
    nlohmann::json index = {{"poly", to_string(t.index_poly)}};
    if (q) index["value"] = eval(t.index_poly, *q);
    return {{"rhos", rhos},
            {"end_dims", t.end_dims},
            {"inclusion_matrices", t.inclusion_matrices},
            {"index", index}};
}

std::string to_dot(const TowerData& t) {
    std::ostringstream os;
    os << "digraph bratteli {\n  rankdir=TB;\n";
    for (std::size_t k = 0; k < t.rhos.size(); ++k) {
        os << "  { rank=same;";
        for (const auto& b : t.rhos[k].blocks()) os << " \"" << k << ":" << to_string(b.spin) << "\";";
        os << " }\n";
        for (const auto& b : t.rhos[k].blocks())
            os << "  \"" << k << ":" << to_string(b.spin) << "\" [label=\"" << to_string(b.spin) << " (" << b.mult
               << ")\"];\n";
    }
    for (std::size_t k = 0; k < t.inclusion_matrices.size(); ++k) {
        const auto& g = t.inclusion_matrices[k];
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g[i].size(); ++j)
                for (int e = 0; e < g[i][j]; ++e)
                    os << "  \"" << k << ":" << to_string(t.rhos[k].blocks()[i].spin) << "\" -> \"" << k + 1 << ":"
                       << to_string(t.rhos[k + 1].blocks()[j].spin) << "\";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qsf
