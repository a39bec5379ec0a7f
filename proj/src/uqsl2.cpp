#include "qsubfactor/uqsl2.hpp"

#include <cmath>
#include <functional>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <map>
#include <string>

#include "qsubfactor/error.hpp"

namespace qsf {

namespace {

// [n]_q summed term by term; stable as q -> 1.
double qnumber(int n, double q) {
    if (n <= 0) return 0.0;
    double s = 0.0;
    for (int k = -(n - 1); k <= n - 1; k += 2) s += std::pow(q, k);
    return s;
}

}  // namespace

IrrepModel irrep(Spin s, double q) {
    require_q(q);
    const int d = s.dim();
    const int t = s.twice();
    IrrepModel m;
    m.q = q;
    m.spin = s;
    m.factors = {s};
    m.E = Eigen::MatrixXd::Zero(d, d);
    m.F = Eigen::MatrixXd::Zero(d, d);
    m.K = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const int two_m = -t + 2 * k;
        m.K(k, k) = std::pow(q, two_m);
        if (k + 1 < d) {
            // E|m> = a|m+1>, F|m+1> = b|m>, ab = [l-m][l+m+1], a = q^{2m+2} b.
            const double c = qnumber((t - two_m) / 2, q) * qnumber((t + two_m) / 2 + 1, q);
            m.E(k + 1, k) = std::sqrt(c * std::pow(q, two_m + 2));
            m.F(k, k + 1) = std::sqrt(c * std::pow(q, -(two_m + 2)));
        }
    }
    return m;
}

TensorModel as_tensor(const IrrepModel& a) {
    TensorModel t;
    static_cast<ActionMatrices&>(t) = a;
    return t;
}

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

}  // namespace

TensorModel tensor(const ActionMatrices& a, const ActionMatrices& b) {
    if (a.q != b.q) throw DomainError("tensor: mismatched q");
    const auto ia = Eigen::MatrixXd::Identity(a.dim(), a.dim());
    const auto ib = Eigen::MatrixXd::Identity(b.dim(), b.dim());
    const Eigen::MatrixXd kinv = a.K.diagonal().cwiseInverse().asDiagonal();
    TensorModel t;
    t.q = a.q;
    t.E = kron(a.E, b.K) + kron(ia, b.E);
    t.F = kron(a.F, ib) + kron(kinv, b.F);
    t.K = kron(a.K, b.K);
    t.factors = a.factors;
    t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
    return t;
}

double relation_residual(const ActionMatrices& m) {
    const double q = m.q;
    const Eigen::MatrixXd kinv = m.K.diagonal().cwiseInverse().asDiagonal();
    const double r1 = (m.K * m.E - q * q * m.E * m.K).norm();
    const double r2 = (m.K * m.F - m.F * m.K / (q * q)).norm();
    const double r3 = (m.E * m.F - m.F * m.E - (m.K - kinv) / (q - 1.0 / q)).norm();
    return std::max({r1, r2, r3});
}

std::vector<int> module_weights(const ActionMatrices& m) {
    std::vector<int> w(static_cast<std::size_t>(m.dim()));
    const double lq = std::log(m.q);
    for (Eigen::Index i = 0; i < m.dim(); ++i)
        w[static_cast<std::size_t>(i)] = static_cast<int>(std::lround(std::log(m.K(i, i)) / lq));
    return w;
}

namespace {

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                           boost::multiprecision::et_off>;
template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T>
struct WideModel {
    Mat<T> E, F, K;
};

// Same construction as irrep()/tensor(), in scalar type T.
template <typename T>
WideModel<T> build(const std::vector<Spin>& factors, double q_in) {
    using std::pow;
    using std::sqrt;
    const T q(q_in);
    auto qn = [&](int n) {
        T s(0);
        for (int k = -(n - 1); k <= n - 1; k += 2) s += pow(q, k);
        return s;
    };
    WideModel<T> acc;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const int t = factors[f].twice();
        const int d = t + 1;
        WideModel<T> m{Mat<T>::Zero(d, d), Mat<T>::Zero(d, d), Mat<T>::Zero(d, d)};
        for (int k = 0; k < d; ++k) {
            const int two_m = -t + 2 * k;
            m.K(k, k) = pow(q, two_m);
            if (k + 1 < d) {
                const T c = qn((t - two_m) / 2) * qn((t + two_m) / 2 + 1);
                m.E(k + 1, k) = sqrt(c * pow(q, two_m + 2));
                m.F(k, k + 1) = sqrt(c * pow(q, -(two_m + 2)));
            }
        }
        if (f == 0) {
            acc = std::move(m);
            continue;
        }
        auto kr = [](const Mat<T>& a, const Mat<T>& b) {
            Mat<T> r(a.rows() * b.rows(), a.cols() * b.cols());
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index j = 0; j < a.cols(); ++j)
                    r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
            return r;
        };
        const Mat<T> ia = Mat<T>::Identity(acc.K.rows(), acc.K.rows());
        const Mat<T> ib = Mat<T>::Identity(d, d);
        Mat<T> kinv = Mat<T>::Zero(acc.K.rows(), acc.K.rows());
        for (Eigen::Index i = 0; i < kinv.rows(); ++i) kinv(i, i) = T(1) / acc.K(i, i);
        WideModel<T> next{kr(acc.E, m.K) + kr(ia, m.E), kr(acc.F, ib) + kr(kinv, m.F), kr(acc.K, m.K)};
        acc = std::move(next);
    }
    return acc;
}

template <typename T>
std::vector<CGIsometry> decompose_impl(const Mat<T>& E, const Mat<T>& F, const std::vector<int>& weights,
                                       double kernel_rel_tol) {
    using std::sqrt;
    std::map<int, std::vector<Eigen::Index>, std::greater<>> spaces;
    for (std::size_t i = 0; i < weights.size(); ++i) spaces[weights[i]].push_back(static_cast<Eigen::Index>(i));

    const T enorm = E.norm();
    const T tol = T(kernel_rel_tol) * (enorm > T(1) ? enorm : T(1));
    const Eigen::Index n = E.rows();
    std::vector<CGIsometry> out;

    for (const auto& [top, idx] : spaces) {
        if (top < 0) break;
        const auto above = spaces.find(top + 2);
        const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
        const Eigen::Index expected = k - (above == spaces.end() ? 0 : static_cast<Eigen::Index>(above->second.size()));
        if (expected <= 0) continue;

        Mat<T> kernel;
        if (above == spaces.end()) {
            kernel = Mat<T>::Identity(k, k);
        } else {
            const auto& tgt = above->second;
            Mat<T> sub(static_cast<Eigen::Index>(tgt.size()), k);
            for (std::size_t r = 0; r < tgt.size(); ++r)
                for (Eigen::Index c = 0; c < k; ++c) sub(static_cast<Eigen::Index>(r), c) = E(tgt[r], idx[c]);
            Eigen::JacobiSVD<Mat<T>> svd(sub, Eigen::ComputeFullV);
            const auto& sv = svd.singularValues();
            Eigen::Index rank = 0;
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv(i) > tol) ++rank;
            if (k - rank != expected)
                throw NumericalDegeneracy("decompose: kernel of E on weight space 2m = " + std::to_string(top) +
                                          " has dimension " + std::to_string(k - rank) + ", expected " +
                                          std::to_string(expected));
            kernel = svd.matrixV().rightCols(k - rank);
        }

        for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
            Mat<T> C(n, top + 1);
            Vec<T> v = Vec<T>::Zero(n);
            for (Eigen::Index r = 0; r < k; ++r) v(idx[r]) = kernel(r, c);
            v /= v.norm();
            C.col(top) = v;
            for (int step = top - 1; step >= 0; --step) {
                v = F * v;
                const T nv = v.norm();
                if (nv < tol)
                    throw NumericalDegeneracy("decompose: lowering chain from weight 2m = " + std::to_string(top) +
                                              " collapsed at weight 2m = " + std::to_string(2 * step - top));
                v /= nv;
                C.col(step) = v;
            }
            Eigen::MatrixXd Cd(n, top + 1);
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j <= top; ++j) Cd(i, j) = static_cast<double>(C(i, j));
            for (Eigen::Index j = 0; j < Cd.size(); ++j) {
                const double x = Cd.data()[j];
                if (std::abs(x) > 1e-12) {
                    if (x < 0) Cd = -Cd;
                    break;
                }
            }
            out.push_back(CGIsometry{Spin(top), std::move(Cd)});
        }
    }
    return out;
}

}  // namespace

std::vector<CGIsometry> decompose(const TensorModel& t, DecomposeOptions opts) {
    const auto weights = module_weights(t);
    long dim = t.factors.empty() ? 0 : 1;
    for (const auto s : t.factors) dim *= s.dim();
    if (opts.wide && dim == t.dim()) {
        const auto w = build<Wide>(t.factors, t.q);
        return decompose_impl<Wide>(w.E, w.F, weights, opts.wide_kernel_rel_tol);
    }
    return decompose_impl<double>(t.E, t.F, weights, opts.kernel_rel_tol);
}

double completeness_residual(const std::vector<CGIsometry>& cgs, Eigen::Index dim) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& c : cgs) s += c.C * c.C.transpose();
    return (s - Eigen::MatrixXd::Identity(dim, dim)).norm();
}

double isometry_residual(const std::vector<CGIsometry>& cgs) {
    double r = 0.0;
    for (const auto& c : cgs)
        r = std::max(r, (c.C.transpose() * c.C - Eigen::MatrixXd::Identity(c.C.cols(), c.C.cols())).norm());
    return r;
}

double intertwining_residual(const ActionMatrices& module, const std::vector<CGIsometry>& cgs) {
    double r = 0.0;
    for (const auto& c : cgs) {
        const IrrepModel ir = irrep(c.target_spin, module.q);
        r = std::max({r, (module.E * c.C - c.C * ir.E).norm(), (module.F * c.C - c.C * ir.F).norm(),
                      (module.K * c.C - c.C * ir.K).norm()});
    }
    return r;
}

CorepDecomp spin_content(const std::vector<CGIsometry>& cgs) {
    std::vector<Block> blocks;
    for (const auto& c : cgs) blocks.push_back(Block{c.target_spin, 1});
    return CorepDecomp(std::move(blocks));
}

nlohmann::json to_json(const CGIsometry& c) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < c.C.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < c.C.cols(); ++j) row.push_back(c.C(i, j));
        rows.push_back(row);
    }
    return {{"twice_ell", c.target_spin.twice()}, {"C", rows}};
}

}  // namespace qsf
