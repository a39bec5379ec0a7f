#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsubfactor/corep.hpp"
#include "qsubfactor/qnum.hpp"

namespace qsf {

/// Desk-scale stand-in for an action Gamma : M -> M (x) A, namely
/// Gamma = Ad u(sigma) on M = B(V_sigma).
struct ToyAction {
    CorepDecomp sigma = CorepDecomp::trivial();
    double q = 0.5;

    int dim() const { return sigma.classical_dim(); }
};

/// Linear map between square-matrix spaces, acting on row-major vec(X).
class MatrixMap {
public:
    MatrixMap() = default;
    MatrixMap(int in_side, int out_side, Eigen::MatrixXd m);
    static MatrixMap identity(int side);

    int in_side() const noexcept { return in_; }
    int out_side() const noexcept { return out_; }
    const Eigen::MatrixXd& matrix() const noexcept { return m_; }

    Eigen::MatrixXd operator()(const Eigen::MatrixXd& x) const;
    /// this after inner
    MatrixMap compose(const MatrixMap& inner) const;
    /// Numerical rank of the map (singular values above tol * largest).
    int rank(double rel_tol = 1e-9) const;

private:
    int in_ = 0, out_ = 0;
    Eigen::MatrixXd m_;
};

/// Row-major vec and its inverse.
Eigen::VectorXd vec(const Eigen::MatrixXd& x);
Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int side);

/// E(X) = (id (x) h)(U (X (x) 1) U^*) with U = u(pi)_{13} u(sigma)_{23}, on
/// B(V_pi (x) V_sigma).  Entries h(U_ik U_jl^*) are evaluated in the
/// Peter-Weyl model.  Its range is End(pi (x) sigma).
MatrixMap fixed_expectation(const CorepDecomp& pi, const ToyAction& act);

/// E_Gamma on B(V_sigma).
MatrixMap action_expectation(const ToyAction& act);

/// (tau_q^{(pi,+-)} (x) id) : B(V_pi (x) V_sigma) -> B(V_sigma).
MatrixMap fubini_qtrace(const CorepDecomp& pi, TraceSign sign, int sigma_dim, double q);

/// Normalized Frobenius distance between (tau^- (x) id) o E_{Ad pi (x) Gamma}
/// and E_Gamma o (tau^+ (x) id) over the matrix-unit basis:
/// sqrt(sum_units ||lhs - rhs||_F^2) / (number of units).
double lemma1_check(const CorepDecomp& pi, const ToyAction& act);

/// Ind E = dim_q(pi)^2.
LaurentPoly index_poly(const CorepDecomp& pi);
double index_value(const CorepDecomp& pi, double q);

struct TowerData {
    CorepDecomp pi = CorepDecomp::trivial();
    std::vector<CorepDecomp> rhos;
    std::vector<std::vector<int>> end_dims;
    /// inclusion_matrices[k](i, j): multiplicity of block j of rho_{k+1}
    /// in (block i of rho_k) (x) pi (or its dual).
    std::vector<std::vector<std::vector<int>>> inclusion_matrices;
    LaurentPoly index_poly;

    /// sum over blocks of m^2 for rho_k.
    long end_dim(std::size_t k) const;
};

/// rho_0 = pi, rho_{2m+1} = dual(pi) (x) rho_{2m}, rho_{2m} = pi (x) rho_{2m-1}.
TowerData jones_tower(const CorepDecomp& pi, int n);

/// max |end_dims[k+1] - G_k^T end_dims[k]|; 0 when the Bratteli data is consistent.
long bratteli_defect(const TowerData& t);

/// {"rhos": [...], "end_dims": ..., "inclusion_matrices": ..., "index": {"poly", "value"?}}
nlohmann::json to_json(const TowerData& t, const double* q = nullptr);
/// Graphviz rendering of the Bratteli diagram.
std::string to_dot(const TowerData& t);

}  // namespace qsf
