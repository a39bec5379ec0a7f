#pragma once

#include <Eigen/Dense>

#include <vector>

#include <nlohmann/json.hpp>

#include "qsubfactor/corep.hpp"

namespace qsf {

/// Action of E, F, K on a finite-dimensional U_q(sl2) module, weight basis.
///
/// K is diagonal with entries q^{2m}.  E and F are normalized so that the
/// module is unitary for the *-structure E^* = F K, K^* = K; this is the
/// structure preserved by the coproduct below, so tensor products stay
/// unitary for the standard inner product.
struct ActionMatrices {
    double q = 0.5;
    Eigen::MatrixXd E, F, K;
    /// Irreducible factors in tensor order.
    std::vector<Spin> factors;

    Eigen::Index dim() const { return K.rows(); }
};

struct IrrepModel : ActionMatrices {
    Spin spin;
};

struct TensorModel : ActionMatrices {};

/// Spin-l irreducible, basis m = -l..l ascending.  Throws DomainError unless 0 < q < 1.
IrrepModel irrep(Spin s, double q);

/// Coproduct Delta(E) = E(x)K + 1(x)E, Delta(F) = F(x)1 + K^{-1}(x)F, Delta(K) = K(x)K,
/// lexicographic basis (first factor slowest).  Throws DomainError on mismatched q.
TensorModel tensor(const ActionMatrices& a, const ActionMatrices& b);
TensorModel as_tensor(const IrrepModel& a);

/// Largest Frobenius residual of KE - q^2 EK, KF - q^{-2} FK and
/// [E,F] - (K - K^{-1})/(q - q^{-1}).
double relation_residual(const ActionMatrices& m);

/// Isometric intertwiner V_target -> module, columns in weight-ascending order.
struct CGIsometry {
    Spin target_spin;
    Eigen::MatrixXd C;
};

struct DecomposeOptions {
    /// Rebuild the module from its factor spins in 50-digit arithmetic and
    /// round the isometries at the end.  At small q the entries of E and F
    /// span many orders of magnitude and a double-precision kernel loses
    /// about half its digits; hand-assembled models without factor data
    /// always take the double path.
    bool wide = true;
    /// Singular values below this times max(1, ||E||) count as zero.
    double kernel_rel_tol = 1e-7;
    double wide_kernel_rel_tol = 1e-25;
};

/// Highest-weight decomposition of a module into irreducible isometries.
///
/// Steps: read weights off diag(K); in each nonnegative weight space take
/// ker E as highest-weight vectors (orthonormal, from an SVD); grow each
/// chain by F with normalization; assemble columns weight-ascending.  The
/// first entry of each C above 1e-12 in magnitude is made nonnegative.
/// Output order is discovery order: highest weight descending, then kernel
/// index.  Throws NumericalDegeneracy when the kernel dimension disagrees
/// with the weight-space count or a chain vector collapses.
std::vector<CGIsometry> decompose(const TensorModel& t, DecomposeOptions opts = {});

/// Weight 2m of each basis vector of a module (rounded from log K / log q).
std::vector<int> module_weights(const ActionMatrices& m);

/// ||sum_l C_l C_l^T - I||_F
double completeness_residual(const std::vector<CGIsometry>& cgs, Eigen::Index dim);
/// max over l of ||C_l^T C_l - I||_F
double isometry_residual(const std::vector<CGIsometry>& cgs);
/// max over l and X in {E, F, K} of ||X_module C_l - C_l X_l||_F
double intertwining_residual(const ActionMatrices& module, const std::vector<CGIsometry>& cgs);

/// Spin content of a decomposition as a CorepDecomp.
CorepDecomp spin_content(const std::vector<CGIsometry>& cgs);

nlohmann::json to_json(const CGIsometry& c);

}  // namespace qsf
