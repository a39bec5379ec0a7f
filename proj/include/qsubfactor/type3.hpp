#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsubfactor/corep.hpp"
#include "qsubfactor/wassermann.hpp"

namespace qsf {

/// Period of the modular flow, -2 pi / log q^2.  Throws DomainError unless 0 < q < 1.
double t0(double q);
/// Circumference -log q^2 of the flow space [0, -log q^2).
double interval_length(double q);

/// (-1)^{2 l_j} per block.
std::vector<int> parity_scalars(const CorepDecomp& pi);

/// max over F-eigenvalues f of block j of |exp(i T_0 log f) - parity_j|.
double parity_residual(const CorepDecomp& pi, double q);

/// Signs of exp(i T_0 log f) read numerically, one per block; each block's
/// eigenvalues must agree to within tol or DomainError is thrown.
std::vector<int> numeric_parities(const CorepDecomp& pi, double q, double tol = 1e-9);

/// All spins integer, or all half-integer.
bool essentially_type_II(const CorepDecomp& pi);

/// Independent route to the same decision: every entry of numeric_parities is equal.
bool all_parities_equal(const CorepDecomp& pi, double q);

/// l mod 1, i.e. the displacement of the factor map as a fraction of the
/// interval: 0 for integer spin, 1/2 for half-integer spin.
mpq_class shift_ratio(Spin s);

/// Factor maps of the flow-space picture X = {1..n} x [0, -log q^2).
class FactorMaps {
public:
    FactorMaps(const CorepDecomp& pi, double q);

    double interval_length() const noexcept { return len_; }
    const std::vector<double>& shifts() const noexcept { return shifts_; }
    const std::vector<mpq_class>& shift_ratios() const noexcept { return ratios_; }
    /// Number of distinct shift values; > 1 iff the two factor maps separate points.
    int distinct_shifts() const;

    /// (j, s) -> s - l_j log q^2 mod the interval.  Throws DomainError when
    /// s is outside [0, interval) or j is out of range.
    double map_M(std::size_t j, double s) const;
    /// (j, s) -> s.
    double map_N(std::size_t j, double s) const;

private:
    void check(std::size_t j, double s) const;
    double len_;
    std::vector<double> shifts_;
    std::vector<mpq_class> ratios_;
};

FactorMaps factor_maps(const CorepDecomp& pi, double q);

struct BlockReport {
    int mult = 1;
    Spin spin;
    double dim_q = 1.0;
    double index = 1.0;
};

struct Type3Report {
    CorepDecomp pi = CorepDecomp::trivial();
    double q = 0.5;
    double T0 = 0.0;
    double interval_length = 0.0;
    std::vector<int> parities;
    bool essentially_type_II = true;
    std::vector<double> shifts;
    std::vector<BlockReport> blocks;
};

Type3Report type3_report(const CorepDecomp& pi, double q);

/// Maps of the decomposition M(pi) -G-> A -H-> B -F-> N(pi), all realized on
/// B(V_pi (x) V_sigma).  F and E_pi land in 1 (x) B(V_sigma).
struct ThreeStep {
    Type3Report report;
    /// Minimal central projections p_j of End(pi), on V_pi.
    std::vector<Eigen::MatrixXd> central_projections;
    MatrixMap G;        // sum_j (p_j (x) 1) X (p_j (x) 1)
    MatrixMap H;        // sum_j tau^-(p_j)^{-1} (tau^- (x) id)(X (p_j (x) 1)) p_j (x) 1
    MatrixMap H_block;  // (+)_j tau_{m_j} (x) E_{pi_j}, built block by block
    MatrixMap F;        // 1 (x) (tau^- (x) id)(X)
    MatrixMap E_pi;     // 1 (x) (tau^- (x) id)(X), on the fixed-point algebra
    MatrixMap E_fixed;  // E_{Ad pi (x) Gamma}, projection onto M(pi)
};

ThreeStep three_step_decomposition(const CorepDecomp& pi, const ToyAction& act);

/// Orthonormal (Frobenius) basis of the range of a map, as matrices.
std::vector<Eigen::MatrixXd> range_basis(const MatrixMap& m, double rel_tol = 1e-9);

/// Normalized Frobenius distance between E_pi and F o H o G over a basis of
/// the fixed-point algebra M(pi): sqrt(sum ||diff||_F^2) / basis size.
double verify_composition(const CorepDecomp& pi, const ToyAction& act);
double verify_composition(const ThreeStep& ts);

/// Same distance between the two realizations of H on G(M(pi)).
double h_block_residual(const ThreeStep& ts);

/// Tr(F^{-1} X) for X = (+)_j X_j (x) 1_{V_{pi_j}} with X_j rational m_j x m_j
/// matrices, computed entry by entry over the global basis.
LaurentPoly end_qtrace_numerator(const CorepDecomp& pi, const std::vector<std::vector<std::vector<mpq_class>>>& xs);

nlohmann::json to_json(const Type3Report& r);
std::string render_table(const Type3Report& r);

}  // namespace qsf
