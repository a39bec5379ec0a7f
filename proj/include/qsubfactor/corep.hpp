#pragma once

#include <Eigen/Dense>

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsubfactor/qnum.hpp"

namespace qsf {

/// Spin l of an SU_q(2) irreducible, stored as 2l so half-integers stay exact.
class Spin {
public:
    constexpr Spin() = default;
    constexpr explicit Spin(int twice_ell) : twice_(twice_ell) {}

    /// Throws DomainError on negative input.
    static Spin from_twice(int twice_ell);

    constexpr int twice() const noexcept { return twice_; }
    constexpr int dim() const noexcept { return twice_ + 1; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
    double value() const noexcept { return twice_ / 2.0; }

    constexpr auto operator<=>(const Spin&) const = default;

private:
    int twice_ = 0;
};

/// "0", "1/2", "1", "3/2", ...
std::string to_string(Spin s);

struct Block {
    Spin spin;
    int mult = 1;
    friend bool operator==(const Block&, const Block&) = default;
};

/// pi = m_1 pi_{l_1} (+) ... (+) m_n pi_{l_n}, spins strictly increasing.
///
/// Global basis ordering used everywhere a matrix on V_pi appears:
/// block ascending, then copy index, then weight m ascending.
class CorepDecomp {
public:
    /// Merges duplicate spins and sorts; throws DomainError on empty input
    /// or non-positive multiplicity.
    explicit CorepDecomp(std::vector<Block> blocks);
    static CorepDecomp irreducible(Spin s) { return CorepDecomp({Block{s, 1}}); }
    static CorepDecomp trivial() { return irreducible(Spin(0)); }

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return blocks_.size(); }
    int classical_dim() const;
    int max_twice() const { return blocks_.back().spin.twice(); }
    bool is_irreducible() const { return blocks_.size() == 1 && blocks_[0].mult == 1; }
    /// Multiplicity of spin s (0 when absent).
    int mult(Spin s) const;
    /// First basis index of block j.
    int block_offset(std::size_t j) const;

    friend bool operator==(const CorepDecomp&, const CorepDecomp&) = default;

private:
    std::vector<Block> blocks_;
};

struct ParseOptions {
    /// Reject half-integer spins (SO_q(3) restriction).
    bool integer_spins_only = false;
};

/// Grammar: REP := TERM ("+" TERM)* ; TERM := [INT "x"] SPIN ; SPIN := INT | INT "/2".
/// Throws ParseError with the byte offset of the offending input.
CorepDecomp parse_rep(std::string_view spec, ParseOptions opts = {});

/// "2x1/2 + 1"; inverse of parse_rep.
std::string render(const CorepDecomp& a);

CorepDecomp fuse(const CorepDecomp& a, const CorepDecomp& b);
/// Every SU_q(2) irreducible is self-dual; returns a.
CorepDecomp dual(const CorepDecomp& a);

LaurentPoly dim_q(const CorepDecomp& a);

/// Diagonal of F_pi in the global basis, as exact monomials.
///
/// Convention: the weight-m vector of a spin-l block carries q^{-2m}, so
/// spin 1/2 gives diag(q, q^{-1}).  This is the side for which the
/// Haar-state conditional expectations satisfy the q-trace intertwining
/// identity with the Peter-Weyl product used in haar.hpp.
class FMatrix {
public:
    explicit FMatrix(const CorepDecomp& a);

    const std::vector<LaurentPoly>& diagonal() const noexcept { return diag_; }
    std::size_t size() const noexcept { return diag_.size(); }
    LaurentPoly trace() const;
    LaurentPoly inverse_trace() const;
    /// Exponent of q on each diagonal entry (-2m).
    const std::vector<int>& exponents() const noexcept { return exps_; }
    /// Numeric F^{power} (power = +1 or -1) at q.
    Eigen::MatrixXd numeric(double q, int power = 1) const;

private:
    std::vector<int> exps_;
    std::vector<LaurentPoly> diag_;
};

FMatrix f_matrix(const CorepDecomp& a);

enum class TraceSign { plus, minus };

/// tau_q^{(pi,+-)}(X) = Tr(F^{+-1} X) / dim_q(pi).  Throws ShapeError on size mismatch.
double qtrace(const CorepDecomp& a, TraceSign sign, const Eigen::MatrixXd& X, double q);

struct EndAlgebra {
    std::vector<int> block_sizes;  // m_1..m_n
    int total_dim = 0;             // sum m_j^2
};

/// End(pi) = (+)_j M_{m_j}(C).
EndAlgebra end_algebra(const CorepDecomp& a);

/// Weight 2m of each global basis vector.
std::vector<int> basis_weights(const CorepDecomp& a);

nlohmann::json to_json(const CorepDecomp& a);
CorepDecomp corep_from_json(const nlohmann::json& j);

}  // namespace qsf
