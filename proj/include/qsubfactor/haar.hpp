#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsubfactor/corep.hpp"

namespace qsf {

/// Matrix coefficient u^l_{ij} of the spin-l corepresentation.  Indices are
/// 0-based here, weight-ascending; the text form is 1-based.
struct Symbol {
    int twice = 0;
    int i = 0;
    int j = 0;
    constexpr auto operator<=>(const Symbol&) const = default;
};

/// "u[l=1/2;1,2]"
std::string to_string(const Symbol& s);

/// Element of the coordinate *-algebra of SU_q(2) in Peter-Weyl normal
/// form: a finite real combination of matrix coefficients at a fixed q.
/// The symbol (0,0,0) is the unit.  No stored coefficient is zero.
class PWElement {
public:
    using Terms = std::map<Symbol, double>;

    explicit PWElement(double q);
    PWElement(double q, Terms terms);

    static PWElement unit(double q);
    static PWElement symbol(double q, Symbol s, double coeff = 1.0);

    double q() const noexcept { return q_; }
    const Terms& terms() const noexcept { return terms_; }
    double coeff(const Symbol& s) const;
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Largest absolute coefficient.
    double max_abs() const;
    /// Largest spin present (2l); -1 for zero.
    int max_twice() const;

    PWElement& operator+=(const PWElement& rhs);
    PWElement& operator-=(const PWElement& rhs);
    PWElement& operator*=(double s);
    friend PWElement operator+(PWElement a, const PWElement& b) { return a += b; }
    friend PWElement operator-(PWElement a, const PWElement& b) { return a -= b; }
    friend PWElement operator*(double s, PWElement a) { return a *= s; }

private:
    void prune();
    double q_;
    Terms terms_;
};

/// Entries of the fundamental matrix: x = u_11, u = u_12, v = u_21, y = u_22
/// of the spin-1/2 coefficient matrix.  Throws DomainError on an unknown name
/// or q outside (0,1).
PWElement generator(std::string_view name, double q);

/// Peter-Weyl product.  u^{l1}_{i1 j1} u^{l2}_{i2 j2} is expanded with the
/// Clebsch-Gordan isometries of V_{l2} (x) V_{l1}, rows indexed (i2, i1)
/// and (j2, j1).  Throws DomainError on mismatched q.
PWElement multiply(const PWElement& a, const PWElement& b);

/// Antilinear involution; on coefficient matrices u^l* = J (u^l)^T J^{-1}
/// with J the self-conjugacy intertwiner read off the spin-0 summand of V_l (x) V_l.
PWElement star(const PWElement& a);

/// Haar state: the unit coefficient.
double haar(const PWElement& a);

/// h(a b) without forming the full product (only the spin-0 channel).
double haar_product(const PWElement& a, const PWElement& b);

/// Element of A (x) A as a formal sum of symbol pairs.
struct PWTensor {
    double q = 0.5;
    std::map<std::pair<Symbol, Symbol>, double> terms;
};

/// delta(u^l_{ij}) = sum_k u^l_{ik} (x) u^l_{kj}, extended linearly.
PWTensor delta(const PWElement& a);
/// (h (x) id)(T)
PWElement haar_left(const PWTensor& t);
/// (id (x) h)(T)
PWElement haar_right(const PWTensor& t);
/// max |coefficient| of (delta (x) id) delta(a) - (id (x) delta) delta(a); exactly 0 in this model.
double coassociativity_defect(const PWElement& a);

/// Square matrix of algebra elements.
using PWMatrix = std::vector<std::vector<PWElement>>;

/// u(pi) in the global basis: block-diagonal, u^{l_j} on every copy of block j.
PWMatrix corep_matrix(const CorepDecomp& a, double q);
/// u(pi)_{13} u(sigma)_{23}: entry ((a,b),(c,d)) = u(pi)_{ac} u(sigma)_{bd}.
PWMatrix tensor_corep_matrix(const PWMatrix& pi, const PWMatrix& sigma);
/// Entrywise star and transpose: (U^*)_{ij} = star(U_{ji}).
PWMatrix adjoint(const PWMatrix& u);
/// Matrix product over the algebra.
PWMatrix matmul(const PWMatrix& a, const PWMatrix& b);

nlohmann::json to_json(const PWElement& a);

}  // namespace qsf
