#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace qsf {

/// Exact Laurent polynomial in q with rational coefficients.
///
/// Stored as exponent -> coefficient with no zero coefficients, so two
/// polynomials are equal iff their maps are equal.  Immutable from the
/// outside: every operator returns a fresh canonical value.
class LaurentPoly {
public:
    using Terms = std::map<int, mpq_class>;

    LaurentPoly() = default;
    LaurentPoly(long constant);  // NOLINT(google-explicit-constructor)
    explicit LaurentPoly(const mpq_class& constant);

    /// c * q^exponent
    static LaurentPoly monomial(int exponent, const mpq_class& c = 1);
    static LaurentPoly from_terms(Terms terms);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    mpq_class coeff(int exponent) const;
    int min_exponent() const;  // requires !is_zero()
    int max_exponent() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(const LaurentPoly& rhs);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Substitutes q -> q^{-1}.
    LaurentPoly bar() const;

private:
    void canonicalize();
    Terms terms_;
};

/// Quantum integer [n]_q = q^{-(n-1)} + q^{-(n-3)} + ... + q^{n-1}.
/// Throws DomainError for n < 1.
LaurentPoly qint(long n);

/// Sum of c_k q^k in ascending exponent order.  Throws DomainError unless 0 < q < 1.
double eval(const LaurentPoly& p, double q);

/// True iff p is invariant under q -> q^{-1}.
bool bar_symmetric(const LaurentPoly& p);

/// "q^-2 + 1 + q^2"; zero renders as "0".
std::string to_string(const LaurentPoly& p);
std::string to_string(const mpq_class& r);

/// {"exponent": "coefficient"}
nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j);

/// Throws DomainError unless 0 < q < 1.
void require_q(double q);

}  // namespace qsf
