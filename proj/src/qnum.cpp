#include "qsubfactor/qnum.hpp"

#include <cmath>
#include <sstream>

#include "qsubfactor/error.hpp"

namespace qsf {

LaurentPoly::LaurentPoly(long constant) : LaurentPoly(mpq_class(constant)) {}

LaurentPoly::LaurentPoly(const mpq_class& constant) {
    if (constant != 0) terms_.emplace(0, constant);
}

LaurentPoly LaurentPoly::monomial(int exponent, const mpq_class& c) {
    LaurentPoly p;
    if (c != 0) p.terms_.emplace(exponent, c);
    return p;
}

LaurentPoly LaurentPoly::from_terms(Terms terms) {
    LaurentPoly p;
    p.terms_ = std::move(terms);
    for (auto& [e, c] : p.terms_) c.canonicalize();
    p.canonicalize();
    return p;
}

mpq_class LaurentPoly::coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw DomainError("min_exponent of the zero polynomial");
    return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw DomainError("max_exponent of the zero polynomial");
    return terms_.rbegin()->first;
}

void LaurentPoly::canonicalize() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) terms_[e] += c;
    canonicalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_) terms_[e] -= c;
    canonicalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.terms_[ea + eb] += ca * cb;
    r.canonicalize();
    return r;
}

LaurentPoly LaurentPoly::bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
}

LaurentPoly qint(long n) {
    if (n < 1) throw DomainError("qint: n must be >= 1, got " + std::to_string(n));
    LaurentPoly::Terms t;
    for (long k = -(n - 1); k <= n - 1; k += 2) t.emplace(static_cast<int>(k), 1);
    return LaurentPoly::from_terms(std::move(t));
}

void require_q(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        std::ostringstream os;
        os << "q must lie in (0,1), got " << q;
        throw DomainError(os.str());
    }
}

double eval(const LaurentPoly& p, double q) {
    require_q(q);
    double sum = 0.0;
    for (const auto& [e, c] : p.terms()) sum += c.get_d() * std::pow(q, e);
    return sum;
}

bool bar_symmetric(const LaurentPoly& p) { return p == p.bar(); }

std::string to_string(const mpq_class& r) { return r.get_str(); }

namespace {

std::string power(int e) {
    if (e == 1) return "q";
    return "q^" + std::to_string(e);
}

}  // namespace

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (e == 0) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += power(e);
        } else {
            out += to_string(mag) + "*" + power(e);
        }
    }
    return out;
}

nlohmann::json to_json(const LaurentPoly& p) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : p.terms()) j[std::to_string(e)] = to_string(c);
    return j;
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
    LaurentPoly::Terms t;
    for (const auto& [key, val] : j.items()) {
        mpq_class c;
        if (c.set_str(val.get<std::string>(), 10) != 0) throw DomainError("bad rational coefficient: " + val.dump());
        c.canonicalize();
        t[std::stoi(key)] += c;
    }
    return LaurentPoly::from_terms(std::move(t));
}

}  // namespace qsf
