#include "qsubfactor/corep.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>

#include "qsubfactor/error.hpp"

namespace qsf {

Spin Spin::from_twice(int twice_ell) {
    if (twice_ell < 0) throw DomainError("spin must be nonnegative, got 2l = " + std::to_string(twice_ell));
    return Spin(twice_ell);
}

std::string to_string(Spin s) {
    if (s.is_integer()) return std::to_string(s.twice() / 2);
    return std::to_string(s.twice()) + "/2";
}

CorepDecomp::CorepDecomp(std::vector<Block> blocks) {
    std::map<Spin, long> merged;
    for (const auto& b : blocks) {
        if (b.spin.twice() < 0) throw DomainError("negative spin");
        if (b.mult < 1) throw DomainError("multiplicity must be positive, got " + std::to_string(b.mult));
        merged[b.spin] += b.mult;
    }
    if (merged.empty()) throw DomainError("a corepresentation needs at least one block");
    for (const auto& [s, m] : merged) blocks_.push_back(Block{s, static_cast<int>(m)});
}

int CorepDecomp::classical_dim() const {
    int d = 0;
    for (const auto& b : blocks_) d += b.mult * b.spin.dim();
    return d;
}

int CorepDecomp::mult(Spin s) const {
    for (const auto& b : blocks_)
        if (b.spin == s) return b.mult;
    return 0;
}

int CorepDecomp::block_offset(std::size_t j) const {
    int off = 0;
    for (std::size_t k = 0; k < j; ++k) off += blocks_[k].mult * blocks_[k].spin.dim();
    return off;
}

namespace {

class RepParser {
public:
    RepParser(std::string_view s, ParseOptions opts) : s_(s), opts_(opts) {}

    CorepDecomp parse() {
        std::vector<Block> blocks;
        skip_ws();
        if (pos_ == s_.size()) throw ParseError("empty representation spec", pos_);
        blocks.push_back(term());
        skip_ws();
        while (pos_ < s_.size()) {
            if (s_[pos_] != '+') throw ParseError(std::string("expected '+', found '") + s_[pos_] + "'", pos_);
            ++pos_;
            blocks.push_back(term());
            skip_ws();
        }
        return CorepDecomp(std::move(blocks));
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) {
            if (pos_ == s_.size()) throw ParseError("expected integer, found end of input", pos_);
            throw ParseError(std::string("expected integer, found '") + s_[pos_] + "'", pos_);
        }
        if (pos_ - start > 6) throw ParseError("integer too large", start);
        return std::strtol(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr, 10);
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    Block term() {
        skip_ws();
        std::size_t start = pos_;
        long first = integer();
        long mult = 1;
        if (peek('x')) {
            ++pos_;
            mult = first;
            if (mult == 0) throw ParseError("zero multiplicity", start);
            skip_ws();
            start = pos_;
            first = integer();
        }
        int twice = static_cast<int>(2 * first);
        if (peek('/')) {
            ++pos_;
            skip_ws();
            const std::size_t den_at = pos_;
            long den = integer();
            if (den != 2) throw ParseError("spin denominator must be 2, got " + std::to_string(den), den_at);
            twice = static_cast<int>(first);
        }
        if (opts_.integer_spins_only && twice % 2 != 0)
            throw ParseError("half-integer spin " + to_string(Spin(twice)) + " violates integer-spin restriction (SO_q(3))",
                             start);
        return Block{Spin(twice), static_cast<int>(mult)};
    }

    std::string_view s_;
    ParseOptions opts_;
    std::size_t pos_ = 0;
};

}  // namespace

CorepDecomp parse_rep(std::string_view spec, ParseOptions opts) { return RepParser(spec, opts).parse(); }

std::string render(const CorepDecomp& a) {
    std::string out;
    for (const auto& b : a.blocks()) {
        if (!out.empty()) out += " + ";
        if (b.mult != 1) out += std::to_string(b.mult) + "x";
        out += to_string(b.spin);
    }
    return out;
}

CorepDecomp fuse(const CorepDecomp& a, const CorepDecomp& b) {
    std::map<int, long> acc;
    for (const auto& x : a.blocks())
        for (const auto& y : b.blocks()) {
            int lo = std::abs(x.spin.twice() - y.spin.twice());
            int hi = x.spin.twice() + y.spin.twice();
            for (int t = lo; t <= hi; t += 2) acc[t] += static_cast<long>(x.mult) * y.mult;
        }
    std::vector<Block> blocks;
    for (const auto& [t, m] : acc) blocks.push_back(Block{Spin(t), static_cast<int>(m)});
    return CorepDecomp(std::move(blocks));
}

CorepDecomp dual(const CorepDecomp& a) { return a; }

LaurentPoly dim_q(const CorepDecomp& a) {
    LaurentPoly d;
    for (const auto& b : a.blocks()) d += LaurentPoly(static_cast<long>(b.mult)) * qint(b.spin.dim());
    return d;
}

std::vector<int> basis_weights(const CorepDecomp& a) {
    std::vector<int> w;
    w.reserve(a.classical_dim());
    for (const auto& b : a.blocks())
        for (int c = 0; c < b.mult; ++c)
            for (int k = 0; k <= b.spin.twice(); ++k) w.push_back(-b.spin.twice() + 2 * k);
    return w;
}

FMatrix::FMatrix(const CorepDecomp& a) {
    for (int two_m : basis_weights(a)) {
        exps_.push_back(-two_m);
        diag_.push_back(LaurentPoly::monomial(-two_m));
    }
}

LaurentPoly FMatrix::trace() const {
    LaurentPoly t;
    for (const auto& d : diag_) t += d;
    return t;
}

LaurentPoly FMatrix::inverse_trace() const {
    LaurentPoly t;
    for (int e : exps_) t += LaurentPoly::monomial(-e);
    return t;
}

Eigen::MatrixXd FMatrix::numeric(double q, int power) const {
    require_q(q);
    Eigen::VectorXd d(static_cast<Eigen::Index>(exps_.size()));
    for (std::size_t i = 0; i < exps_.size(); ++i) d(static_cast<Eigen::Index>(i)) = std::pow(q, power * exps_[i]);
    return d.asDiagonal();
}

FMatrix f_matrix(const CorepDecomp& a) { return FMatrix(a); }

double qtrace(const CorepDecomp& a, TraceSign sign, const Eigen::MatrixXd& X, double q) {
    const int n = a.classical_dim();
    if (X.rows() != n || X.cols() != n)
        throw ShapeError("qtrace: expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                         std::to_string(X.rows()) + "x" + std::to_string(X.cols()));
    FMatrix f(a);
    const auto& e = f.exponents();
    const int power = sign == TraceSign::plus ? 1 : -1;
    double num = 0.0;
    for (int i = 0; i < n; ++i) num += std::pow(q, power * e[i]) * X(i, i);
    return num / eval(dim_q(a), q);
}

EndAlgebra end_algebra(const CorepDecomp& a) {
    EndAlgebra r;
    for (const auto& b : a.blocks()) {
        r.block_sizes.push_back(b.mult);
        r.total_dim += b.mult * b.mult;
    }
    return r;
}

nlohmann::json to_json(const CorepDecomp& a) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : a.blocks()) blocks.push_back({{"twice_ell", b.spin.twice()}, {"mult", b.mult}});
    return {{"blocks", blocks}};
}

CorepDecomp corep_from_json(const nlohmann::json& j) {
    std::vector<Block> blocks;
    for (const auto& b : j.at("blocks"))
        blocks.push_back(Block{Spin::from_twice(b.at("twice_ell").get<int>()), b.at("mult").get<int>()});
    return CorepDecomp(std::move(blocks));
}

}  // namespace qsf
