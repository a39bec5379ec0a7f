#include "qsubfactor/type3.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <complex>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "qsubfactor/error.hpp"

namespace qsf {

double t0(double q) {
    require_q(q);
    return -2.0 * std::numbers::pi / std::log(q * q);
}

double interval_length(double q) {
    require_q(q);
    return -std::log(q * q);
}

std::vector<int> parity_scalars(const CorepDecomp& pi) {
    std::vector<int> p;
    for (const auto& b : pi.blocks()) p.push_back(b.spin.is_integer() ? 1 : -1);
    return p;
}

namespace {

std::complex<double> modular_phase(double q, int exponent) {
    // exp(i T0 log q^exponent)
    return std::polar(1.0, t0(q) * exponent * std::log(q));
}

}  // namespace

double parity_residual(const CorepDecomp& pi, double q) {
    const auto par = parity_scalars(pi);
    double worst = 0.0;
    for (std::size_t j = 0; j < pi.size(); ++j) {
        const int t = pi.blocks()[j].spin.twice();
        for (int two_m = -t; two_m <= t; two_m += 2)
            worst = std::max(worst, std::abs(modular_phase(q, -two_m) - std::complex<double>(par[j], 0.0)));
    }
    return worst;
}

std::vector<int> numeric_parities(const CorepDecomp& pi, double q, double tol) {
    std::vector<int> out;
    for (const auto& b : pi.blocks()) {
        const int t = b.spin.twice();
        const auto first = modular_phase(q, t);
        const int sign = first.real() >= 0 ? 1 : -1;
        for (int two_m = -t; two_m <= t; two_m += 2) {
            const auto z = modular_phase(q, -two_m);
            if (std::abs(z - std::complex<double>(sign, 0.0)) > tol)
                throw DomainError("F^{iT0} is not a scalar +-1 on block of spin " + to_string(b.spin));
        }
        out.push_back(sign);
    }
    return out;
}

bool essentially_type_II(const CorepDecomp& pi) {
    bool any_int = false, any_half = false;
    for (const auto& b : pi.blocks()) (b.spin.is_integer() ? any_int : any_half) = true;
    return !(any_int && any_half);
}

bool all_parities_equal(const CorepDecomp& pi, double q) {
    const auto p = numeric_parities(pi, q);
    return std::adjacent_find(p.begin(), p.end(), std::not_equal_to<>()) == p.end();
}

mpq_class shift_ratio(Spin s) { return mpq_class(s.twice() % 2, 2); }

FactorMaps::FactorMaps(const CorepDecomp& pi, double q) : len_(qsf::interval_length(q)) {
    for (const auto& b : pi.blocks()) {
        mpq_class r = shift_ratio(b.spin);
        r.canonicalize();
        shifts_.push_back(r.get_d() * len_);
        ratios_.push_back(std::move(r));
    }
}

int FactorMaps::distinct_shifts() const {
    std::set<mpq_class> s(ratios_.begin(), ratios_.end());
    return static_cast<int>(s.size());
}

void FactorMaps::check(std::size_t j, double s) const {
    if (j >= shifts_.size()) throw DomainError("factor map: block index out of range");
    if (!(s >= 0.0 && s < len_))
        throw DomainError(fmt::format("factor map: s = {} outside [0, {})", s, len_));
}

double FactorMaps::map_M(std::size_t j, double s) const {
    check(j, s);
    double r = std::fmod(s + shifts_[j], len_);
    if (r < 0) r += len_;
    return r;
}

double FactorMaps::map_N(std::size_t j, double s) const {
    check(j, s);
    return s;
}

FactorMaps factor_maps(const CorepDecomp& pi, double q) { return FactorMaps(pi, q); }

Type3Report type3_report(const CorepDecomp& pi, double q) {
    Type3Report r;
    r.pi = pi;
    r.q = q;
    r.T0 = t0(q);
    r.interval_length = interval_length(q);
    r.parities = parity_scalars(pi);
    r.essentially_type_II = essentially_type_II(pi);
    r.shifts = FactorMaps(pi, q).shifts();
    for (const auto& b : pi.blocks()) {
        const auto irr = CorepDecomp::irreducible(b.spin);
        r.blocks.push_back(BlockReport{b.mult, b.spin, eval(dim_q(irr), q), index_value(irr, q)});
    }
    return r;
}

namespace {

// P (x) 1 acting by X -> (P(x)1) X (Q(x)1), as a MatrixMap.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

// Matrix of X -> A X B on row-major vec.
Eigen::MatrixXd sandwich(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return kron(a, b.transpose()); }

// Matrix of Y -> 1_np (x) Y from B(V_sigma) into B(V_pi (x) V_sigma).
Eigen::MatrixXd embed_right(int np, int ds) {
    const int n = np * ds;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n, ds * ds);
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < ds; ++b)
            for (int d = 0; d < ds; ++d) m((a * ds + b) * n + a * ds + d, b * ds + d) = 1.0;
    return m;
}

}  // namespace

ThreeStep three_step_decomposition(const CorepDecomp& pi, const ToyAction& act) {
    const double q = act.q;
    const int np = pi.classical_dim();
    const int ds = act.dim();
    const int n = np * ds;
    const Eigen::MatrixXd id_s = Eigen::MatrixXd::Identity(ds, ds);

    ThreeStep ts;
    ts.report = type3_report(pi, q);
    ts.E_fixed = fixed_expectation(pi, act);

    const MatrixMap tau_minus = fubini_qtrace(pi, TraceSign::minus, ds, q);
    const Eigen::MatrixXd up = embed_right(np, ds);
    ts.F = MatrixMap(n, n, up * tau_minus.matrix());
    ts.E_pi = ts.F;

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n * n, n * n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n * n, n * n);
    Eigen::MatrixXd hb = Eigen::MatrixXd::Zero(n * n, n * n);
    for (std::size_t j = 0; j < pi.size(); ++j) {
        const auto& b = pi.blocks()[j];
        const int off = pi.block_offset(j);
        const int width = b.mult * b.spin.dim();
        Eigen::MatrixXd p = Eigen::MatrixXd::Zero(np, np);
        p.block(off, off, width, width).setIdentity();
        ts.central_projections.push_back(p);

        const Eigen::MatrixXd p1 = kron(p, id_s);
        g += sandwich(p1, p1);

        // Block-free form: tau^-(p_j)^{-1} (tau^- (x) id)(X (p_j (x) 1)) then multiply by p_j (x) 1.
        const double tp = qtrace(pi, TraceSign::minus, p, q);
        const Eigen::MatrixXd right_mult = sandwich(Eigen::MatrixXd::Identity(n, n), p1);
        h += sandwich(p1, Eigen::MatrixXd::Identity(n, n)) * up * tau_minus.matrix() * right_mult / tp;

        // Block form: (1/m_j) Tr_{m_j} (x) tau^{(pi_j,-)} (x) id on the p_j corner.
        const auto irr = CorepDecomp::irreducible(b.spin);
        const std::vector<int> fe = f_matrix(irr).exponents();
        const double dqj = eval(dim_q(irr), q);
        Eigen::MatrixXd y_of_x = Eigen::MatrixXd::Zero(ds * ds, n * n);
        for (int c = 0; c < b.mult; ++c)
            for (int k = 0; k < b.spin.dim(); ++k) {
                const int a = off + c * b.spin.dim() + k;
                const double w = std::pow(q, -fe[k]) / dqj / b.mult;
                for (int s1 = 0; s1 < ds; ++s1)
                    for (int s2 = 0; s2 < ds; ++s2) y_of_x(s1 * ds + s2, (a * ds + s1) * n + a * ds + s2) = w;
            }
        Eigen::MatrixXd p_embed = Eigen::MatrixXd::Zero(n * n, ds * ds);
        for (int a = off; a < off + width; ++a)
            for (int s1 = 0; s1 < ds; ++s1)
                for (int s2 = 0; s2 < ds; ++s2) p_embed((a * ds + s1) * n + a * ds + s2, s1 * ds + s2) = 1.0;
        hb += p_embed * y_of_x;
    }
    ts.G = MatrixMap(n, n, std::move(g));
    ts.H = MatrixMap(n, n, std::move(h));
    ts.H_block = MatrixMap(n, n, std::move(hb));
    return ts;
}

std::vector<Eigen::MatrixXd> range_basis(const MatrixMap& m, double rel_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.matrix(), Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    std::vector<Eigen::MatrixXd> out;
    if (s.size() == 0 || s(0) == 0.0) return out;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) out.push_back(unvec(svd.matrixU().col(i), m.out_side()));
    return out;
}

double verify_composition(const ThreeStep& ts) {
    const auto basis = range_basis(ts.E_fixed);
    const MatrixMap fhg = ts.F.compose(ts.H).compose(ts.G);
    double sq = 0.0;
    for (const auto& x : basis) sq += (ts.E_pi(x) - fhg(x)).squaredNorm();
    return basis.empty() ? 0.0 : std::sqrt(sq) / static_cast<double>(basis.size());
}

double verify_composition(const CorepDecomp& pi, const ToyAction& act) {
    return verify_composition(three_step_decomposition(pi, act));
}

double h_block_residual(const ThreeStep& ts) {
    const auto basis = range_basis(ts.E_fixed);
    double sq = 0.0;
    for (const auto& x : basis) {
        const Eigen::MatrixXd gx = ts.G(x);
        sq += (ts.H(gx) - ts.H_block(gx)).squaredNorm();
    }
    return basis.empty() ? 0.0 : std::sqrt(sq) / static_cast<double>(basis.size());
}

LaurentPoly end_qtrace_numerator(const CorepDecomp& pi, const std::vector<std::vector<std::vector<mpq_class>>>& xs) {
    if (xs.size() != pi.size()) throw ShapeError("end_qtrace_numerator: one matrix per block expected");
    const FMatrix f(pi);
    LaurentPoly acc;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < pi.size(); ++j) {
        const auto& b = pi.blocks()[j];
        if (xs[j].size() != static_cast<std::size_t>(b.mult)) throw ShapeError("end_qtrace_numerator: block size");
        for (int c = 0; c < b.mult; ++c)
            for (int k = 0; k < b.spin.dim(); ++k, ++idx)
                acc += LaurentPoly::monomial(-f.exponents()[idx], xs[j][c].at(static_cast<std::size_t>(c)));
    }
    return acc;
}

nlohmann::json to_json(const Type3Report& r) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& b : r.blocks)
        blocks.push_back({{"mult", b.mult}, {"twice_ell", b.spin.twice()}, {"dim_q", b.dim_q}, {"index", b.index}});
    return {{"rep", render(r.pi)},
            {"q", r.q},
            {"T0", r.T0},
            {"interval_length", r.interval_length},
            {"parities", r.parities},
            {"essentially_type_II", r.essentially_type_II},
            {"shifts", r.shifts},
            {"blocks", blocks},
            {"assumptions",
             {"fixed-point algebra of type III_{q^2}", "modular period T0", "irreducible subalgebra Q in the centralizer"}}};
}

std::string render_table(const Type3Report& r) {
    std::string out;
    out += fmt::format("rep                  {}\n", render(r.pi));
    out += fmt::format("q                    {:.12g}\n", r.q);
    out += fmt::format("T0                   {:.12g}\n", r.T0);
    out += fmt::format("interval_length      {:.12g}\n", r.interval_length);
    out += fmt::format("essentially_type_II  {}\n", r.essentially_type_II ? "true" : "false");
    out += fmt::format("{:>4} {:>6} {:>6} {:>7} {:>16} {:>16} {:>16}\n", "j", "spin", "mult", "parity", "dim_q",
                       "index", "shift");
    for (std::size_t j = 0; j < r.blocks.size(); ++j) {
        const auto& b = r.blocks[j];
        out += fmt::format("{:>4} {:>6} {:>6} {:>7} {:>16.10g} {:>16.10g} {:>16.10g}\n", j + 1, to_string(b.spin),
                           b.mult, r.parities[j] > 0 ? "+1" : "-1", b.dim_q, b.index, r.shifts[j]);
    }
    return out;
}

}  // namespace qsf
