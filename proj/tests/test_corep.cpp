#include <doctest.h>

#include <random>

#include "qsubfactor/corep.hpp"
#include "qsubfactor/error.hpp"
#include "support.hpp"

using namespace qsf;
using qsf::testing::random_corep;

namespace {

std::size_t parse_offset(std::string_view s, ParseOptions o = {}) {
    try {
        parse_rep(s, o);
    } catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("no parse error for '" << s << "'");
    return 0;
}

}  // namespace

TEST_CASE("parse and render") {
    CHECK(render(parse_rep("1/2")) == "1/2");
    CHECK(render(parse_rep(" 2 x 1/2+1 ")) == "2x1/2 + 1");
    CHECK(render(parse_rep("1 + 0 + 1")) == "0 + 2x1");
    CHECK(parse_rep("3/2").blocks()[0].spin.twice() == 3);
    CHECK(parse_rep("5x3").classical_dim() == 35);
}

TEST_CASE("render inverts parse on random decompositions") {
    std::mt19937 rng(1);
    for (int i = 0; i < 300; ++i) {
        const auto d = random_corep(rng, 9, 5, 5);
        CHECK(parse_rep(render(d)) == d);
        CHECK(corep_from_json(to_json(d)) == d);
    }
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK(parse_offset("") == 0);
    CHECK(parse_offset("1/2 +") == 5);
    CHECK(parse_offset("1/3") == 2);
    CHECK(parse_offset("0x1") == 0);
    CHECK(parse_offset("1 1") == 2);
    CHECK(parse_offset("a") == 0);
    CHECK(parse_offset("1234567") == 0);
    CHECK(parse_offset("1 + 3/2", ParseOptions{true}) == 4);
    CHECK_NOTHROW(parse_rep("0 + 2x1 + 3", ParseOptions{true}));
    try {
        parse_rep("1/2", ParseOptions{true});
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("integer-spin restriction") != std::string::npos);
    }
}

TEST_CASE("CorepDecomp construction") {
    CHECK_THROWS_AS(CorepDecomp({}), DomainError);
    CHECK_THROWS_AS(CorepDecomp({Block{Spin(1), 0}}), DomainError);
    CHECK_THROWS_AS(Spin::from_twice(-1), DomainError);
    const CorepDecomp d({Block{Spin(2), 1}, Block{Spin(0), 2}, Block{Spin(2), 3}});
    CHECK(d.size() == 2);
    CHECK(d.mult(Spin(2)) == 4);
    CHECK(d.mult(Spin(1)) == 0);
    CHECK(d.block_offset(1) == 2);
}

TEST_CASE("fusion agrees with the character oracle") {
    CHECK(render(fuse(parse_rep("1/2"), parse_rep("1/2"))) == "0 + 1");
    CHECK(render(fuse(parse_rep("1"), parse_rep("1"))) == "0 + 1 + 2");
    std::mt19937 rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_corep(rng, 7), b = random_corep(rng, 7);
        CHECK(fuse(a, b) == testing::fuse_by_characters(a, b));
        CHECK(fuse(a, b) == fuse(b, a));
        CHECK(dual(a) == a);
    }
}

TEST_CASE("quantum dimension") {
    CHECK(dim_q(parse_rep("1/2")) == qint(2));
    CHECK(dim_q(parse_rep("2x1 + 0")) == LaurentPoly(2) * qint(3) + qint(1));
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_corep(rng, 6), b = random_corep(rng, 6);
        CHECK(dim_q(fuse(a, b)) == dim_q(a) * dim_q(b));
    }
}

TEST_CASE("Tr F = Tr F^-1 = dim_q") {
    std::mt19937 rng(4);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_corep(rng, 8);
        const FMatrix f(a);
        CHECK(f.trace() == f.inverse_trace());
        CHECK(f.trace() == dim_q(a));
        CHECK(f.size() == static_cast<std::size_t>(a.classical_dim()));
    }
}

TEST_CASE("F convention and q-traces") {
    const auto half = parse_rep("1/2");
    const FMatrix f(half);
    CHECK(f.exponents() == std::vector<int>{1, -1});
    const auto fn = f.numeric(0.5);
    CHECK(fn(0, 0) == doctest::Approx(0.5));
    CHECK(fn(1, 1) == doctest::Approx(2.0));
    Eigen::MatrixXd e11 = Eigen::MatrixXd::Zero(2, 2);
    e11(0, 0) = 1.0;
    // Tr(F^{-1} e11) / [2] = q^{-1} / (q + q^{-1}) = 2 / 2.5
    CHECK(qtrace(half, TraceSign::minus, e11, 0.5) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(qtrace(half, TraceSign::plus, e11, 0.5) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(qtrace(half, TraceSign::plus, Eigen::MatrixXd::Identity(2, 2), 0.3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(qtrace(half, TraceSign::plus, Eigen::MatrixXd::Identity(3, 3), 0.3), ShapeError);
}

TEST_CASE("End algebra block sizes") {
    const auto e = end_algebra(parse_rep("3x0 + 1/2 + 2x1"));
    CHECK(e.block_sizes == std::vector<int>{3, 1, 2});
    CHECK(e.total_dim == 14);
    CHECK(end_algebra(parse_rep("1/2")).total_dim == 1);
}

TEST_CASE("End(pi) dimension matches a brute-force commutant") {
    for (const char* s : {"1/2", "2x1/2", "0 + 1", "2x0 + 1/2", "1 + 2x1"}) {
        const auto a = parse_rep(s);
        const auto m = testing::module_of(a, 0.6);
        CHECK(testing::commutant_dim(m.K, {m.E, m.F}) == end_algebra(a).total_dim);
    }
}

TEST_CASE("basis weights follow block, copy, weight order") {
    CHECK(basis_weights(parse_rep("0 + 2x1/2")) == std::vector<int>{0, -1, 1, -1, 1});
}
