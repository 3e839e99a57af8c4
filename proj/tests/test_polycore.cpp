#include <gtest/gtest.h>

#include <complex>

#include "hypex/error.hpp"
#include "hypex/multideg.hpp"
#include "hypex/polycore.hpp"

using namespace hypex;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::Parse;
}

SparsePoly e3() { return build_elementary_symmetric(4, 3); }

}  // namespace

TEST(Parse, TermList) {
    auto f = parse_poly("1:3,0,0,0 + 1:0,3,0,0", 4);
    EXPECT_EQ(f.num_terms(), 2u);
    EXPECT_EQ(f.degree(), 3u);
    EXPECT_EQ(f.coefficient({0, 3, 0, 0}), 1);
}

TEST(Parse, CancellationIsEmpty) {
    EXPECT_EQ(kind_of([] { parse_poly("1:1,1 + -1:1,1"); }), ErrorKind::EmptyInput);
}

TEST(Parse, Inhomogeneous) {
    EXPECT_EQ(kind_of([] { parse_poly("1:2,0 + 1:1,0"); }), ErrorKind::Inhomogeneous);
}

TEST(Parse, Garbage) {
    EXPECT_EQ(kind_of([] { parse_poly("1:2,x"); }), ErrorKind::Parse);
}

TEST(Parse, RoundTripText) {
    auto f = e3();
    EXPECT_EQ(parse_poly(f.to_string(), 4), f);
}

TEST(Eval, Exact) {
    EXPECT_EQ(eval_exact(e3(), {1, 1, 1, 1}), 4);
    EXPECT_EQ(eval_exact(e3(), {1, 1, 1, Rational(-1, 3)}), 0);
    auto q = parse_poly("1:1,1,0 + -1:0,0,2");
    EXPECT_EQ(eval_exact(q, {2, 3, 1}), 5);
    EXPECT_THROW(eval_exact(q, {1, 2}), Error);
}

TEST(Eval, Complex) {
    using C = std::complex<double>;
    auto f = parse_poly("1:2,0 + 1:0,2");
    EXPECT_LT(std::abs(eval_complex(f, {C(0, 1), C(1, 0)})), 1e-15);
    EXPECT_NEAR(eval_complex(build_elementary_symmetric(3, 2), {1, 1, 1}).real(), 3.0, 1e-15);
    EXPECT_EQ(eval_complex(e3(), {0, 0, 0, 0}), C(0));
}

TEST(Eval, ComplexAgreesWithExact) {
    Rng rng(5);
    auto f = build_symmetric_determinant(3).f;
    for (int t = 0; t < 200; ++t) {
        QVec x(f.nvars());
        std::vector<std::complex<double>> xc;
        for (auto& v : x) {
            v = Rational(rng.uniform_int(-100, 100), 10);
            xc.emplace_back(to_double(v), 0.0);
        }
        const double ex = to_double(eval_exact(f, x));
        const double fl = eval_complex(f, xc).real();
        EXPECT_LE(std::abs(ex - fl), 1e-12 * std::max(1.0, std::abs(ex)));
    }
}

TEST(Gradient, Quadric) {
    auto g = gradient(parse_poly("1:1,1,0 + -1:0,0,2"));
    ASSERT_EQ(g.size(), 3u);
    EXPECT_EQ(g[0], parse_poly("1:0,1,0", 3));
    EXPECT_EQ(g[1], parse_poly("1:1,0,0", 3));
    EXPECT_EQ(g[2], parse_poly("-2:0,0,1", 3));
}

TEST(Gradient, E3MatchesQuadrics) {
    auto g = gradient(e3());
    EXPECT_EQ(g[0], parse_poly("1:0,1,1,0 + 1:0,1,0,1 + 1:0,0,1,1"));
    EXPECT_EQ(g[3], parse_poly("1:1,1,0,0 + 1:1,0,1,0 + 1:0,1,1,0"));
}

TEST(Gradient, EulerIdentity) {
    for (const auto& f : {e3(), build_symmetric_determinant(3).f, build_vamos(),
                          build_graph_laplacian_det({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})}) {
        auto g = gradient(f);
        SparsePoly sum(f.nvars());
        for (std::size_t i = 0; i < g.size(); ++i) sum = sum + SparsePoly::variable(f.nvars(), i) * g[i];
        EXPECT_EQ(sum, f * Rational(f.degree()));
    }
}

TEST(Homogeneity, ScalingProperty) {
    Rng rng(9);
    for (const auto& f : {e3(), build_symmetric_determinant(2).f, build_vamos()}) {
        for (int t = 0; t < 20; ++t) {
            QVec x(f.nvars());
            for (auto& v : x) v = rng.small_rational(9, 5);
            const Rational lam = rng.small_rational(9, 5);
            QVec y = x;
            for (auto& v : y) v *= lam;
            Rational p = 1;
            for (unsigned k = 0; k < f.degree(); ++k) p *= lam;
            EXPECT_EQ(eval_exact(f, y), p * eval_exact(f, x));
        }
    }
}

TEST(ComposeLinear, DropLastVariable) {
    QMat B(4, 3);
    for (std::size_t i = 0; i < 3; ++i) B(i, i) = 1;
    EXPECT_EQ(compose_linear(e3(), B), parse_poly("1:1,1,1"));
    EXPECT_EQ(compose_linear(e3(), QMat::identity(4)), e3());
}

TEST(ComposeLinear, RankOne) {
    QMat B(3, 1);
    B(0, 0) = 1;
    B(1, 0) = 2;
    B(2, 0) = 3;
    // E2(1,2,3) = 2 + 3 + 6
    EXPECT_EQ(compose_linear(build_elementary_symmetric(3, 2), B), parse_poly("11:2"));
}

TEST(Builders, ElementarySymmetric) {
    EXPECT_EQ(build_elementary_symmetric(7, 2).num_terms(), 21u);
    EXPECT_EQ(build_elementary_symmetric(5, 5).num_terms(), 1u);
    EXPECT_EQ(e3(), parse_poly("1:1,1,1,0 + 1:1,1,0,1 + 1:1,0,1,1 + 1:0,1,1,1"));
    for (int d = 1; d <= 7; ++d)
        for (int m = 1; m <= d; ++m)
            EXPECT_EQ(eval_exact(build_elementary_symmetric(d, m), QVec(static_cast<std::size_t>(d), 1)),
                      binomial(d, m));
    EXPECT_THROW(build_elementary_symmetric(3, 4), Error);
}

TEST(Builders, SymmetricDeterminant) {
    auto s2 = build_symmetric_determinant(2);
    EXPECT_EQ(s2.f, parse_poly("1:1,1,0 + -1:0,0,2"));
    EXPECT_EQ(s2.S(2, 2), 2);
    EXPECT_EQ(s2.S(0, 0), 1);
    auto s3 = build_symmetric_determinant(3);
    EXPECT_EQ(eval_exact(s3.f, symdet_vectorize(QMat::identity(3))), 1);
    auto s4 = build_symmetric_determinant(4);
    QMat D(4, 4);
    for (std::size_t i = 0; i < 4; ++i) D(i, i) = static_cast<long>(i + 1);
    EXPECT_EQ(eval_exact(s4.f, symdet_vectorize(D)), 24);
    // against exact matrix determinant on a random symmetric matrix
    Rng rng(2);
    QMat A(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i; j < 4; ++j) A(i, j) = A(j, i) = rng.small_rational(9, 4);
    EXPECT_EQ(eval_exact(s4.f, symdet_vectorize(A)), determinant(A));
}

TEST(Builders, Laplacian) {
    auto k4 = build_graph_laplacian_det({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    EXPECT_EQ(k4.num_terms(), 16u);
    EXPECT_EQ(build_graph_laplacian_det({{0, 1}, {1, 2}}), parse_poly("1:1,1"));
    EXPECT_EQ(build_graph_laplacian_det({{0, 1}, {1, 2}, {0, 2}}).num_terms(), 3u);
    EXPECT_THROW(build_graph_laplacian_det({{0, 1}, {2, 3}}), Error);
}

TEST(Builders, LaplacianMatchesMatrixTree) {
    const std::vector<std::vector<std::pair<int, int>>> graphs{
        {{0, 1}, {1, 2}, {2, 3}, {3, 0}},
        {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}},
        {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
    };
    for (const auto& g : graphs) {
        auto f = build_graph_laplacian_det(g);
        EXPECT_EQ(Integer(f.num_terms()), matrix_tree_count(g));
        for (const auto& [e, c] : f.terms()) EXPECT_EQ(c, 1);
    }
    // Cayley: K5 has 125 spanning trees
    EXPECT_EQ(matrix_tree_count(graphs[2]), 125);
}

TEST(Builders, Vamos) {
    auto v = build_vamos();
    EXPECT_EQ(v.nvars(), 8u);
    EXPECT_EQ(v.degree(), 4u);
    EXPECT_EQ(v.num_terms(), 65u);
    EXPECT_EQ(v.coefficient({1, 1, 0, 0, 1, 1, 0, 0}), 0);
    EXPECT_EQ(v.coefficient({1, 1, 1, 1, 0, 0, 0, 0}), 1);
    EXPECT_EQ(eval_exact(v, QVec(8, 1)), 65);
}

TEST(Builders, ProductOfLinearForms) {
    EXPECT_EQ(build_product_linear_forms(QMat::identity(3)), parse_poly("1:1,1,1"));
    auto f = build_product_linear_forms(QMat::from_rows({{1, 0}, {0, 1}, {1, 1}, {1, -1}}));
    EXPECT_EQ(f, parse_poly("1:3,1 + -1:1,3"));
    auto sq = build_product_linear_forms(QMat::from_rows({{1, 2}, {1, 2}}));
    EXPECT_EQ(sq, parse_poly("1:2,0 + 4:1,1 + 4:0,2"));
    EXPECT_THROW(build_product_linear_forms(QMat::from_rows({{1, 0}, {0, 0}})), Error);
}

TEST(PolySpec, Builders) {
    EXPECT_EQ(parse_poly_spec("elem(4,3)").f, e3());
    auto s = parse_poly_spec("symdet(2)");
    EXPECT_EQ(s.tau, (QVec{1, 1, 0}));
    EXPECT_EQ(parse_poly_spec("laplacian(0-1;1-2)").f, parse_poly("1:1,1"));
    EXPECT_EQ(parse_poly_spec("vamos").f.num_terms(), 65u);
}

TEST(Rational, DecimalAndLeadingZeros) {
    EXPECT_EQ(parse_rational("0.8"), Rational(4, 5));
    EXPECT_EQ(parse_rational("08/09"), Rational(8, 9));
    EXPECT_EQ(parse_rational_list("0.7, 1e-2, -3/6"), (QVec{Rational(7, 10), Rational(1, 100), Rational(-1, 2)}));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("0x10"), Error);
}
