#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "hypex/error.hpp"
#include "hypex/hankel.hpp"
#include "hypex/hyperbolicity.hpp"

using namespace hypex;

namespace {

// Coefficients of (u(x)v(y) - u(y)v(x)) / (y - x), found by exact division one coefficient at a time.
QMat bezoutian(const QVec& u, const QVec& v) {
    const std::size_t m = u.size() - 1;
    // (y - x) B = N  gives  B[a][b-1] - B[a-1][b] = N[a][b]
    QMat B(m, m);
    for (std::size_t a = m; a >= 1; --a)
        for (std::size_t b = 0; b < m; ++b) {
            Rational val = -(u[a] * v[b] - u[b] * v[a]);
            if (a < m && b >= 1) val += B(a, b - 1);
            B(a - 1, b) = val;
        }
    return B;
}

QVec plucker_of(const QVec& u, const QVec& v) {
    const int n = static_cast<int>(u.size());
    QVec p(static_cast<std::size_t>(n * (n - 1) / 2));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            p[plucker_index(n, a, b)] = u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)] - u[static_cast<std::size_t>(b)] * v[static_cast<std::size_t>(a)];
    return p;
}

}  // namespace

TEST(HankelSpace, Dimensions) {
    EXPECT_EQ(hankel_space(4).L.c(), 7u);
    EXPECT_EQ(hankel_space(4).L.d(), 10u);
    auto g = hankel_space_generalized(2, 3);
    EXPECT_EQ(g.L.c(), 15u);
    EXPECT_EQ(g.m, 6);
}

TEST(HankelSpace, GeneralizedLayout) {
    auto g = hankel_space_generalized(2, 3);
    const std::vector<std::vector<std::string>> expect{
        {"400", "220", "202", "310", "301", "211"}, {"220", "040", "022", "130", "121", "031"},
        {"202", "022", "004", "112", "103", "013"}, {"310", "130", "112", "220", "211", "121"},
        {"301", "121", "103", "211", "202", "112"}, {"211", "031", "013", "121", "112", "022"}};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::string lab;
            for (unsigned e : g.coords[static_cast<std::size_t>(g.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])]) lab += std::to_string(e);
            EXPECT_EQ(lab, expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) << i << "," << j;
        }
}

TEST(HankelSpace, GeneralizedMatchesUnivariate) {
    auto g = hankel_space_generalized(1, 2);
    auto h = hankel_space(2);
    EXPECT_EQ(g.slot, h.slot);
    EXPECT_EQ(g.L.L, h.L.L);
}

TEST(HankelSpace, EntryDependsOnIndexSum) {
    auto h = hankel_space(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) EXPECT_EQ(h.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], i + j);
}

TEST(Plucker, RelationCounts) {
    EXPECT_EQ(plucker_relations(4).size(), 1u);
    EXPECT_EQ(plucker_relations(5).size(), 5u);
    EXPECT_EQ(plucker_relations(6).size(), 15u);
    EXPECT_THROW(plucker_relations(3), Error);
}

TEST(Plucker, RelationsVanishOnDecomposable) {
    Rng rng(3);
    for (int n = 4; n <= 7; ++n) {
        QVec u(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
        for (auto& x : u) x = rng.small_rational(20, 5);
        for (auto& x : v) x = rng.small_rational(20, 5);
        for (const auto& r : plucker_relations(n)) EXPECT_EQ(eval_exact(r, plucker_of(u, v)), 0);
    }
}

TEST(Bezout, SmallCases) {
    // m = 2: [[p01, p02], [p02, p12]]
    auto B = bezout_from_plucker({1, 2, 3}, 2);
    EXPECT_EQ(B, QMat::from_rows({{1, 2}, {2, 3}}));
    // m = 3: B(1,1) = p03 + p12
    QVec p(6);
    for (std::size_t k = 0; k < 6; ++k) p[k] = static_cast<long>(k + 1);
    auto B3 = bezout_from_plucker(p, 3);
    EXPECT_EQ(B3(1, 1), p[plucker_index(4, 0, 3)] + p[plucker_index(4, 1, 2)]);
}

TEST(Bezout, MatchesPolynomialExpansion) {
    Rng rng(5);
    for (int m = 2; m <= 6; ++m) {
        QVec u(static_cast<std::size_t>(m + 1)), v(static_cast<std::size_t>(m + 1));
        for (auto& x : u) x = rng.small_rational(9, 4);
        for (auto& x : v) x = rng.small_rational(9, 4);
        EXPECT_EQ(bezout_from_plucker(plucker_of(u, v), m), bezoutian(u, v)) << "m=" << m;
    }
}

TEST(Bezout, RoundTrip) {
    Rng rng(6);
    for (int m = 2; m <= 6; ++m) {
        QVec p(static_cast<std::size_t>(m * (m + 1) / 2));
        for (auto& x : p) x = rng.small_rational(30, 7);
        EXPECT_EQ(plucker_from_symmetric(bezout_from_plucker(p, m), m), p);
    }
    EXPECT_EQ(plucker_from_symmetric(QMat::identity(2), 2), (QVec{1, 0, 1}));
}

TEST(Grassmannian, HandExample) {
    const QMat H = QMat::from_rows({{2, 1, 1}, {1, 1, 1}, {1, 1, 2}});
    EXPECT_EQ(adjugate(H), QMat::from_rows({{1, -1, 0}, {-1, 3, -1}, {0, -1, 1}}));
    EXPECT_TRUE(verify_grassmannian_membership(H, 3));
    EXPECT_THROW(verify_grassmannian_membership(QMat::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}), 3), Error);
}

TEST(Grassmannian, RandomHankel) {
    Rng rng(7);
    for (int m = 3; m <= 6; ++m) {
        auto hs = hankel_space(m);
        for (int t = 0; t < 25; ++t) {
            QVec u(hs.L.c());
            for (auto& x : u) x = rng.small_rational(30, 7);
            const QMat A = hankel_matrix(hs, u);
            if (determinant(A) == 0) continue;
            EXPECT_TRUE(verify_grassmannian_membership(A, m));
        }
    }
}

TEST(Grassmannian, NonHankelFails) {
    // adjugate of a random symmetric non-Hankel matrix lands off the Grassmannian
    Rng rng(9);
    int off = 0;
    for (int t = 0; t < 10; ++t) {
        QMat A(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) A(i, j) = A(j, i) = rng.small_rational(20, 5);
        if (determinant(A) == 0) continue;
        off += !verify_grassmannian_membership(A, 3);
    }
    EXPECT_GE(off, 9);
}

TEST(GramCenter, SquareOfQuadratic) {
    auto g = gram_analytic_center({1, 0, 2, 0, 1});
    Eigen::Matrix3d expect;
    expect << 1, 0, -1.0 / 3, 0, 8.0 / 3, 0, -1.0 / 3, 0, 1;
    EXPECT_LE((g.Sigma - expect).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE(g.hankel_residual, 1e-10);
    EXPECT_LE(g.poly_residual, 1e-10);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g.Sigma).eigenvalues().minCoeff(), 0.0);
}

TEST(GramCenter, UniqueGram) {
    auto g = gram_analytic_center({1, 0, 1});
    EXPECT_LE((g.Sigma - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GramCenter, NotStrictlySos) {
    try {
        gram_analytic_center({0, 0, 1});
        FAIL() << "expected NotExist";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotExist);
    }
}

TEST(GramCenter, PolyFromGram) {
    EXPECT_EQ(poly_from_gram(Eigen::MatrixXd(Eigen::Matrix2d::Identity())), (std::vector<double>{1, 0, 1}));
    QMat S = QMat::from_rows({{1, 0, Rational(-1, 3)}, {0, Rational(8, 3), 0}, {Rational(-1, 3), 0, 1}});
    EXPECT_EQ(poly_from_gram(S), (QVec{1, 0, 2, 0, 1}));
}

TEST(HankelDegrees, CatalanThree) {
    auto sd = build_symmetric_determinant(3);
    auto fam = HyperbolicFamily::make(sd.f, symdet_vectorize(QMat::identity(3)), sd.S);
    TrackerConfig cfg;
    cfg.threads = 1;
    auto hs = hankel_space(3);
    auto v = variety_degree(fam, hs.L, 1, cfg);
    EXPECT_EQ(v.degree, 2u);
    EXPECT_EQ(v.map_degree, 1u);
    EXPECT_EQ(ml_degree(fam, hs.L, 1, cfg).ml_degree, 2u);
    EXPECT_EQ(lperp_intersection_test(fam, hs.L, 1, cfg).verdict, LperpVerdict::Empty);
}
