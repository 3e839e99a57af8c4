#include <gtest/gtest.h>

#include <complex>

#include "hypex/error.hpp"
#include "hypex/expvariety.hpp"
#include "hypex/hyperbolicity.hpp"
#include "hypex/multideg.hpp"

using namespace hypex;

namespace {

using C = std::complex<double>;

HyperbolicFamily e3fam() { return HyperbolicFamily::make(build_elementary_symmetric(4, 3), {1, 1, 1, 1}); }

TrackerConfig cfg1() {
    TrackerConfig c;
    c.threads = 1;
    return c;
}

C image_quadric(const CVec& s) {
    const C s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3];
    return 45.0 * s1 * s1 - 63.0 * s1 * s2 + 18.0 * s2 * s2 + 18.0 * s1 * s3 - 9.0 * s2 * s3 + s3 * s3 +
           18.0 * s1 * s4 - 9.0 * s2 * s4 - 2.0 * s3 * s4 + s4 * s4;
}

struct Case {
    const char* name;
    Subspace L;
    std::size_t degree;
};

std::vector<Case> e3_planes() {
    return {{"generic", Subspace::hyperplane({1, 2, 3, -6}), 4},
            {"t1+t2=2t3", Subspace::hyperplane({1, 1, -2, 0}), 3},
            {"t1=2t2", Subspace::hyperplane({1, -2, 0, 0}), 2},
            {"t1=0", Subspace::hyperplane({1, 0, 0, 0}), 1},
            {"t1+t2+t3=0", Subspace::hyperplane({1, 1, 1, 0}), 1}};
}

}  // namespace

TEST(Subspace, Construction) {
    auto H = Subspace::hyperplane({1, 2, 3, -6});
    EXPECT_EQ(H.c(), 3u);
    EXPECT_EQ(H.d(), 4u);
    for (std::size_t i = 0; i < H.c(); ++i) EXPECT_EQ(dot(H.L.row(i), QVec{1, 2, 3, -6}), 0);
    EXPECT_THROW(Subspace::make(QMat::from_rows({{1, 0}, {2, 0}})), Error);
    auto E = Subspace::from_equations(QMat::from_rows({{1, -1, 0, 0}, {0, 0, 1, -1}}));
    EXPECT_EQ(E.c(), 2u);
    for (std::size_t i = 0; i < E.c(); ++i)
        for (std::size_t j = 0; j < E.perp.rows(); ++j) EXPECT_EQ(dot(E.L.row(i), E.perp.row(j)), 0);
}

TEST(Degree, E3PlaneCatalogue) {
    auto fam = e3fam();
    for (const auto& c : e3_planes()) {
        auto v = variety_degree(fam, c.L, 5, cfg1());
        EXPECT_EQ(v.degree, c.degree) << c.name;
        EXPECT_TRUE(v.stable) << c.name;
    }
}

TEST(Degree, E3QuadricImage) {
    auto v = variety_degree(e3fam(), Subspace::hyperplane({1, -2, 0, 0}), 5, cfg1());
    ASSERT_FALSE(v.image_points.empty());
    for (const auto& s : v.image_points) EXPECT_LE(std::abs(image_quadric(s)), 1e-8);
}

TEST(Degree, E3FacetImage) {
    auto v = variety_degree(e3fam(), Subspace::hyperplane({1, 0, 0, 0}), 5, cfg1());
    for (const auto& s : v.image_points) EXPECT_LE(std::abs(s[0] - s[1] - s[2] - s[3]), 1e-8);
    auto w = variety_degree(e3fam(), Subspace::hyperplane({1, 1, 1, 0}), 5, cfg1());
    for (const auto& s : w.image_points) EXPECT_LE(std::abs(s[0] + s[1] + s[2] - s[3]), 1e-8);
    // this plane misses C: E2 < 0 on it away from the origin
    EXPECT_FALSE(w.meets_cone);
}

TEST(Degree, E3Lines) {
    auto fam = e3fam();
    auto g = variety_degree(fam, Subspace::make(QMat::from_rows({{1, 2, 3, 4}, {3, -1, 2, 5}})), 5, cfg1());
    EXPECT_EQ(g.degree, 2u);
    auto s = variety_degree(fam, Subspace::make(QMat::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}})), 5, cfg1());
    EXPECT_EQ(s.degree, 1u);
    EXPECT_EQ(s.map_degree, 2u);
}

TEST(Degree, CoordinateLinesCollapse) {
    auto fam = e3fam();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            QMat L(2, 4);
            L(0, static_cast<std::size_t>(i)) = 1;
            L(1, static_cast<std::size_t>(j)) = 1;
            EXPECT_EQ(image_dimension(fam, Subspace::make(L), 3), 0u) << i << j;
        }
}

TEST(Degree, InequalityChainAndLperp) {
    auto fam = e3fam();
    std::vector<Subspace> cases;
    for (const auto& c : e3_planes()) cases.push_back(c.L);
    cases.push_back(Subspace::make(QMat::from_rows({{1, 2, 3, 4}, {3, -1, 2, 5}})));
    cases.push_back(Subspace::make(QMat::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}})));
    for (const auto& L : cases) {
        auto v = variety_degree(fam, L, 7, cfg1());
        auto ml = ml_degree(fam, L, 7, cfg1());
        auto lp = lperp_intersection_test(fam, L, 7, cfg1());
        EXPECT_LE(ml.ml_degree, v.degree);
        EXPECT_LE(Integer(v.degree), alpha_closed_form(4, 3, static_cast<int>(L.c())));
        ASSERT_NE(lp.verdict, LperpVerdict::Inconclusive);
        EXPECT_EQ(ml.ml_degree == v.degree, lp.verdict == LperpVerdict::Empty);
    }
}

TEST(MLDegree, FullSpaceIsOne) {
    auto fam = family_from_spec(parse_poly_spec("symdet(3)"));
    EXPECT_EQ(ml_degree(fam, Subspace::make(QMat::identity(6)), 3, cfg1()).ml_degree, 1u);
}

TEST(MLDegree, Symdet3Subspaces) {
    // a diagonal-plus-one-entry model and a random 4-dimensional subspace
    auto fam = family_from_spec(parse_poly_spec("symdet(3)"));
    Rng rng(8);
    std::vector<Subspace> cases{Subspace::from_equations(QMat::from_rows({{0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}}))};
    QMat R = rng.small_rational_matrix(3, 6, 9);
    QMat L(4, 6);
    for (std::size_t j = 0; j < 6; ++j) L(0, j) = fam.tau[j];
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 6; ++j) L(i + 1, j) = R(i, j);
    cases.push_back(Subspace::make(L));
    for (const auto& S : cases) {
        auto v = variety_degree(fam, S, 4, cfg1());
        auto ml = ml_degree(fam, S, 4, cfg1());
        auto alpha = alpha_numeric(fam.f, static_cast<int>(S.c()), 4, cfg1());
        EXPECT_TRUE(v.stable && ml.stable && alpha.stable);
        EXPECT_LE(ml.ml_degree, v.degree);
        EXPECT_LE(v.degree, alpha.alpha);
    }
}

TEST(Polar, E3Factorizations) {
    auto f = build_elementary_symmetric(4, 3);
    auto q1 = polar_polynomial(f, {-1, 1, 1, 1});
    EXPECT_EQ(q1, parse_poly("2:1,1,0,0 + 2:1,0,1,0 + 2:1,0,0,1"));
    auto fac1 = quadric_linear_factor(q1);
    EXPECT_TRUE(fac1.reducible);
    EXPECT_TRUE(fac1.rational);
    auto q2 = polar_polynomial(f, {1, -1, 0, 0});
    EXPECT_EQ(q2, parse_poly("-1:1,0,1,0 + -1:1,0,0,1 + 1:0,1,1,0 + 1:0,1,0,1"));
    EXPECT_TRUE(quadric_linear_factor(q2).reducible);
    auto q3 = polar_polynomial(f, {1, 1, 1, 1});
    EXPECT_EQ(q3, build_elementary_symmetric(4, 2) * Rational(2));
    EXPECT_FALSE(quadric_linear_factor(q3).reducible);
}

TEST(Polar, QuadricFactor) {
    auto a = quadric_linear_factor(parse_poly("1:1,1"));
    EXPECT_TRUE(a.reducible && a.real && a.rational);
    ASSERT_TRUE(a.l1_exact && a.l2_exact);
    auto b = quadric_linear_factor(parse_poly("1:2,0 + 1:0,2"));
    EXPECT_TRUE(b.reducible);
    EXPECT_FALSE(b.real);
    EXPECT_NEAR(std::abs(b.l1[1]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(b.l1[1].imag()), 1.0, 1e-12);
    auto c = quadric_linear_factor(build_elementary_symmetric(4, 2));
    EXPECT_FALSE(c.reducible);
    EXPECT_EQ(c.rank, 4u);
}

TEST(Polar, CubicCandidatesHaveRankTwoPolars) {
    const auto f = build_elementary_symmetric(4, 3);
    std::vector<Eigen::MatrixXd> G;
    for (const auto& g : gradient(f)) {
        const QMat q = quadric_gram(g);
        Eigen::MatrixXd M(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) M(i, j) = to_double(q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        G.push_back(M);
    }
    auto cands = cubic_polar_candidates(f, 3, cfg1());
    ASSERT_FALSE(cands.empty());
    bool found_edge = false;
    for (const auto& a : cands) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4, 4);
        for (int i = 0; i < 4; ++i) M += a[static_cast<std::size_t>(i)] * G[static_cast<std::size_t>(i)];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        EXPECT_LE(svd.singularValues()(2), 1e-8 * svd.singularValues()(0));
        // directions like (1,-1,0,0) from the polar example
        double nz = 0, sum = 0;
        for (double v : a) {
            nz += std::abs(v) > 1e-8;
            sum += v;
        }
        if (nz == 2 && std::abs(sum) < 1e-8) found_edge = true;
    }
    EXPECT_TRUE(found_edge);
}
