#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "hypex/error.hpp"
#include "hypex/gradmap.hpp"
#include "hypex/hyperbolicity.hpp"

using namespace hypex;

namespace {

HyperbolicFamily e3fam() { return HyperbolicFamily::make(build_elementary_symmetric(4, 3), {1, 1, 1, 1}); }
HyperbolicFamily spec(const std::string& s) { return family_from_spec(parse_poly_spec(s)); }

HyperbolicFamily k4fam() {
    auto f = build_graph_laplacian_det({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    return HyperbolicFamily::make(f, QVec(6, 1));
}

// Random interior point: tau plus a small rational perturbation, kept when inside C.
QVec random_interior(const HyperbolicFamily& fam, Rng& rng) {
    for (;;) {
        QVec x = fam.tau;
        for (auto& v : x) v += Rational(rng.uniform_int(-40, 40), 100);
        if (cone_contains(fam, x).status == ConeStatus::Interior) return x;
    }
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Eigen::MatrixXd sym_of(const std::vector<double>& v, int m) {
    Eigen::MatrixXd A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) A(i, j) = A(j, i) = v[symdet_slot(m, i, j)];
    return A;
}

}  // namespace

TEST(GradientMap, E3Symmetric) {
    auto s = gradient_map(e3fam(), {1, 1, 1, 1});
    for (double v : s) EXPECT_NEAR(v, 0.75, 1e-15);
    EXPECT_EQ(gradient_map_exact(e3fam(), {1, 1, 1, 1}), (QVec{Rational(3, 4), Rational(3, 4), Rational(3, 4), Rational(3, 4)}));
}

TEST(GradientMap, SymdetIsInverse) {
    auto fam = spec("symdet(2)");
    // [[2,1],[1,1]] in slot order (t11, t22, t12)
    EXPECT_EQ(gradient_map_exact(fam, {2, 1, 1}), (QVec{1, 2, -1}));
}

TEST(GradientMap, HomogeneousDegreeMinusOne) {
    auto fam = e3fam();
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        QVec x = random_interior(fam, rng);
        const double lam = rng.uniform(0.1, 10.0);
        auto a = gradient_map(fam, to_doubles(x));
        std::vector<double> y = to_doubles(x);
        for (double& v : y) v *= lam;
        auto b = gradient_map(fam, y);
        for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(b[i] * lam, a[i], 1e-12 * std::abs(a[i]) + 1e-14);
    }
}

TEST(GradientMap, OnHypersurface) {
    EXPECT_THROW(gradient_map(e3fam(), {1, 1, 1, -1.0 / 3.0}), Error);
}

TEST(GradientMap, HessianMatchesFiniteDifferences) {
    // psi = <theta, sigma> - log f; its Hessian is g g^T / f^2 - H / f
    for (const auto& fam : {e3fam(), spec("symdet(3)"), k4fam()}) {
        const CompiledPoly cp(fam.f);
        const std::size_t d = fam.dim();
        Rng rng(21);
        for (int t = 0; t < 10; ++t) {
            auto x = to_doubles(random_interior(fam, rng));
            double v;
            std::vector<double> g(d), H(d * d);
            cp.value_grad_hess(x.data(), v, g.data(), H.data());
            auto grad_psi = [&](std::vector<double> y) {
                double w;
                std::vector<double> gg(d);
                cp.value_grad(y.data(), w, gg.data());
                for (double& e : gg) e = -e / w;
                return gg;
            };
            for (std::size_t j = 0; j < d; ++j) {
                const double h = 1e-6;
                auto xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                auto gp = grad_psi(xp), gm = grad_psi(xm);
                for (std::size_t i = 0; i < d; ++i) {
                    const double exact = g[i] * g[j] / (v * v) - H[i * d + j] / v;
                    const double fd = (gp[i] - gm[i]) / (2 * h);
                    EXPECT_NEAR(fd, exact, 1e-5 * std::max(1.0, std::abs(exact)));
                }
            }
        }
    }
}

TEST(GradientMap, RestrictionFactorization) {
    // the restricted family g(u) = f(L^T u) with identity pairing has F_g(u) = L S F(L^T u)
    Rng rng(13);
    for (const auto& fam : {e3fam(), spec("symdet(3)")}) {
        const std::size_t d = fam.dim();
        for (int t = 0; t < 10; ++t) {
            QMat L = rng.small_rational_matrix(d - 1, d, 9);
            const QVec u0 = [&] {
                // least-squares coordinates of tau in the row space are enough to land inside C
                QMat G = L * L.transpose();
                return inverse(G) * (L * fam.tau);
            }();
            QVec theta = L.transpose() * u0;
            if (cone_contains(fam, theta).status != ConeStatus::Interior) continue;
            auto rfam = HyperbolicFamily::make(compose_linear(fam.f, L.transpose()), u0);
            const QVec lhs = gradient_map_exact(rfam, u0);
            const QVec rhs = L * (fam.S * gradient_map_exact(fam, theta));
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Fiber, E3FourToOne) {
    auto res = fiber_solve(e3fam(), {Rational(7, 10), Rational(8, 10), Rational(9, 10), Rational(11, 10)}, 7);
    EXPECT_EQ(res.complex_count, 4u);
    EXPECT_EQ(res.in_cone, 1u);
    EXPECT_TRUE(res.stable);
}

TEST(Fiber, SymdetBirational) {
    auto res = fiber_solve(spec("symdet(3)"), {3, 2, 4, Rational(1, 2), Rational(-1, 3), Rational(1, 5)}, 5);
    EXPECT_EQ(res.complex_count, 1u);
    EXPECT_EQ(res.in_cone, 1u);
}

TEST(Fiber, ContainsConstructedPoint) {
    auto fam = e3fam();
    const QVec theta0{1, 2, 3, 4};
    auto res = fiber_solve(fam, gradient_map_exact(fam, theta0), 9);
    ASSERT_EQ(res.cone_points.size(), 1u);
    EXPECT_LT(dist(res.cone_points[0], to_doubles(theta0)), 1e-8);
}

TEST(Fiber, CountMatchesGradientDegreeK4) {
    auto fam = k4fam();
    auto res = fiber_solve(fam, gradient_map_exact(fam, {1, 2, 3, 1, 2, 1}), 3);
    EXPECT_EQ(res.complex_count, 1u);
}

TEST(Mle, E3Symmetric) {
    auto r = mle(e3fam(), {0.75, 0.75, 0.75, 0.75});
    for (double v : r.theta_hat) EXPECT_NEAR(v, 1.0, 1e-10);
    EXPECT_LE(r.residual, 1e-10);
}

TEST(Mle, SymdetInversion) {
    Rng rng(19);
    for (int m = 2; m <= 5; ++m) {
        auto fam = spec("symdet(" + std::to_string(m) + ")");
        for (int t = 0; t < 5; ++t) {
            Eigen::MatrixXd R = Eigen::MatrixXd::Random(m, m);
            Eigen::MatrixXd Sig = R * R.transpose() + m * Eigen::MatrixXd::Identity(m, m);
            std::vector<double> s(fam.dim());
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) s[symdet_slot(m, i, j)] = Sig(i, j);
            auto r = mle(fam, s, 1e-12);
            const Eigen::MatrixXd diff = sym_of(r.theta_hat, m) - Sig.inverse();
            EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-10) << "m=" << m;
        }
    }
}

TEST(Mle, DoesNotExist) {
    try {
        mle(e3fam(), {1, 0, 0, 0});
        FAIL() << "expected NotExist";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotExist);
    }
}

TEST(Mle, RoundTripProductOfLinearForms) {
    auto fam = HyperbolicFamily::make(parse_poly("1:1,1,1"), {1, 1, 1});
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        QVec th = random_interior(fam, rng);
        auto r = mle(fam, gradient_map(fam, to_doubles(th)));
        EXPECT_LE(dist(r.theta_hat, to_doubles(th)), 1e-8);
    }
}

TEST(CentralPath, SimplexCenter) {
    auto fam = HyperbolicFamily::make(parse_poly("1:1,1,1"), {1, 1, 1});
    auto rows = central_path_trace(fam, QMat::from_rows({{1, 1, 1}, {1, 0, -1}}), 9, 1);
    ASSERT_EQ(rows.size(), 9u);
    bool hit = false;
    for (const auto& r : rows) {
        EXPECT_EQ(cone_contains(fam, r.theta).status, ConeStatus::Interior);
        EXPECT_EQ(dual_cone_margin(fam, r.sigma).status, ConeStatus::Interior);
        if (dist(r.sigma, {1, 1, 1}) < 1e-12) hit = true;
    }
    EXPECT_TRUE(hit);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].t, rows[i - 1].t);
    // f decreases toward both ends of the segment
    const CompiledPoly cp(fam.f);
    EXPECT_LT(cp.value(rows.front().theta.data()), cp.value(rows[4].theta.data()));
    EXPECT_LT(cp.value(rows.back().theta.data()), cp.value(rows[4].theta.data()));
}

TEST(CentralPath, MissesCone) {
    auto fam = HyperbolicFamily::make(parse_poly("1:1,1,1"), {1, 1, 1});
    EXPECT_THROW(central_path_trace(fam, QMat::from_rows({{1, -1, 0}, {0, 1, -1}}), 5, 1), Error);
}
