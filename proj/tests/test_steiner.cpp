#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "hypex/gradmap.hpp"
#include "hypex/hyperbolicity.hpp"
#include "hypex/steiner.hpp"

using namespace hypex;

TEST(Steiner, OrbitStructure) {
    const auto Q = steiner_quartic();
    EXPECT_EQ(Q.degree(), 4u);
    // orbit type (sorted exponent pattern) -> coefficient
    std::map<std::vector<unsigned>, std::set<long>> orbits;
    std::map<std::vector<unsigned>, int> sizes;
    for (const auto& [e, c] : Q.terms()) {
        std::vector<unsigned> pat(e.begin(), e.end());
        std::sort(pat.rbegin(), pat.rend());
        orbits[pat].insert(c.get_num().get_si());
        ++sizes[pat];
    }
    const std::map<std::vector<unsigned>, std::pair<long, int>> expect{
        {{4, 0, 0, 0}, {1, 4}}, {{3, 1, 0, 0}, {-4, 12}}, {{2, 2, 0, 0}, {6, 6}}, {{2, 1, 1, 0}, {4, 12}}, {{1, 1, 1, 1}, {-40, 1}}};
    ASSERT_EQ(orbits.size(), 5u);
    for (const auto& [pat, cs] : expect) {
        ASSERT_EQ(orbits[pat].size(), 1u);
        EXPECT_EQ(*orbits[pat].begin(), cs.first);
        EXPECT_EQ(sizes[pat], cs.second);
    }
}

TEST(Steiner, Evaluations) {
    EXPECT_EQ(steiner_eval(QVec{1, 1, 1, 9}), 0);
    EXPECT_EQ(steiner_eval(QVec{1, 1, 1, 1}), 0);
    EXPECT_EQ(steiner_eval(QVec{1, 0, 0, 0}), 1);
    EXPECT_NEAR(steiner_eval(std::vector<double>{1, 0, 0, 0}), 1.0, 0);
}

TEST(Steiner, ExactWitness) {
    EXPECT_EQ(steiner_exact_witness({1, 1, 1, Rational(-1, 3)}), 0);
    // the boundary image point is a multiple of (1,1,1,9)
    auto fam = HyperbolicFamily::make(build_elementary_symmetric(4, 3), {1, 1, 1, 1});
    auto g = gradient(fam.f);
    QVec s;
    for (const auto& gi : g) s.push_back(eval_exact(gi, {1, 1, 1, Rational(-1, 3)}));
    EXPECT_EQ(s, (QVec{Rational(1, 3), Rational(1, 3), Rational(1, 3), 3}));
}

TEST(Steiner, DualVanishing) {
    EXPECT_LE(dual_vanishing_probe(100, 1), 1e-8);
    EXPECT_LE(dual_vanishing_probe(100, 2), 1e-8);
}

TEST(Steiner, SamplesAreOnTheCubic) {
    const auto e3 = build_elementary_symmetric(4, 3);
    for (const auto& s : steiner_boundary_samples(30, 4)) {
        EXPECT_EQ(eval_exact(e3, s.theta), 0);
        double n = 0;
        for (double v : s.sigma) n += v * v;
        EXPECT_NEAR(n, 1.0, 1e-12);
    }
}

TEST(Steiner, InteriorImagesOffTheQuartic) {
    // interior points map into the open dual cone, away from Q = 0
    auto fam = HyperbolicFamily::make(build_elementary_symmetric(4, 3), {1, 1, 1, 1});
    Rng rng(5);
    double smallest = 1e300;
    for (int t = 0; t < 50; ++t) {
        QVec x{1, 1, 1, 1};
        for (auto& v : x) v += Rational(rng.uniform_int(-30, 30), 100);
        auto s = gradient_map(fam, to_doubles(x));
        double n = 0;
        for (double v : s) n += v * v;
        for (double& v : s) v /= std::sqrt(n);
        smallest = std::min(smallest, std::abs(steiner_eval(s)));
    }
    EXPECT_GT(smallest, 1e-6);
}
