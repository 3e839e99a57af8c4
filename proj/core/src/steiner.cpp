#include "hypex/steiner.hpp"

#include <algorithm>
#include <cmath>

#include "hypex/error.hpp"
#include "hypex/rational.hpp"

namespace hypex {

namespace {

Exponent mono(std::initializer_list<std::pair<int, unsigned>> parts) {
    Exponent e(4, 0);
    for (auto [i, k] : parts) e[static_cast<std::size_t>(i)] += k;
    return e;
}

const SparsePoly& quartic() {
    static const SparsePoly Q = [] {
        SparsePoly q(4);
        for (int i = 0; i < 4; ++i) {
            q.add_term(mono({{i, 4}}), 1);
            for (int j = 0; j < 4; ++j) {
                if (j == i) continue;
                q.add_term(mono({{i, 3}, {j, 1}}), -4);
                if (j > i) q.add_term(mono({{i, 2}, {j, 2}}), 6);
                for (int k = j + 1; k < 4; ++k)
                    if (k != i) q.add_term(mono({{i, 2}, {j, 1}, {k, 1}}), 4);
            }
        }
        q.add_term(mono({{0, 1}, {1, 1}, {2, 1}, {3, 1}}), -40);
        return q;
    }();
    return Q;
}

QVec grad_e3(const QVec& t) {
    QVec g(4);
    for (int i = 0; i < 4; ++i) {
        Rational s = 0;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                if (j != i && k != i) s += t[static_cast<std::size_t>(j)] * t[static_cast<std::size_t>(k)];
        g[static_cast<std::size_t>(i)] = s;
    }
    return g;
}

}  // namespace

SparsePoly steiner_quartic() { return quartic(); }

Rational steiner_eval(const QVec& sigma) {
    if (sigma.size() != 4) throw Error(ErrorKind::Dimension, "Steiner quartic takes 4 coordinates");
    return eval_exact(quartic(), sigma);
}

double steiner_eval(const std::vector<double>& sigma) {
    if (sigma.size() != 4) throw Error(ErrorKind::Dimension, "Steiner quartic takes 4 coordinates");
    static const CompiledPoly cq(quartic());
    return cq.value(sigma.data());
}

Rational steiner_exact_witness(const QVec& theta) {
    if (theta.size() != 4) throw Error(ErrorKind::Dimension, "E3 point must have 4 coordinates");
    return steiner_eval(grad_e3(theta));
}

std::vector<BoundarySample> steiner_boundary_samples(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<BoundarySample> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0)));
    while (static_cast<int>(out.size()) < n) {
        // E3 is linear in theta_4: theta_4 = -abc / (ab + ac + bc)
        const Rational a = rng.small_rational(20, 7), b = rng.small_rational(20, 7), c = rng.small_rational(20, 7);
        const Rational e2 = a * b + a * c + b * c;
        if (e2 == 0) continue;
        QVec theta{a, b, c, Rational(-a * b * c / e2)};
        std::vector<double> th = to_doubles(theta);
        double tn = 0;
        for (double v : th) tn += v * v;
        tn = std::sqrt(tn);
        bool near_singular = false;
        for (int i = 0; i < 4; ++i) {
            double dist = 0;
            for (int j = 0; j < 4; ++j) {
                const double target = i == j ? std::copysign(1.0, th[static_cast<std::size_t>(j)]) : 0.0;
                const double dv = th[static_cast<std::size_t>(j)] / tn - target;
                dist += dv * dv;
            }
            if (std::sqrt(dist) < 1e-6) near_singular = true;
        }
        if (near_singular) continue;
        std::vector<double> g = to_doubles(grad_e3(theta));
        double gn = 0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        if (gn < 1e-12) continue;
        for (double& v : g) v /= gn;
        BoundarySample s;
        s.theta = std::move(theta);
        s.q = steiner_eval(g);
        s.sigma = std::move(g);
        out.push_back(std::move(s));
    }
    return out;
}

double dual_vanishing_probe(int n, std::uint64_t seed) {
    double worst = 0.0;
    for (const auto& s : steiner_boundary_samples(n, seed)) worst = std::max(worst, std::abs(s.q));
    return worst;
}

}  // namespace hypex
