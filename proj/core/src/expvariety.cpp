#include "hypex/expvariety.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hypex/error.hpp"

namespace hypex {

namespace {

Eigen::MatrixXd to_eigen(const QMat& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    return out;
}

QMat random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        QMat R = rng.small_rational_matrix(n, n);
        if (rank(R) == n) return R;
    }
}

QMat first_rows(const QMat& M, std::size_t k) {
    QMat out(k, M.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = M(i, j);
    return out;
}

// Deduplicated projective representatives.
std::vector<CVec> distinct_points(std::vector<CVec> pts, double tol) {
    for (auto& p : pts) p = normalize_projective(p);
    std::sort(pts.begin(), pts.end(), [](const CVec& a, const CVec& b) {
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
            if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
        }
        return false;
    });
    std::vector<CVec> out;
    for (const auto& p : pts)
        if (std::none_of(out.begin(), out.end(), [&](const CVec& q) { return projective_distance(p, q) <= tol; })) out.push_back(p);
    return out;
}

struct SliceRun {
    SolutionSet sol;
    Eigen::MatrixXd B;
};

SliceRun run_slice(const HyperbolicFamily& fam, const QMat& W, const QMat& B, std::uint64_t solver_seed, const TrackerConfig& cfg) {
    SliceRun r;
    r.B = to_eigen(B);
    auto sys = std::make_shared<GradientSliceSystem>(fam.f, W, B);
    r.sol = solve_total_degree(SquareSystem{sys, false}, solver_seed, cfg, gradient_vanishes(fam.f, r.B));
    return r;
}

CVec gradient_at(const CompiledPoly& f, const CVec& theta) {
    std::complex<double> v;
    CVec g(theta.size());
    f.value_grad(theta.data(), v, g.data());
    return g;
}

}  // namespace

Subspace Subspace::make(QMat L) {
    if (L.rows() == 0 || L.cols() == 0) throw Error(ErrorKind::EmptyInput, "empty subspace");
    if (rank(L) != L.rows()) throw Error(ErrorKind::Dimension, "subspace rows must be linearly independent");
    Subspace s;
    s.perp = L.rows() < L.cols() ? nullspace(L) : QMat(0, L.cols());
    s.L = std::move(L);
    return s;
}

Subspace Subspace::hyperplane(const QVec& normal) { return make(nullspace(QMat::from_rows({normal}))); }

Subspace Subspace::from_equations(const QMat& equations) { return make(nullspace(equations)); }

bool subspace_meets_cone(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed) {
    const std::size_t c = L.c();
    const QMat Lt = L.L.transpose();
    std::vector<QVec> cands;
    // least-squares projection of tau first
    {
        QMat G = L.L * Lt;
        cands.push_back(inverse(G) * (L.L * fam.tau));
    }
    for (std::size_t k = 0; k < c; ++k) {
        QVec e(c, 0);
        e[k] = 1;
        cands.push_back(e);
        e[k] = -1;
        cands.push_back(e);
    }
    Rng rng(seed);
    for (int k = 0; k < 300; ++k) {
        QVec u(c);
        for (auto& x : u) x = rng.small_rational(20, 5);
        cands.push_back(u);
    }
    for (const auto& u : cands) {
        QVec theta = Lt * u;
        if (eval_exact(fam.f, theta) == 0) continue;
        if (cone_contains(fam, theta).status == ConeStatus::Interior) return true;
        for (auto& t : theta) t = -t;
        if (cone_contains(fam, theta).status == ConeStatus::Interior) return true;
    }
    return false;
}

std::size_t image_dimension(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed) {
    const auto d = static_cast<Eigen::Index>(L.d());
    const Eigen::MatrixXd Lt = to_eigen(L.L).transpose();
    CompiledPoly f(fam.f);
    Rng rng(seed);
    Eigen::Index best = 0;
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXd u(Lt.cols());
        for (Eigen::Index k = 0; k < u.size(); ++k) u(k) = rng.normal();
        Eigen::VectorXd theta = Lt * u;
        double v;
        Eigen::VectorXd g(d);
        Eigen::MatrixXd H(d, d);
        f.value_grad_hess(theta.data(), v, g.data(), H.data());
        Eigen::MatrixXd J = H * Lt;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        const auto& s = svd.singularValues();
        Eigen::Index r = 0;
        for (Eigen::Index k = 0; k < s.size(); ++k)
            if (s(k) > 1e-9 * s(0)) ++r;
        best = std::max(best, r);
    }
    if (best == 0) throw Error(ErrorKind::Domain, "the gradient vanishes identically on the subspace");
    return static_cast<std::size_t>(best - 1);
}

VarietyDegrees variety_degree(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed, const TrackerConfig& cfg) {
    if (L.d() != fam.dim()) throw Error(ErrorKind::Dimension, "subspace lives in the wrong ambient space");
    const std::size_t c = L.c();
    VarietyDegrees out;
    out.seed = seed;
    out.seed2 = derive_seed(seed, 7);
    out.meets_cone = subspace_meets_cone(fam, L, seed);
    out.image_dim = image_dimension(fam, L, seed);
    const std::size_t k = out.image_dim;
    const QMat Lt = L.L.transpose();
    const Eigen::MatrixXd Sd = to_eigen(fam.S);
    CompiledPoly f(fam.f);

    auto run = [&](std::uint64_t s, std::size_t& theta_count) {
        Rng rng(derive_seed(s, 0));
        QMat B = k + 1 == c ? Lt : Lt * rng.small_rational_matrix(c, k + 1);
        QMat W = rng.small_rational_matrix(k, fam.dim());
        SliceRun r = run_slice(fam, W, B, derive_seed(s, 1), cfg);
        std::vector<CVec> sig;
        for (const auto& p : r.sol.points) {
            if (!p.counted()) continue;
            CVec theta = r.B.cast<std::complex<double>>() * p.x;
            sig.push_back(Sd.cast<std::complex<double>>().ldlt().solve(gradient_at(f, theta)));
        }
        theta_count = sig.size();
        return distinct_points(std::move(sig), cfg.cluster_tol);
    };

    out.image_points = run(out.seed, out.theta_count);
    out.degree = out.image_points.size();
    std::size_t tc2 = 0;
    out.recount = run(out.seed2, tc2).size();
    out.stable = out.recount == out.degree && tc2 == out.theta_count;
    out.exact_division = out.degree > 0 && out.theta_count % out.degree == 0;
    out.map_degree = (k + 1 == c && out.exact_division) ? out.theta_count / out.degree : 0;
    return out;
}

MLDegreeResult ml_degree(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed, const TrackerConfig& cfg) {
    if (L.d() != fam.dim()) throw Error(ErrorKind::Dimension, "subspace lives in the wrong ambient space");
    const std::size_t c = L.c();
    const QMat Lt = L.L.transpose();
    const Eigen::MatrixXd Ld = to_eigen(L.L), Sd = to_eigen(fam.S);
    CompiledPoly f(fam.f);
    MLDegreeResult out;
    out.seed = seed;
    out.seed2 = derive_seed(seed, 7);

    auto run = [&](std::uint64_t s, std::size_t& perp) {
        Rng rng(derive_seed(s, 0));
        QVec v(c);
        for (auto& x : v) x = rng.small_rational();
        // sufficient statistic L S sigma = L grad f / f must be parallel to v
        QMat V = random_invertible(rng, c - 1) * nullspace(QMat::from_rows({v}));
        SliceRun r = run_slice(fam, V * L.L, Lt, derive_seed(s, 1), cfg);
        std::vector<CVec> sig;
        perp = 0;
        for (const auto& p : r.sol.points) {
            if (!p.counted()) continue;
            CVec theta = r.B.cast<std::complex<double>>() * p.x;
            CVec g = gradient_at(f, theta);
            if ((Ld.cast<std::complex<double>>() * g).norm() <= 1e-8 * Ld.norm() * g.norm()) {
                ++perp;
                continue;
            }
            sig.push_back(Sd.cast<std::complex<double>>().ldlt().solve(g));
        }
        return distinct_points(std::move(sig), cfg.cluster_tol).size();
    };

    if (c == 1) {
        out.ml_degree = out.recount = 1;
        out.stable = true;
        return out;
    }
    out.ml_degree = run(out.seed, out.discarded_perp);
    std::size_t perp2 = 0;
    out.recount = run(out.seed2, perp2);
    out.stable = out.recount == out.ml_degree;
    return out;
}

const char* to_string(LperpVerdict v) {
    switch (v) {
        case LperpVerdict::Empty: return "empty";
        case LperpVerdict::Nonempty: return "nonempty";
        case LperpVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

LperpResult lperp_intersection_test(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed, const TrackerConfig& cfg) {
    if (L.d() != fam.dim()) throw Error(ErrorKind::Dimension, "subspace lives in the wrong ambient space");
    const std::size_t c = L.c();
    const QMat Lt = L.L.transpose();
    const Eigen::MatrixXd Sd = to_eigen(fam.S);
    CompiledPoly f(fam.f);
    LperpResult out;
    out.seed = seed;
    out.seed2 = derive_seed(seed, 7);

    auto run = [&](std::uint64_t s) -> std::optional<CVec> {
        Rng rng(derive_seed(s, 0));
        const QMat M = random_invertible(rng, c) * L.L;
        const Eigen::MatrixXd Md = to_eigen(M);
        SliceRun r = run_slice(fam, first_rows(M, c - 1), Lt, derive_seed(s, 1), cfg);
        out.solutions = std::max(out.solutions, r.sol.points.size());
        for (const auto& p : r.sol.points) {
            if (p.failed || p.at_infinity || p.singular_locus) continue;
            CVec theta = r.B.cast<std::complex<double>>() * p.x;
            CVec g = gradient_at(f, theta);
            const double rel = (Md.cast<std::complex<double>>() * g).norm() / (Md.norm() * g.norm());
            // singular endpoints are only accurate to about the square root of the working precision
            if (rel <= (p.singular ? 1e-6 : 1e-8)) return normalize_projective(Sd.cast<std::complex<double>>().ldlt().solve(g));
        }
        return std::nullopt;
    };

    try {
        if (auto w = run(out.seed)) {
            out.verdict = LperpVerdict::Nonempty;
            out.witness = w;
            return out;
        }
        if (auto w = run(out.seed2)) {
            out.verdict = LperpVerdict::Nonempty;
            out.witness = w;
            return out;
        }
        out.verdict = LperpVerdict::Empty;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Instability) throw;
        out.verdict = LperpVerdict::Inconclusive;
    }
    return out;
}

SparsePoly polar_polynomial(const SparsePoly& f, const QVec& a) {
    if (a.size() != f.nvars()) throw Error(ErrorKind::Dimension, "direction has wrong length");
    SparsePoly out(f.nvars());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) out = out + derivative(f, i) * a[i];
    return out;
}

QMat quadric_gram(const SparsePoly& q) {
    if (q.is_zero() || q.degree() != 2) throw Error(ErrorKind::Range, "expected a quadratic form");
    const std::size_t d = q.nvars();
    QMat G(d, d);
    for (const auto& [e, c] : q.terms()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < d; ++i)
            for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) {
            G(idx[0], idx[0]) += c;
        } else {
            G(idx[0], idx[1]) += c / 2;
            G(idx[1], idx[0]) += c / 2;
        }
    }
    return G;
}

namespace {

bool rational_sqrt(const Rational& x, Rational& root) {
    if (x < 0) return false;
    Integer n = x.get_num(), dd = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(dd.get_mpz_t())) return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), dd.get_mpz_t());
    root = Rational(rn, rd);
    root.canonicalize();
    return true;
}

template <class T>
std::size_t lead_index(const std::vector<T>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != T(0)) return i;
    return 0;
}

}  // namespace

QuadricFactors quadric_linear_factor(const SparsePoly& q) {
    const QMat G = quadric_gram(q);
    const std::size_t d = G.rows();
    QuadricFactors out;
    out.rank = rank(G);
    if (out.rank > 2) return out;
    out.reducible = true;
    out.real = true;

    auto finish_exact = [&](QVec l1, QVec l2, Rational scale) {
        const Rational a = l1[lead_index(l1)], b = l2[lead_index(l2)];
        for (auto& x : l1) x /= a;
        for (auto& x : l2) x /= b;
        scale *= a * b;
        out.rational = true;
        out.scale_exact = scale;
        out.scale = scale.get_d();
        for (std::size_t i = 0; i < d; ++i) {
            out.l1.emplace_back(l1[i].get_d());
            out.l2.emplace_back(l2[i].get_d());
        }
        out.l1_exact = std::move(l1);
        out.l2_exact = std::move(l2);
    };

    if (out.rank == 1) {
        std::size_t i = 0;
        while (G(i, i) == 0) ++i;
        QVec l = G.row(i);
        finish_exact(l, l, 1 / G(i, i));
        return out;
    }
    std::size_t pi = 0, pj = 0;
    bool found = false;
    for (std::size_t i = 0; i < d && !found; ++i)
        for (std::size_t j = i + 1; j < d && !found; ++j)
            if (G(i, i) * G(j, j) - G(i, j) * G(i, j) != 0) {
                pi = i;
                pj = j;
                found = true;
            }
    // q = y^T N y with y = (row pi, row pj) . theta and N the inverse of the principal block
    const QVec c0 = G.row(pi), c1 = G.row(pj);
    const QMat N = inverse(QMat::from_rows({{G(pi, pi), G(pi, pj)}, {G(pj, pi), G(pj, pj)}}));
    const Rational a = N(0, 0), b = N(0, 1), c = N(1, 1);
    if (a == 0) {
        QVec l2(d);
        for (std::size_t k = 0; k < d; ++k) l2[k] = 2 * b * c0[k] + c * c1[k];
        finish_exact(c1, l2, 1);
        return out;
    }
    const Rational disc = b * b - a * c;
    Rational root;
    if (rational_sqrt(disc, root)) {
        QVec l1(d), l2(d);
        const Rational r1 = (-b + root) / a, r2 = (-b - root) / a;
        for (std::size_t k = 0; k < d; ++k) {
            l1[k] = c0[k] - r1 * c1[k];
            l2[k] = c0[k] - r2 * c1[k];
        }
        finish_exact(l1, l2, a);
        return out;
    }
    out.real = disc > 0;
    const std::complex<double> sq = std::sqrt(std::complex<double>(disc.get_d()));
    const std::complex<double> r1 = (-b.get_d() + sq) / a.get_d(), r2 = (-b.get_d() - sq) / a.get_d();
    for (std::size_t k = 0; k < d; ++k) {
        out.l1.push_back(c0[k].get_d() - r1 * c1[k].get_d());
        out.l2.push_back(c0[k].get_d() - r2 * c1[k].get_d());
    }
    const std::size_t i1 = lead_index(out.l1), i2 = lead_index(out.l2);
    const std::complex<double> n1 = out.l1[i1], n2 = out.l2[i2];
    for (auto& x : out.l1) x /= n1;
    for (auto& x : out.l2) x /= n2;
    out.scale = a.get_d() * n1 * n2;
    return out;
}

std::vector<std::vector<double>> cubic_polar_candidates(const SparsePoly& f, std::uint64_t seed, const TrackerConfig& cfg) {
    const std::size_t d = f.nvars();
    if (f.degree() != 3) throw Error(ErrorKind::Range, "polar candidates are implemented for cubics only");
    if (d != 4) throw Error(ErrorKind::Range, "the rank-2 polar locus is finite only for d = 4");
    std::vector<QMat> grams;
    for (std::size_t i = 0; i < d; ++i) {
        SparsePoly di = derivative(f, i);
        grams.push_back(di.is_zero() ? QMat(d, d) : quadric_gram(di));
    }
    auto entry = [&](std::size_t r, std::size_t c) {
        SparsePoly p(d);
        for (std::size_t i = 0; i < d; ++i) {
            if (grams[i](r, c) == 0) continue;
            Exponent e(d, 0);
            e[i] = 1;
            p.add_term(e, grams[i](r, c));
        }
        return p;
    };
    std::vector<SparsePoly> minors;
    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            for (std::size_t c = b + 1; c < d; ++c) triples.push_back({a, b, c});
    for (std::size_t x = 0; x < triples.size(); ++x)
        for (std::size_t y = x; y < triples.size(); ++y) {
            std::vector<std::vector<SparsePoly>> M(3);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) M[r].push_back(entry(triples[x][r], triples[y][c]));
            SparsePoly m = poly_determinant(M);
            if (!m.is_zero()) minors.push_back(std::move(m));
        }
    if (minors.empty()) throw Error(ErrorKind::Domain, "every polar quadric already has rank <= 2");
    Rng rng(derive_seed(seed, 0));
    std::vector<SparsePoly> eqs;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        SparsePoly e(d);
        for (const auto& m : minors) e = e + m * rng.small_rational();
        eqs.push_back(std::move(e));
    }
    SolutionSet sol = solve_total_degree(make_projective_system(std::move(eqs)), derive_seed(seed, 1), cfg);
    std::vector<std::vector<double>> out;
    for (const auto& p : sol.points) {
        if (p.failed || !p.real) continue;
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) M += p.x(static_cast<Eigen::Index>(i)).real() * to_eigen(grams[i]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        const auto& s = svd.singularValues();
        if (s(0) == 0 || s(2) > 1e-8 * s(0)) continue;
        std::vector<double> a(d);
        for (std::size_t i = 0; i < d; ++i) a[i] = p.x(static_cast<Eigen::Index>(i)).real();
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace hypex
