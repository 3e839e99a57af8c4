#include "hypex/gradmap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include "hypex/error.hpp"

namespace hypex {

namespace {

Eigen::MatrixXd to_eigen(const QMat& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
    return out;
}

double max_abs_coeff(const SparsePoly& f) {
    double m = 0;
    for (const auto& [e, c] : f.terms()) m = std::max(m, std::abs(c.get_d()));
    return m;
}

}  // namespace

std::vector<double> gradient_map(const HyperbolicFamily& fam, const std::vector<double>& theta) {
    const std::size_t d = fam.dim();
    if (theta.size() != d) throw Error(ErrorKind::Dimension, "theta has wrong length");
    CompiledPoly f(fam.f);
    double v;
    Eigen::VectorXd g(static_cast<Eigen::Index>(d));
    f.value_grad(theta.data(), v, g.data());
    const double scale = max_abs_coeff(fam.f) * std::pow(Eigen::Map<const Eigen::VectorXd>(theta.data(), g.size()).cwiseAbs().maxCoeff(), fam.degree());
    if (!(std::abs(v) > 1e-14 * scale)) throw Error(ErrorKind::Domain, "theta lies on the hypersurface f = 0");
    Eigen::VectorXd F = to_eigen(fam.S).ldlt().solve(g) / v;
    return {F.data(), F.data() + F.size()};
}

QVec gradient_map_exact(const HyperbolicFamily& fam, const QVec& theta) {
    const Rational v = eval_exact(fam.f, theta);
    if (v == 0) throw Error(ErrorKind::Domain, "theta lies on the hypersurface f = 0");
    QVec g;
    for (const auto& gi : gradient(fam.f)) g.push_back(gi.is_zero() ? Rational(0) : eval_exact(gi, theta) / v);
    return inverse(fam.S) * g;
}

LocusPredicate gradient_vanishes(const SparsePoly& f, const Eigen::MatrixXd& B, double tol) {
    auto cp = std::make_shared<CompiledPoly>(f);
    const double scale = max_abs_coeff(f);
    return [cp, B, scale, tol](const CVec& u) {
        CVec theta = B.cast<std::complex<double>>() * u;
        const double nt = theta.cwiseAbs().maxCoeff();
        if (nt == 0) return true;
        theta /= nt;
        std::complex<double> v;
        CVec g(theta.size());
        cp->value_grad(theta.data(), v, g.data());
        return g.cwiseAbs().maxCoeff() <= tol * scale;
    };
}

FiberResult fiber_solve(const HyperbolicFamily& fam, const QVec& sigma, std::uint64_t seed, const TrackerConfig& cfg) {
    const std::size_t d = fam.dim();
    if (sigma.size() != d) throw Error(ErrorKind::Dimension, "sigma has wrong length");
    QVec c = fam.S * sigma;
    if (std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; }))
        throw Error(ErrorKind::Domain, "sigma must be nonzero");
    const QMat W0 = nullspace(QMat::from_rows({c}));
    const QMat I = QMat::identity(d);
    const auto pred = gradient_vanishes(fam.f, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));

    auto run = [&](std::uint64_t s) {
        Rng rng(derive_seed(s, 0));
        QMat W = rng.small_rational_matrix(d - 1, d - 1) * W0;
        SquareSystem sys{std::make_shared<GradientSliceSystem>(fam.f, W, I), false};
        return solve_total_degree(sys, derive_seed(s, 1), cfg, pred);
    };

    FiberResult out;
    out.seed = seed;
    out.solutions = run(seed);
    out.complex_count = out.solutions.finite_count();
    out.recount = run(derive_seed(seed, 2)).finite_count();
    out.stable = out.recount == out.complex_count;

    std::vector<double> sd = to_doubles(sigma);
    const double ss = std::inner_product(sd.begin(), sd.end(), sd.begin(), 0.0);
    for (const auto& p : out.solutions.points) {
        if (!p.counted() || !p.real) continue;
        ++out.real_count;
        std::vector<double> theta(d);
        for (std::size_t i = 0; i < d; ++i) theta[i] = p.x(static_cast<Eigen::Index>(i)).real();
        std::vector<double> F;
        try {
            F = gradient_map(fam, theta);
        } catch (const Error&) {
            continue;
        }
        const double mu = std::inner_product(F.begin(), F.end(), sd.begin(), 0.0) / ss;
        for (auto& t : theta) t *= mu;
        if (cone_contains(fam, theta).status == ConeStatus::Interior) {
            ++out.in_cone;
            out.cone_points.push_back(theta);
        }
    }
    return out;
}

MLEResult mle(const HyperbolicFamily& fam, const std::vector<double>& sigma_hat, double tol, int max_iter) {
    const std::size_t d = fam.dim();
    if (sigma_hat.size() != d) throw Error(ErrorKind::Dimension, "sigma has wrong length");
    const Eigen::VectorXd s = to_eigen(fam.S) * Eigen::Map<const Eigen::VectorXd>(sigma_hat.data(), static_cast<Eigen::Index>(d));
    std::vector<double> tau = to_doubles(fam.tau);
    const double pair = Eigen::Map<const Eigen::VectorXd>(tau.data(), static_cast<Eigen::Index>(d)).dot(s) * fam.sign();
    if (!(pair > 0)) throw Error(ErrorKind::NotExist, "MLE does not exist: sufficient statistic is outside the dual cone");
    // at the optimum <theta, sigma> equals deg f
    for (auto& t : tau) t *= fam.sign() * static_cast<double>(fam.degree()) / pair;
    return mle_from(fam, sigma_hat, tau, tol, max_iter);
}

MLEResult mle_from(const HyperbolicFamily& fam, const std::vector<double>& sigma_hat, std::vector<double> start, double tol,
                   int max_iter) {
    const auto d = static_cast<Eigen::Index>(fam.dim());
    if (static_cast<Eigen::Index>(sigma_hat.size()) != d || static_cast<Eigen::Index>(start.size()) != d)
        throw Error(ErrorKind::Dimension, "vector has wrong length");
    if (cone_contains(fam, start).status != ConeStatus::Interior) throw Error(ErrorKind::Domain, "start point is not interior");
    const Eigen::MatrixXd S = to_eigen(fam.S);
    const Eigen::LDLT<Eigen::MatrixXd> Sf(S);
    const Eigen::VectorXd sh = Eigen::Map<const Eigen::VectorXd>(sigma_hat.data(), d);
    const Eigen::VectorXd s = S * sh;
    CompiledPoly f(fam.f);
    Eigen::VectorXd theta = Eigen::Map<const Eigen::VectorXd>(start.data(), d);
    const double orient = f.value(theta.data()) > 0 ? 1.0 : -1.0;

    auto psi = [&](const Eigen::VectorXd& th, bool& ok) {
        double v = orient * f.value(th.data());
        ok = v > 0;
        return ok ? th.dot(s) - std::log(v) : 0.0;
    };

    MLEResult out;
    Eigen::VectorXd g(d);
    Eigen::MatrixXd H(d, d);
    for (int it = 0; it < max_iter; ++it) {
        double v;
        f.value_grad_hess(theta.data(), v, g.data(), H.data());
        v *= orient;
        g *= orient;
        H *= orient;
        Eigen::VectorXd F = Sf.solve(g) / v;
        out.residual = (F - sh).norm();
        out.iterations = it;
        if (out.residual <= tol) {
            out.theta_hat.assign(theta.data(), theta.data() + d);
            return out;
        }
        Eigen::VectorXd grad = s - g / v;
        Eigen::MatrixXd hess = g * g.transpose() / (v * v) - H / v;
        Eigen::VectorXd step_dir = -hess.ldlt().solve(grad);
        if (!step_dir.allFinite()) throw Error(ErrorKind::Convergence, "MLE: singular Hessian");
        const double lam = std::sqrt(std::max(0.0, -grad.dot(step_dir)));
        out.newton_decrements.push_back(lam);
        double step = lam > 0.25 ? 1.0 / (1.0 + lam) : 1.0;
        bool ok;
        const double psi0 = psi(theta, ok);
        const double slope = grad.dot(step_dir);
        bool accepted = false;
        while (step > 1e-14) {
            Eigen::VectorXd trial = theta + step * step_dir;
            const double pt = psi(trial, ok);
            const bool descent = lam < 1e-6 || pt <= psi0 + 1e-4 * step * slope + 1e-13 * std::abs(psi0);
            if (ok && descent &&
                cone_contains(fam, std::vector<double>(trial.data(), trial.data() + d)).status == ConeStatus::Interior) {
                theta = trial;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || theta.norm() > 1e12) break;
    }
    throw Error(ErrorKind::NotExist, "MLE does not exist: Newton iterates diverge (residual " + std::to_string(out.residual) + ")");
}

std::vector<CurveRow> central_path_trace(const HyperbolicFamily& fam, const QMat& L, int n, std::uint64_t seed) {
    const std::size_t d = fam.dim();
    if (L.rows() != 2 || L.cols() != d) throw Error(ErrorKind::Dimension, "central path needs a 2 x d subspace");
    if (n < 2) throw Error(ErrorKind::Range, "need at least 2 samples");
    const QMat Lt = L.transpose();
    Rng rng(seed);
    std::vector<QVec> cands = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int k = 0; k < 200; ++k) cands.push_back({rng.small_rational(20, 5), rng.small_rational(20, 5)});
    std::optional<QVec> ua;
    for (const auto& u : cands)
        if (cone_contains(fam, Lt * u).status == ConeStatus::Interior) {
            ua = u;
            break;
        }
    if (!ua) throw Error(ErrorKind::Domain, "the subspace does not meet the hyperbolicity cone");
    const QVec a = Lt * *ua;
    std::vector<QVec> dirs = {{-(*ua)[1], (*ua)[0]}};
    for (int k = 0; k < 50; ++k) dirs.push_back({rng.small_rational(20, 5), rng.small_rational(20, 5)});
    for (const auto& w : dirs) {
        const QVec b = Lt * w;
        if (rank(QMat::from_rows({a, b})) < 2) continue;
        auto roots = real_roots(restrict_to_line(fam.f, a, b));
        double lo = -INFINITY, hi = INFINITY;
        for (double r : roots) {
            if (r < 0) lo = std::max(lo, r);
            if (r > 0) hi = std::min(hi, r);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        const std::vector<double> ad = to_doubles(a), bd = to_doubles(b);
        std::vector<CurveRow> rows;
        for (int i = n - 1; i >= 0; --i) {
            CurveRow row;
            row.t = mid + half * std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
            row.theta.resize(d);
            for (std::size_t j = 0; j < d; ++j) row.theta[j] = ad[j] + row.t * bd[j];
            row.sigma = gradient_map(fam, row.theta);
            rows.push_back(std::move(row));
        }
        return rows;
    }
    throw Error(ErrorKind::Domain, "could not bound the segment of L inside the cone");
}

}  // namespace hypex
