#include "hypex/hyperbolicity.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "hypex/error.hpp"

namespace hypex {

HyperbolicFamily HyperbolicFamily::make(SparsePoly f, QVec tau, QMat S) {
    const std::size_t d = f.nvars();
    if (f.is_zero()) throw Error(ErrorKind::EmptyInput, "zero polynomial");
    if (tau.size() != d) throw Error(ErrorKind::Dimension, "tau has length " + std::to_string(tau.size()) + ", expected " + std::to_string(d));
    if (S.rows() == 0) S = QMat::identity(d);
    if (S.rows() != d || S.cols() != d) throw Error(ErrorKind::Dimension, "pairing matrix must be d x d");
    if (!S.is_symmetric() || !leading_minors_positive(S)) throw Error(ErrorKind::Domain, "pairing matrix must be symmetric positive definite");
    if (eval_exact(f, tau) == 0) throw Error(ErrorKind::Domain, "f vanishes at tau");
    return HyperbolicFamily{std::move(f), std::move(tau), std::move(S), {}};
}

int HyperbolicFamily::sign() const { return sgn(eval_exact(f, tau)); }

HyperbolicFamily family_from_spec(const PolySpec& spec) { return HyperbolicFamily::make(spec.f, spec.tau, spec.S); }

UniPoly restrict_to_line(const SparsePoly& f, const QVec& theta, const QVec& dir) {
    if (theta.size() != f.nvars() || dir.size() != f.nvars()) throw Error(ErrorKind::Dimension, "point has wrong length");
    const unsigned p = f.degree();
    // Newton interpolation through t = 0..p
    std::vector<Rational> c(p + 1);
    QVec x(theta.size());
    for (unsigned k = 0; k <= p; ++k) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = theta[i] + Rational(k) * dir[i];
        c[k] = eval_exact(f, x);
    }
    for (unsigned j = 1; j <= p; ++j)
        for (unsigned k = p; k >= j; --k) c[k] = (c[k] - c[k - 1]) / Rational(j);
    UniPoly P(QVec{c[p]});
    for (int j = static_cast<int>(p) - 1; j >= 0; --j) P = P * UniPoly(QVec{Rational(-j), Rational(1)}) + UniPoly(QVec{c[static_cast<unsigned>(j)]});
    return P;
}

Certification certify_hyperbolic(const SparsePoly& f, const QVec& tau, int trials, std::uint64_t seed) {
    if (eval_exact(f, tau) == 0) throw Error(ErrorKind::Domain, "f vanishes at tau");
    Certification cert;
    cert.seed = seed;
    Rng rng(seed);
    for (int k = 0; k < trials; ++k) {
        QVec theta(f.nvars());
        for (auto& t : theta) t = rng.small_rational(20, 7);
        cert.trials = k + 1;
        if (!is_real_rooted(restrict_to_line(f, theta, tau))) {
            cert.refuted = true;
            cert.witness = theta;
            return cert;
        }
    }
    cert.certified = true;
    return cert;
}

const char* to_string(ConeStatus s) {
    switch (s) {
        case ConeStatus::Interior: return "interior";
        case ConeStatus::Boundary: return "boundary";
        case ConeStatus::Exterior: return "exterior";
    }
    return "?";
}

ConeDecision cone_contains(const HyperbolicFamily& fam, const QVec& theta) {
    UniPoly g = restrict_to_line(fam.f, theta, fam.tau);
    ConeDecision d;
    d.roots_nonneg = roots_in_closed_ray_nonneg(g);
    if (d.roots_nonneg == 0)
        d.status = ConeStatus::Interior;
    else if (d.roots_nonneg == 1 && g.coeff(0) == 0)
        d.status = ConeStatus::Boundary;
    else
        d.status = ConeStatus::Exterior;
    return d;
}

ConeDecision cone_contains(const HyperbolicFamily& fam, const std::vector<double>& theta) {
    for (double v : theta)
        if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "non-finite coordinate");
    return cone_contains(fam, from_doubles(theta));
}

ConeDecision dual_cone_margin(const HyperbolicFamily& fam, const std::vector<double>& sigma, double tol) {
    const auto d = static_cast<Eigen::Index>(fam.dim());
    if (static_cast<Eigen::Index>(sigma.size()) != d) throw Error(ErrorKind::Dimension, "sigma has wrong length");
    ConeDecision out;
    out.tol = tol;
    Eigen::MatrixXd S(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) S(i, j) = fam.S(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    Eigen::VectorXd c = S * Eigen::Map<const Eigen::VectorXd>(sigma.data(), d);
    if (c.norm() == 0) {
        out.status = ConeStatus::Boundary;
        return out;
    }
    c /= c.norm();

    CompiledPoly f(fam.f);
    const double sgn_f = fam.sign();
    const double p = fam.degree();
    Eigen::VectorXd tau(d);
    for (Eigen::Index i = 0; i < d; ++i) tau(i) = fam.tau[static_cast<std::size_t>(i)].get_d();
    Eigen::VectorXd g(d);
    Eigen::MatrixXd H(d, d);
    double v;
    f.value_grad(tau.data(), v, g.data());
    // slice a.theta = 1 through tau; a is a multiple of grad f(tau), an interior point of the dual
    Eigen::VectorXd a = g / g.dot(tau);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd N = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    N = N.rightCols(d - 1).eval();

    Eigen::VectorXd z = Eigen::VectorXd::Zero(d - 1);
    auto theta_of = [&](const Eigen::VectorXd& zz) -> Eigen::VectorXd { return tau + N * zz; };
    auto phi = [&](const Eigen::VectorXd& zz, double t, bool& ok) {
        Eigen::VectorXd th = theta_of(zz);
        double fv = sgn_f * f.value(th.data());
        ok = fv > 0;
        return ok ? t * c.dot(th) - std::log(fv) : 0.0;
    };

    double t = 1.0;
    for (int outer = 0; outer < 80; ++outer) {
        // centering by damped Newton
        for (int it = 0; it < 200; ++it) {
            ++out.iterations;
            Eigen::VectorXd th = theta_of(z);
            f.value_grad_hess(th.data(), v, g.data(), H.data());
            v *= sgn_f;
            g *= sgn_f;
            H *= sgn_f;
            Eigen::VectorXd grad = N.transpose() * (t * c - g / v);
            Eigen::MatrixXd hess = N.transpose() * (g * g.transpose() / (v * v) - H / v) * N;
            Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
            Eigen::VectorXd dz = -ldlt.solve(grad);
            if (!dz.allFinite()) throw Error(ErrorKind::Convergence, "dual margin: singular barrier Hessian");
            const double lam2 = -grad.dot(dz);
            if (lam2 < 1e-18 || (d == 1)) break;
            double step = 1.0 / (1.0 + std::sqrt(std::max(lam2, 0.0)));
            bool ok;
            const double phi0 = phi(z, t, ok);
            for (int bt = 0; bt < 60; ++bt) {
                Eigen::VectorXd zn = z + step * dz;
                double pn = phi(zn, t, ok);
                if (ok && pn <= phi0 + 1e-12 * std::abs(phi0)) {
                    z = zn;
                    break;
                }
                step *= 0.5;
            }
            if (lam2 < 1e-14) break;
        }
        const double m = c.dot(theta_of(z));
        out.margin = m;
        if (m < -tol) {
            out.status = ConeStatus::Exterior;
            return out;
        }
        if (m - p / t > tol) {
            out.status = ConeStatus::Interior;
            return out;
        }
        if (p / t < 1e-3 * tol) {
            out.status = ConeStatus::Boundary;
            return out;
        }
        t *= 8.0;
    }
    throw Error(ErrorKind::Convergence, "dual margin did not converge; best margin " + std::to_string(out.margin));
}

}  // namespace hypex
