#include "hypex/homotopy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "hypex/error.hpp"

namespace hypex {

// ---------------------------------------------------------------- systems

ExplicitSystem::ExplicitSystem(std::vector<SparsePoly> polys) {
    if (polys.empty()) {
        nvars_ = 1;
        return;
    }
    nvars_ = polys.front().nvars();
    if (polys.size() + 1 != nvars_)
        throw Error(ErrorKind::Dimension, "projective system needs n equations in n+1 variables");
    for (const auto& p : polys) {
        if (p.nvars() != nvars_) throw Error(ErrorKind::Dimension, "equations use different variable counts");
        if (p.is_zero()) throw Error(ErrorKind::Domain, "equation is identically zero");
        degrees_.push_back(p.degree());
        polys_.emplace_back(p);
    }
}

template <class V, class M>
void ExplicitSystem::eval_impl(const V& x, V& f, M& J) const {
    using T = typename V::Scalar;
    const std::size_t n = polys_.size();
    f.resize(static_cast<Eigen::Index>(n));
    J.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nvars_));
    std::vector<T> g(nvars_);
    for (std::size_t k = 0; k < n; ++k) {
        T v;
        polys_[k].value_grad(x.data(), v, g.data());
        f(static_cast<Eigen::Index>(k)) = v;
        for (std::size_t j = 0; j < nvars_; ++j) J(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = g[j];
    }
}

void ExplicitSystem::evaluate(const CVec& x, CVec& f, CMat& J) const { eval_impl(x, f, J); }
void ExplicitSystem::evaluate(const CVecL& x, CVecL& f, CMatL& J) const { eval_impl(x, f, J); }

GradientSliceSystem::GradientSliceSystem(const SparsePoly& f, const QMat& W, const QMat& B) : f_(f) {
    if (W.cols() != f.nvars() || B.rows() != f.nvars())
        throw Error(ErrorKind::Dimension, "gradient slice: W must be n x d and B d x (n+1)");
    if (W.rows() + 1 != B.cols())
        throw Error(ErrorKind::Dimension, "gradient slice: need n equations for n+1 unknowns");
    if (f.degree() < 2) throw Error(ErrorKind::Range, "gradient slice needs deg f >= 2");
    W_.resize(static_cast<Eigen::Index>(W.rows()), static_cast<Eigen::Index>(W.cols()));
    B_.resize(static_cast<Eigen::Index>(B.rows()), static_cast<Eigen::Index>(B.cols()));
    Wl_.resize(W_.rows(), W_.cols());
    Bl_.resize(B_.rows(), B_.cols());
    for (std::size_t i = 0; i < W.rows(); ++i)
        for (std::size_t j = 0; j < W.cols(); ++j) {
            W_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = W(i, j).get_d();
            Wl_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<long double>(W(i, j).get_num().get_d()) / static_cast<long double>(W(i, j).get_den().get_d());
        }
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            B_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = B(i, j).get_d();
            Bl_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<long double>(B(i, j).get_num().get_d()) / static_cast<long double>(B(i, j).get_den().get_d());
        }
}

std::vector<unsigned> GradientSliceSystem::degrees() const {
    return std::vector<unsigned>(static_cast<std::size_t>(W_.rows()), f_.degree() - 1);
}

template <class V, class M>
void GradientSliceSystem::eval_impl(const V& x, V& f, M& J) const {
    using T = typename V::Scalar;
    using R = typename T::value_type;
    const auto& W = [&]() -> const auto& {
        if constexpr (std::is_same_v<R, double>) return W_; else return Wl_;
    }();
    const auto& B = [&]() -> const auto& {
        if constexpr (std::is_same_v<R, double>) return B_; else return Bl_;
    }();
    const Eigen::Index d = B.rows();
    V theta = B.template cast<T>() * x;
    V g(d);
    Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> H(d, d);
    T v;
    f_.value_grad_hess(theta.data(), v, g.data(), H.data());
    f = W.template cast<T>() * g;
    J = W.template cast<T>() * H * B.template cast<T>();
}

void GradientSliceSystem::evaluate(const CVec& x, CVec& f, CMat& J) const { eval_impl(x, f, J); }
void GradientSliceSystem::evaluate(const CVecL& x, CVecL& f, CMatL& J) const { eval_impl(x, f, J); }

SquareSystem make_projective_system(std::vector<SparsePoly> polys) {
    return SquareSystem{std::make_shared<ExplicitSystem>(std::move(polys)), false};
}

SquareSystem make_affine_system(const std::vector<std::vector<RawTerm>>& polys, std::size_t nvars) {
    if (polys.size() != nvars) throw Error(ErrorKind::Dimension, "affine system must be square");
    std::vector<SparsePoly> hom;
    for (const auto& terms : polys) {
        unsigned D = 0;
        for (const auto& t : terms) {
            if (t.exps.size() != nvars) throw Error(ErrorKind::Dimension, "term has wrong number of exponents");
            D = std::max(D, std::accumulate(t.exps.begin(), t.exps.end(), 0u));
        }
        SparsePoly p(nvars + 1);
        for (const auto& t : terms) {
            Exponent e(nvars + 1);
            e[0] = D - std::accumulate(t.exps.begin(), t.exps.end(), 0u);
            std::copy(t.exps.begin(), t.exps.end(), e.begin() + 1);
            p.add_term(e, t.coeff);
        }
        if (p.is_zero()) throw Error(ErrorKind::Domain, "equation is identically zero");
        hom.push_back(std::move(p));
    }
    if (hom.empty()) return SquareSystem{std::make_shared<ExplicitSystem>(std::vector<SparsePoly>{}), true};
    return SquareSystem{std::make_shared<ExplicitSystem>(std::move(hom)), true};
}

// ---------------------------------------------------------------- helpers

CVec normalize_projective(const CVec& x) {
    Eigen::Index k = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x(i)) > best * (1 + 1e-12)) {
            best = std::abs(x(i));
            k = i;
        }
    if (best <= 0) return x;
    return x / x(k);
}

double projective_distance(const CVec& a, const CVec& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0) return 1.0;
    CVec ua = a / na, ub = b / nb;
    std::complex<double> ip = ub.dot(ua);  // conj(ub) . ua
    if (std::abs(ip) > 0) ub *= ip / std::abs(ip);
    return (ua - ub).norm();
}

namespace {

template <class V, class M>
double scaled_residual(const V& f, const M& J) {
    double r = 0;
    for (Eigen::Index k = 0; k < f.size(); ++k) {
        double scale = std::max<double>(1.0, static_cast<double>(J.row(k).norm()));
        r = std::max(r, static_cast<double>(std::abs(f(k))) / scale);
    }
    return r;
}

}  // namespace

double residual_of(const PolySystem& sys, const CVec& x) {
    CVec xn = x / x.cwiseAbs().maxCoeff();
    CVec f;
    CMat J;
    sys.evaluate(xn, f, J);
    return scaled_residual(f, J);
}

RefineResult refine_point(const PolySystem& sys, const CVec& x0, double tol, int max_iter) {
    RefineResult out;
    const Eigen::Index N = x0.size();
    CVec x = x0 / x0.norm();
    const CVec patch = x.conjugate();  // patch: patch^T x = 1
    CVec f;
    CMat J;
    CMat A(N, N);
    CVec rhs(N);
    double last = 1e300;
    for (int it = 0; it < max_iter; ++it) {
        sys.evaluate(x, f, J);
        A.topRows(N - 1) = J;
        A.row(N - 1) = patch.transpose();
        rhs.head(N - 1) = -f;
        rhs(N - 1) = 1.0 - std::complex<double>((patch.transpose() * x)(0));
        CVec dx = A.partialPivLu().solve(rhs);
        if (!dx.allFinite()) break;
        x += dx;
        double step = dx.norm() / std::max(1.0, x.norm());
        if (step < 1e-15 || (step > 0.5 * last && step < 1e-10)) {
            last = step;
            break;
        }
        last = step;
    }
    // rcond of the row-normalized Jacobian bordered by the patch direction
    sys.evaluate(x, f, J);
    CMat Ab(N, N);
    for (Eigen::Index k = 0; k + 1 < N; ++k) {
        double nr = J.row(k).norm();
        Ab.row(k) = J.row(k);
        if (nr > 0) Ab.row(k) /= nr;
    }
    Ab.row(N - 1) = (x / x.norm()).adjoint();
    Eigen::JacobiSVD<CMat> svd(Ab);
    const auto& s = svd.singularValues();
    out.rcond = s(0) > 0 ? s(s.size() - 1) / s(0) : 0.0;
    out.residual = residual_of(sys, x);
    if (out.residual > tol && out.rcond > 1e-12) {
        // extended precision polish
        CVecL xl = x.cast<cld>();
        const CVecL pl = x.conjugate().cast<cld>();
        const cld target = (pl.transpose() * xl)(0);
        CVecL fl;
        CMatL Jl;
        CMatL Al(N, N);
        CVecL rl(N);
        for (int it = 0; it < 4; ++it) {
            sys.evaluate(xl, fl, Jl);
            Al.topRows(N - 1) = Jl;
            Al.row(N - 1) = pl.transpose();
            rl.head(N - 1) = -fl;
            rl(N - 1) = target - (pl.transpose() * xl)(0);
            xl += Al.partialPivLu().solve(rl);
        }
        CVecL xn = xl / xl.cwiseAbs().maxCoeff();
        sys.evaluate(xn, fl, Jl);
        out.residual = scaled_residual(fl, Jl);
        x = xl.cast<std::complex<double>>();
    }
    out.x = x;
    out.converged = out.residual <= tol;
    return out;
}

std::size_t SolutionSet::finite_count() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const SolutionPoint& p) { return p.counted(); }));
}

std::size_t SolutionSet::real_count() const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const SolutionPoint& p) { return p.counted() && p.real; }));
}

std::vector<CVec> SolutionSet::finite_points() const {
    std::vector<CVec> out;
    for (const auto& p : points)
        if (p.counted()) out.push_back(p.x);
    return out;
}

// ---------------------------------------------------------------- tracker

namespace {

struct Endpoint {
    CVec x;
    double t = 0;
    bool reached = false;
    bool diverged = false;
    long steps = 0;
};

class Tracker {
public:
    Tracker(const PolySystem& F, const TrackerConfig& cfg, std::complex<double> gamma, CVec patch)
        : F_(F), cfg_(cfg), deg_(F.degrees()), n_(deg_.size()), N_(n_ + 1), gamma_(gamma), r_(std::move(patch)) {}

    CVec start_point(std::size_t index) const {
        CVec x(static_cast<Eigen::Index>(N_));
        x(0) = 1.0;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t j = index % deg_[k];
            index /= deg_[k];
            double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(deg_[k]);
            x(static_cast<Eigen::Index>(k + 1)) = std::polar(1.0, a);
        }
        return x / std::complex<double>((r_.transpose() * x)(0));
    }

    Endpoint track(CVec x, double max_step, double pred_tol) const {
        Endpoint ep;
        double t = 0.0, h = std::min(0.01, max_step);
        int successes = 0;
        CVec xp, xc;
        while (t < 1.0) {
            if (++ep.steps > cfg_.max_steps) break;
            const bool last = h >= 1.0 - t;
            if (last) h = 1.0 - t;
            const double t1 = last ? 1.0 : t + h;
            bool ok = rk4(x, t, h, xp) && correct(xp, t1, pred_tol, xc);
            if (ok) {
                x = xc;
                t = t1;
                if (x.norm() > cfg_.divergence_norm) {
                    ep.diverged = true;
                    break;
                }
                if (++successes >= 3) {
                    h = std::min(2.0 * h, max_step);
                    successes = 0;
                }
            } else {
                h *= 0.5;
                successes = 0;
                if (h < cfg_.min_step) break;
            }
        }
        ep.x = x;
        ep.t = t;
        ep.reached = t >= 1.0;
        return ep;
    }

private:
    void homotopy(const CVec& x, double t, CVec& H, CMat& Hx, CVec* Ht) const {
        CVec f;
        CMat Jf;
        F_.evaluate(x, f, Jf);
        CVec g(static_cast<Eigen::Index>(n_));
        CMat Jg = CMat::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(N_));
        for (std::size_t k = 0; k < n_; ++k) {
            const auto K = static_cast<Eigen::Index>(k);
            const int d = static_cast<int>(deg_[k]);
            std::complex<double> a = std::pow(x(K + 1), d - 1), b = std::pow(x(0), d - 1);
            g(K) = a * x(K + 1) - b * x(0);
            Jg(K, K + 1) = static_cast<double>(d) * a;
            Jg(K, 0) = -static_cast<double>(d) * b;
        }
        const auto n = static_cast<Eigen::Index>(n_), N = static_cast<Eigen::Index>(N_);
        H.resize(N);
        Hx.resize(N, N);
        H.head(n) = (1.0 - t) * gamma_ * g + t * f;
        H(n) = std::complex<double>((r_.transpose() * x)(0)) - 1.0;
        Hx.topRows(n) = (1.0 - t) * gamma_ * Jg + t * Jf;
        Hx.row(n) = r_.transpose();
        if (Ht) {
            Ht->resize(N);
            Ht->head(n) = f - gamma_ * g;
            (*Ht)(n) = 0.0;
        }
    }

    bool tangent(const CVec& x, double t, CVec& dx) const {
        CVec H, Ht;
        CMat Hx;
        homotopy(x, t, H, Hx, &Ht);
        dx = Hx.partialPivLu().solve(-Ht);
        return dx.allFinite();
    }

    bool rk4(const CVec& x, double t, double h, CVec& out) const {
        CVec k1, k2, k3, k4;
        if (!tangent(x, t, k1)) return false;
        if (!tangent(x + 0.5 * h * k1, t + 0.5 * h, k2)) return false;
        if (!tangent(x + 0.5 * h * k2, t + 0.5 * h, k3)) return false;
        if (!tangent(x + h * k3, t + h, k4)) return false;
        out = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        return out.allFinite();
    }

    bool correct(const CVec& x0, double t, double pred_tol, CVec& x) const {
        x = x0;
        CVec H;
        CMat Hx;
        double prev = 0;
        for (int it = 0; it < 3; ++it) {
            homotopy(x, t, H, Hx, nullptr);
            CVec dx = Hx.partialPivLu().solve(-H);
            if (!dx.allFinite()) return false;
            x += dx;
            const double rel = dx.norm() / std::max(1.0, x.norm());
            if (it == 0 && rel > pred_tol) return false;
            // stagnation below 1e-9 is roundoff near ill-conditioned points, not divergence
            if (it > 0 && rel > 0.5 * prev && rel > 1e-9) return false;
            prev = rel;
            if (rel < 1e-11) return true;
        }
        return prev < 1e-8;
    }

    const PolySystem& F_;
    const TrackerConfig& cfg_;
    std::vector<unsigned> deg_;
    std::size_t n_, N_;
    std::complex<double> gamma_;
    CVec r_;
};

struct Classified {
    CVec x;  // normalized
    bool regular = false;
    bool failed = false;
    bool at_infinity = false;
    double residual = 0;
    double rcond = 0;
};

Classified classify(const PolySystem& F, const Endpoint& ep, const TrackerConfig& cfg, bool affine) {
    Classified c;
    if (ep.diverged) {
        c.x = normalize_projective(ep.x);
        c.at_infinity = true;
        return c;
    }
    RefineResult rr = refine_point(F, ep.x, cfg.refine_tol);
    c.x = normalize_projective(rr.x);
    c.residual = rr.residual;
    c.rcond = rr.rcond;
    c.failed = !ep.reached && ep.t < 0.99;
    c.regular = !c.failed && rr.converged && rr.rcond >= cfg.rcond_tol;
    if (affine && std::abs(c.x(0)) < cfg.infinity_tol) c.at_infinity = true;
    return c;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

bool lex_less(const CVec& a, const CVec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return false;
}

// Groups indices whose points lie within tol; returns groups in sorted order.
std::vector<std::vector<std::size_t>> cluster(const std::vector<Classified>& pts, const std::vector<std::size_t>& idx, double tol) {
    std::vector<std::size_t> order = idx;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (lex_less(pts[a].x, pts[b].x)) return true;
        if (lex_less(pts[b].x, pts[a].x)) return false;
        return a < b;
    });
    std::vector<std::size_t> parent(order.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            if (projective_distance(pts[order[i]].x, pts[order[j]].x) <= tol) {
                std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<long> slot(order.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[root])].push_back(order[i]);
    }
    return groups;
}

}  // namespace

SolutionSet solve_total_degree(const SquareSystem& sys, std::uint64_t seed, const TrackerConfig& cfg,
                               const LocusPredicate& singular_locus) {
    if (!sys.system) throw Error(ErrorKind::Domain, "no system given");
    const PolySystem& F = *sys.system;
    const auto deg = F.degrees();
    SolutionSet out;
    out.seed = seed;
    const std::size_t N = F.num_vars();
    if (deg.size() + 1 != N) throw Error(ErrorKind::Dimension, "system is not square");

    if (deg.empty()) {
        SolutionPoint p;
        p.x = CVec::Ones(1);
        p.real = true;
        p.finite = !sys.affine || true;
        out.points.push_back(p);
        out.total_degree = 1;
        out.stats.paths = 1;
        out.stats.reached_end = 1;
        if (singular_locus) out.points[0].singular_locus = singular_locus(p.x);
        return out;
    }

    std::size_t total = 1;
    for (unsigned d : deg) {
        if (d == 0) throw Error(ErrorKind::Domain, "equation of degree 0");
        if (total > cfg.max_paths / d + 1) throw Error(ErrorKind::Budget, "path budget exceeded");
        total *= d;
    }
    if (total > cfg.max_paths)
        throw Error(ErrorKind::Budget, "path budget exceeded: " + std::to_string(total) + " > " + std::to_string(cfg.max_paths));
    out.total_degree = total;
    out.stats.paths = total;

    Rng rng(seed);
    const std::complex<double> gamma = rng.unit_complex();
    CVec patch(static_cast<Eigen::Index>(N));
    for (Eigen::Index i = 0; i < patch.size(); ++i) patch(i) = {rng.normal(), rng.normal()};

    Tracker tracker(F, cfg, gamma, patch);
    std::vector<Endpoint> ends(total);
    std::vector<Classified> cls(total);
    parallel_for(total, cfg.threads, [&](std::size_t i) {
        ends[i] = tracker.track(tracker.start_point(i), cfg.max_step, cfg.predictor_tol);
        cls[i] = classify(F, ends[i], cfg, sys.affine);
    });

    auto regular_indices = [&] {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < total; ++i)
            if (cls[i].regular && !cls[i].at_infinity) r.push_back(i);
        return r;
    };

    // Retrack paths that collided on a regular endpoint or failed early.
    double max_step = cfg.max_step, pred_tol = cfg.predictor_tol;
    for (int round = 0; round < cfg.retrack_rounds; ++round) {
        std::vector<std::size_t> redo;
        for (const auto& g : cluster(cls, regular_indices(), cfg.cluster_tol))
            if (g.size() > 1) redo.insert(redo.end(), g.begin(), g.end());
        for (std::size_t i = 0; i < total; ++i)
            if (cls[i].failed) redo.push_back(i);
        if (redo.empty()) break;
        std::sort(redo.begin(), redo.end());
        redo.erase(std::unique(redo.begin(), redo.end()), redo.end());
        max_step /= 8.0;
        pred_tol /= 100.0;
        out.stats.retracked += redo.size();
        parallel_for(redo.size(), cfg.threads, [&](std::size_t k) {
            std::size_t i = redo[k];
            ends[i] = tracker.track(tracker.start_point(i), max_step, pred_tol);
            cls[i] = classify(F, ends[i], cfg, sys.affine);
        });
    }

    // An endpoint refined to roundoff that no other path reaches is a simple root, however
    // badly conditioned; multiple roots always attract several paths.
    for (std::size_t i = 0; i < total; ++i) {
        Classified& c = cls[i];
        if (c.regular || c.failed || c.at_infinity || c.rcond < 1e-13 || c.residual > 1e-3 * cfg.refine_tol) continue;
        bool alone = true;
        for (std::size_t j = 0; j < total && alone; ++j)
            if (j != i && !cls[j].at_infinity && projective_distance(c.x, cls[j].x) <= 1e-4) alone = false;
        c.regular = alone;
    }

    for (const auto& e : ends) {
        out.stats.steps += e.steps;
        if (e.reached) ++out.stats.reached_end;
    }

    std::vector<std::size_t> regular = regular_indices(), other;
    for (std::size_t i = 0; i < total; ++i)
        if (!(cls[i].regular && !cls[i].at_infinity)) other.push_back(i);
    out.stats.failed = static_cast<std::size_t>(std::count_if(cls.begin(), cls.end(), [](const Classified& c) { return c.failed; }));

    auto emit = [&](const std::vector<std::size_t>& g) {
        const Classified& c = cls[g.front()];
        SolutionPoint p;
        p.x = c.x;
        p.at_infinity = c.at_infinity;
        p.finite = !c.at_infinity;
        p.failed = c.failed;
        p.singular = !c.regular && !c.failed && !c.at_infinity;
        p.multiplicity = static_cast<int>(g.size());
        p.residual = c.residual;
        p.rcond = c.rcond;
        p.real = c.x.imag().cwiseAbs().maxCoeff() <= 1e-8;
        if (singular_locus && !p.at_infinity) p.singular_locus = singular_locus(p.x);
        out.points.push_back(std::move(p));
    };
    for (const auto& g : cluster(cls, regular, cfg.cluster_tol)) emit(g);
    for (const auto& g : cluster(cls, other, 1e-4)) emit(g);

    if (static_cast<double>(out.stats.failed) > cfg.max_failed_fraction * static_cast<double>(total))
        throw Error(ErrorKind::Instability, "path tracker failed on " + std::to_string(out.stats.failed) + " of " +
                                                std::to_string(total) + " paths");
    return out;
}

RecountResult recount_with_seed(const SquareSystem& sys, std::uint64_t seed1, std::uint64_t seed2, const TrackerConfig& cfg,
                                const LocusPredicate& singular_locus) {
    RecountResult r;
    r.first = solve_total_degree(sys, seed1, cfg, singular_locus);
    r.second = solve_total_degree(sys, seed2, cfg, singular_locus);
    r.stable = r.first.finite_count() == r.second.finite_count();
    return r;
}

}  // namespace hypex
