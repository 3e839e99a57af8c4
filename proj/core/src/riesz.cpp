#include "hypex/riesz.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hypex/error.hpp"
#include "hypex/polycore.hpp"

namespace hypex {

namespace {

constexpr double pi = std::numbers::pi;

// Regularized upper incomplete gamma Q(k, x) for integer k.
double upper_gamma_q(int k, double x) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < k; ++j) {
        term *= x / j;
        sum += term;
    }
    return std::exp(-x) * sum;
}

void composite_gl(int panels, int nodes, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    std::vector<double> px, pw;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        gauss_legendre(nodes, a + p * h, a + (p + 1) * h, px, pw);
        x.insert(x.end(), px.begin(), px.end());
        w.insert(w.end(), pw.begin(), pw.end());
    }
}

}  // namespace

double log_multigamma(int m, double alpha) {
    if (m < 1) throw Error(ErrorKind::Range, "multigamma needs m >= 1");
    double s = m * (m - 1) / 4.0 * std::log(pi);
    for (int j = 1; j <= m; ++j) {
        const double arg = alpha - (j - 1) / 2.0;
        if (arg <= 0) throw Error(ErrorKind::Domain, "multigamma pole: Gamma argument " + std::to_string(arg) + " <= 0");
        s += std::lgamma(arg);
    }
    return s;
}

double multigamma(int m, double alpha) { return std::exp(log_multigamma(m, alpha)); }

double wishart_kernel(int m, double alpha, const Eigen::MatrixXd& sigma) {
    if (!(alpha > (m - 1) / 2.0)) throw Error(ErrorKind::Range, "wishart kernel needs alpha > (m-1)/2");
    if (sigma.rows() != m || sigma.cols() != m) throw Error(ErrorKind::Dimension, "sigma must be m x m");
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::Domain, "sigma is not positive definite");
    double logdet = 0;
    for (int i = 0; i < m; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    return std::exp((alpha - (m + 1) / 2.0) * logdet - log_multigamma(m, alpha));
}

double diagonal_kernel(const std::vector<double>& sigma) {
    if (sigma.empty()) throw Error(ErrorKind::Dimension, "empty sigma");
    double p = std::pow(pi, -0.5 * static_cast<double>(sigma.size()));
    for (double s : sigma) {
        if (!(s > 0)) throw Error(ErrorKind::Domain, "diagonal kernel needs positive coordinates");
        p /= std::sqrt(s);
    }
    return p;
}

double quadric3_dual(const std::vector<double>& s) {
    if (s.size() != 3) throw Error(ErrorKind::Dimension, "quadric kernel lives in dimension 3");
    return 2.0 * (s[0] * s[1] + s[0] * s[2] + s[1] * s[2]) - (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
}

double quadric3_kernel(double alpha, const std::vector<double>& sigma) {
    if (!(alpha > 0.5)) throw Error(ErrorKind::Range, "quadric kernel needs alpha > 1/2");
    const double D = quadric3_dual(sigma);
    if (D < 0 || sigma[0] < 0) throw Error(ErrorKind::Domain, "sigma lies outside the dual cone");
    if (D == 0) throw Error(ErrorKind::Domain, "sigma lies on the boundary of the dual cone");
    return std::exp((2.0 - 2.0 * alpha) * std::log(2.0) - log_multigamma(2, alpha) + (alpha - 1.5) * std::log(D));
}

double hyp2f1(double a, double b, double c, double x) {
    if (!(std::abs(x) < 1)) throw Error(ErrorKind::Domain, "2F1 series needs |x| < 1");
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x;
        sum += term;
        if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum)) && n > 5) break;
    }
    return sum;
}

double appell_f1(double a, double b1, double b2, double c, double x, double y) {
    if (!(std::abs(x) < 1) || !(std::abs(y) < 1)) throw Error(ErrorKind::Domain, "Appell F1 series diverges for |x| or |y| >= 1");
    if (c <= 0 && c == std::floor(c)) throw Error(ErrorKind::Domain, "c must not be a nonpositive integer");
    std::vector<double> P{1.0}, Q{1.0};  // (b1)_m x^m / m!, (b2)_n y^n / n!
    double A = 1.0;                      // (a)_N / (c)_N
    double sum = 1.0;
    int small = 0;
    for (int N = 1; N < 20000; ++N) {
        A *= (a + N - 1) / (c + N - 1);
        P.push_back(P.back() * (b1 + N - 1) / N * x);
        Q.push_back(Q.back() * (b2 + N - 1) / N * y);
        double order = 0, mag = 0;
        for (int m = 0; m <= N; ++m) {
            const double t = A * P[static_cast<std::size_t>(m)] * Q[static_cast<std::size_t>(N - m)];
            order += t;
            mag += std::abs(t);
        }
        sum += order;
        // a few consecutive tiny orders before stopping; geometric decay bounds the rest
        small = mag < 1e-13 ? small + 1 : 0;
        if (small >= 3) return sum;
    }
    throw Error(ErrorKind::Convergence, "Appell F1 series did not converge");
}

double appell_case_kernel(double sigma1, double sigma2) {
    if (!(sigma1 > 0) || !(sigma2 >= sigma1)) throw Error(ErrorKind::Domain, "implemented branch needs sigma2 >= sigma1 > 0");
    const double r = sigma1 / sigma2;
    if (r >= 1) throw Error(ErrorKind::Domain, "series branch needs sigma2 > sigma1");
    return 2.0 / pi * std::sqrt(sigma1 / sigma2) * appell_f1(0.5, 0.5, 0.5, 1.5, -r, r);
}

double appell_case_kernel_quadrature(double sigma1, double sigma2, int nodes) {
    if (!(sigma1 > 0) || !(sigma2 >= sigma1)) throw Error(ErrorKind::Domain, "implemented branch needs sigma2 >= sigma1 > 0");
    const double r = sigma1 / sigma2;
    // v = sin^2 psi, u = (1 - v) sin^2 phi removes every endpoint singularity
    std::vector<double> x, w;
    gauss_legendre(nodes, 0.0, pi / 2, x, w);
    double I = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double cp = std::cos(x[i]), sp = std::sin(x[i]), sf = std::sin(x[j]);
            I += w[i] * w[j] * cp / std::sqrt(1.0 + r * cp * cp * sf * sf - r * sp * sp);
        }
    return 4.0 * I / (pi * pi) * std::sqrt(r);
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw Error(ErrorKind::Range, "need at least one node");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double v = es.eigenvectors()(0, k);
        x[static_cast<std::size_t>(k)] = 0.5 * (b - a) * es.eigenvalues()(k) + 0.5 * (a + b);
        w[static_cast<std::size_t>(k)] = (b - a) * v * v;
    }
}

KernelSpec parse_kernel(const std::string& name, int m, double alpha) {
    if (name == "wishart") return {KernelKind::Wishart, m, alpha};
    if (name == "diagonal") return {KernelKind::Diagonal, m, 0.5};
    if (name == "quadric3") return {KernelKind::Quadric3, 3, alpha};
    throw Error(ErrorKind::Parse, "unknown kernel '" + name + "' (wishart, diagonal, quadric3)");
}

namespace {

LaplaceCheck check_diagonal(const KernelSpec& k, const std::vector<double>& theta, const QuadConfig& cfg) {
    const std::size_t m = theta.size();
    if (m < 1 || m > 3) throw Error(ErrorKind::Range, "tensor quadrature supports 1 <= m <= 3");
    (void)k;
    double tmin = INFINITY, prod = 1;
    for (double t : theta) {
        if (!(t > 0)) throw Error(ErrorKind::Domain, "theta must lie in the positive orthant");
        tmin = std::min(tmin, t);
        prod *= t;
    }
    LaplaceCheck out;
    out.lhs = 1.0 / std::sqrt(prod);
    // sigma_i = s_i^2 on [0, R]^m
    const double R = std::sqrt((std::log(1.0 / cfg.tol) + 30.0) / tmin);
    for (double t : theta) out.tail_estimate += std::erfc(std::sqrt(t) * R);
    std::vector<double> x, w;
    composite_gl(cfg.panels, cfg.nodes, 0.0, R, x, w);
    const std::size_t n = x.size();
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> sigma(m);
    double sum = 0;
    for (;;) {
        double weight = 1, expo = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const double s = x[idx[i]];
            sigma[i] = s * s;
            weight *= w[idx[i]] * 2.0 * s;
            expo += theta[i] * sigma[i];
        }
        sum += weight * std::exp(-expo) * diagonal_kernel(sigma);
        ++out.evaluations;
        std::size_t i = 0;
        while (i < m && ++idx[i] == n) idx[i++] = 0;
        if (i == m) break;
    }
    out.rhs = sum;
    return out;
}

LaplaceCheck check_quadric3(const KernelSpec& k, const std::vector<double>& theta, const QuadConfig& cfg) {
    if (theta.size() != 3) throw Error(ErrorKind::Dimension, "quadric kernel needs a 3-vector theta");
    const double a = k.alpha;
    const double t1 = theta[0], t2 = theta[1], t3 = theta[2];
    const double e2 = t1 * t2 + t1 * t3 + t2 * t3;
    Eigen::Matrix2d M;
    M << t1 + t3, t3, t3, t2 + t3;
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(M).eigenvalues();
    if (!(ev(0) > 0)) throw Error(ErrorKind::Domain, "theta lies outside the hyperbolicity cone");
    LaplaceCheck out;
    out.lhs = std::pow(e2, -a);
    // sigma = (x^2, y^2, x^2 + y^2 + 2 x y sin(phi)); d sigma = 8 x^2 y^2 cos(phi) dx dy dphi
    const double R2 = (std::log(1.0 / cfg.tol) + 30.0) / ev(0);
    const double R = std::sqrt(R2);
    out.tail_estimate = upper_gamma_q(static_cast<int>(std::ceil(2 * a + 1)), ev(0) * R2) * std::pow(ev(1) / ev(0), 2 * a);
    std::vector<double> x, w, p, pw;
    composite_gl(cfg.panels, cfg.nodes / 2, 0.0, R, x, w);
    composite_gl(2, cfg.nodes, -pi / 2, pi / 2, p, pw);
    std::vector<double> sigma(3);
    double sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            for (std::size_t l = 0; l < p.size(); ++l) {
                const double xi = x[i], yj = x[j], s = std::sin(p[l]), c = std::cos(p[l]);
                sigma = {xi * xi, yj * yj, xi * xi + yj * yj + 2 * xi * yj * s};
                const double expo = t1 * sigma[0] + t2 * sigma[1] + t3 * sigma[2];
                double q;
                try {
                    q = quadric3_kernel(a, sigma);
                } catch (const Error&) {
                    continue;  // rounding put the node on the boundary; measure zero
                }
                sum += w[i] * w[j] * pw[l] * 8.0 * xi * xi * yj * yj * c * std::exp(-expo) * q;
                ++out.evaluations;
            }
    out.rhs = sum;
    return out;
}

LaplaceCheck check_wishart(const KernelSpec& k, const std::vector<double>& theta, const QuadConfig& cfg) {
    const int m = k.m;
    const double a = k.alpha;
    const std::size_t d = static_cast<std::size_t>(m * (m + 1) / 2);
    if (theta.size() != d) throw Error(ErrorKind::Dimension, "theta must list the m(m+1)/2 matrix slots");
    Eigen::MatrixXd T(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) T(i, j) = T(j, i) = theta[symdet_slot(m, i, j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const double lam = es.eigenvalues()(0);
    if (!(lam > 0)) throw Error(ErrorKind::Domain, "theta is not positive definite");
    if (!(a > (m - 1) / 2.0)) throw Error(ErrorKind::Range, "wishart kernel needs alpha > (m-1)/2");
    LaplaceCheck out;
    out.lhs = std::pow(T.determinant(), -a);

    // sigma = L L^T with L lower triangular: L_ii^2 ~ Gamma(alpha - i/2, rate lam), L_ij ~ N(0, 1/(2 lam))
    std::mt19937_64 gen(cfg.seed);
    std::vector<std::gamma_distribution<double>> gam;
    for (int i = 0; i < m; ++i) gam.emplace_back(a - i / 2.0, 1.0 / lam);
    std::normal_distribution<double> nrm(0.0, std::sqrt(0.5 / lam));
    const double log_norm_pdf0 = -0.5 * std::log(pi / lam);
    double mean = 0, m2 = 0;
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(m, m);
    for (long n = 1; n <= cfg.samples; ++n) {
        double log_g = 0, log_jac = m * std::log(2.0);
        for (int i = 0; i < m; ++i) {
            const double g2 = gam[static_cast<std::size_t>(i)](gen);
            const double sh = a - i / 2.0;
            L(i, i) = std::sqrt(g2);
            // density of L_ii = 2 L_ii * Gamma pdf at L_ii^2
            log_g += std::log(2.0 * L(i, i)) + sh * std::log(lam) - std::lgamma(sh) + (sh - 1) * std::log(g2) - lam * g2;
            log_jac += (m - i) * std::log(L(i, i));
            for (int j = 0; j < i; ++j) {
                L(i, j) = nrm(gen);
                log_g += log_norm_pdf0 - lam * L(i, j) * L(i, j);
            }
        }
        Eigen::MatrixXd S = L * L.transpose();
        const double wv = wishart_kernel(m, a, S) * std::exp(-(T.cwiseProduct(S)).sum() + log_jac - log_g);
        const double delta = wv - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (wv - mean);
    }
    out.evaluations = cfg.samples;
    out.rhs = mean;
    out.std_error = std::sqrt(m2 / static_cast<double>(cfg.samples - 1) / static_cast<double>(cfg.samples)) / out.lhs;
    return out;
}

}  // namespace

LaplaceCheck laplace_check(const KernelSpec& kernel, const std::vector<double>& theta, const QuadConfig& cfg) {
    LaplaceCheck out;
    switch (kernel.kind) {
        case KernelKind::Diagonal: out = check_diagonal(kernel, theta, cfg); break;
        case KernelKind::Quadric3: out = check_quadric3(kernel, theta, cfg); break;
        case KernelKind::Wishart: out = check_wishart(kernel, theta, cfg); break;
    }
    out.rel_error = std::abs(out.lhs - out.rhs) / out.lhs;
    out.truncation_dominated = out.tail_estimate > 0.5 * cfg.tol;
    return out;
}

}  // namespace hypex
