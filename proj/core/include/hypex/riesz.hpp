#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace hypex {

/// pi^{m(m-1)/4} prod_j Gamma(alpha - (j-1)/2).
double multigamma(int m, double alpha);
double log_multigamma(int m, double alpha);

/// det(sigma)^{alpha-(m+1)/2} / Gamma_m(alpha) for the symmetric determinant.
double wishart_kernel(int m, double alpha, const Eigen::MatrixXd& sigma);
/// pi^{-m/2} (sigma_1...sigma_m)^{-1/2}, kernel of theta_1...theta_m at alpha = 1/2.
double diagonal_kernel(const std::vector<double>& sigma);
/// Kernel of theta1 theta2 + theta1 theta3 + theta2 theta3.
double quadric3_kernel(double alpha, const std::vector<double>& sigma);
/// 2(s1 s2 + s1 s3 + s2 s3) - (s1^2 + s2^2 + s3^2).
double quadric3_dual(const std::vector<double>& sigma);

double hyp2f1(double a, double b, double c, double x);
/// First Appell function by its double series; |x|, |y| < 1.
double appell_f1(double a, double b1, double b2, double c, double x, double y);

/// Kernel of theta1 theta2 (theta1+theta2)(theta1-theta2) at alpha = 1/2, branch sigma2 >= sigma1 > 0.
double appell_case_kernel(double sigma1, double sigma2);
/// Same value from direct quadrature of the defining double integral.
double appell_case_kernel_quadrature(double sigma1, double sigma2, int nodes = 64);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

enum class KernelKind { Wishart, Diagonal, Quadric3 };

struct KernelSpec {
    KernelKind kind = KernelKind::Diagonal;
    int m = 2;
    double alpha = 0.5;
};

KernelSpec parse_kernel(const std::string& name, int m, double alpha);

struct QuadConfig {
    double tol = 1e-2;
    int nodes = 48;                // per panel dimension
    int panels = 8;
    long samples = 1000000;        // Monte Carlo
    std::uint64_t seed = 1;
};

struct LaplaceCheck {
    double lhs = 0.0;              // f(theta)^{-alpha}
    double rhs = 0.0;              // integral of exp(-<theta,sigma>) q(sigma)
    double rel_error = 0.0;
    double tail_estimate = 0.0;    // relative bound on the truncated mass
    double std_error = 0.0;        // Monte Carlo standard error, relative
    bool truncation_dominated = false;
    long evaluations = 0;
};

/// theta is given in the kernel's own coordinates: diagonal entries, the three
/// variables of the quadric, or (t11, t22, t12) for m = 2 matrices.
LaplaceCheck laplace_check(const KernelSpec& kernel, const std::vector<double>& theta, const QuadConfig& cfg = {});

}  // namespace hypex
