#pragma once

#include <Eigen/Dense>

#include <vector>

#include "hypex/expvariety.hpp"

namespace hypex {

struct HankelSpace {
    int m = 0;             // matrix size
    bool generalized = false;
    int r = 0, s = 0;      // degree and number of variables when generalized
    Subspace L;            // c x m(m+1)/2 in symmetric-determinant slot order
    std::vector<std::vector<int>> slot;   // m x m -> coordinate index
    std::vector<Exponent> row_labels;     // monomials labelling rows (generalized)
    std::vector<Exponent> coords;         // monomials labelling coordinates (generalized)
};

HankelSpace hankel_space(int m);
HankelSpace hankel_space_generalized(int r, int s);
/// Symmetric matrix of the space at coordinates u.
QMat hankel_matrix(const HankelSpace& H, const QVec& u);

/// Index of p_ab (a < b < n) in lexicographic pair order.
std::size_t plucker_index(int n, int a, int b);
/// p_il p_jk - p_ik p_jl + p_ij p_kl for every i < j < k < l < n.
std::vector<SparsePoly> plucker_relations(int n);

/// B_rs = sum of p_ab over a + b = r + s + 1, a <= min(r, s), b <= m.
QMat bezout_from_plucker(const QVec& p, int m);
/// Triangular inverse of bezout_from_plucker.
QVec plucker_from_symmetric(const QMat& Sigma, int m);
/// Exact: the adjugate of an invertible Hankel matrix lies on Gr(2, m+1).
bool verify_grassmannian_membership(const QMat& H, int m);

/// Antidiagonal sums: coefficients of (1, x, ..., x^{m-1}) Sigma (1, x, ..., x^{m-1})^T.
std::vector<double> poly_from_gram(const Eigen::MatrixXd& Sigma);
QVec poly_from_gram(const QMat& Sigma);

struct GramCenter {
    Eigen::MatrixXd Sigma;
    double poly_residual = 0.0;     // |poly_from_gram(Sigma) - c|
    double hankel_residual = 0.0;   // distance of Sigma^{-1} from Hankel
    int iterations = 0;
};

/// Max-determinant Gram matrix of the univariate polynomial sum c_k x^k.
GramCenter gram_analytic_center(const std::vector<double>& c_hat, double tol = 1e-12);

}  // namespace hypex
