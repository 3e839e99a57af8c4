#pragma once

#include <Eigen/Dense>

#include <vector>

#include "hypex/homotopy.hpp"
#include "hypex/hyperbolicity.hpp"

namespace hypex {

/// F(theta) = S^{-1} grad f(theta) / f(theta), i.e. the gradient of -log f paired through S.
std::vector<double> gradient_map(const HyperbolicFamily& fam, const std::vector<double>& theta);
QVec gradient_map_exact(const HyperbolicFamily& fam, const QVec& theta);

/// Predicate for points u with grad f(B u) = 0 relative to the size of f's coefficients.
LocusPredicate gradient_vanishes(const SparsePoly& f, const Eigen::MatrixXd& B, double tol = 1e-11);

struct FiberResult {
    SolutionSet solutions;
    std::size_t complex_count = 0;
    std::size_t real_count = 0;
    std::size_t in_cone = 0;
    std::vector<std::vector<double>> cone_points;  // scaled so that F(theta) = sigma
    bool stable = false;
    std::size_t recount = 0;  // count under the second seed
    std::uint64_t seed = 0;
};

FiberResult fiber_solve(const HyperbolicFamily& fam, const QVec& sigma, std::uint64_t seed, const TrackerConfig& cfg = {});

struct MLEResult {
    std::vector<double> theta_hat;
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> newton_decrements;
};

MLEResult mle(const HyperbolicFamily& fam, const std::vector<double>& sigma_hat, double tol = 1e-10, int max_iter = 500);
/// Same, starting from a given interior point instead of tau.
MLEResult mle_from(const HyperbolicFamily& fam, const std::vector<double>& sigma_hat, std::vector<double> start,
                   double tol = 1e-10, int max_iter = 500);

struct CurveRow {
    double t = 0.0;
    std::vector<double> theta;
    std::vector<double> sigma;
};

/// Samples F along the segment of L cap C, L given by 2 x d rows.
std::vector<CurveRow> central_path_trace(const HyperbolicFamily& fam, const QMat& L, int n, std::uint64_t seed = 1);

}  // namespace hypex
