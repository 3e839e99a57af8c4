#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "hypex/gradmap.hpp"

namespace hypex {

/// Row basis L (c x d) of a parameter subspace, with a basis of its orthogonal complement.
struct Subspace {
    QMat L;
    QMat perp;

    static Subspace make(QMat L);
    /// The hyperplane {normal . theta = 0}.
    static Subspace hyperplane(const QVec& normal);
    /// Zero set of the given linear equations (rows).
    static Subspace from_equations(const QMat& equations);
    std::size_t c() const { return L.rows(); }
    std::size_t d() const { return L.cols(); }
};

struct VarietyDegrees {
    std::size_t degree = 0;
    std::size_t ml_degree = 0;
    std::size_t map_degree = 0;   // 0 when the fibers of L -> image are positive dimensional
    std::size_t theta_count = 0;
    std::size_t image_dim = 0;    // projective dimension of the image
    bool exact_division = true;
    bool stable = false;
    bool meets_cone = false;
    std::size_t recount = 0;
    std::uint64_t seed = 0;
    std::uint64_t seed2 = 0;
    std::vector<CVec> image_points;  // normalized S^{-1} grad f at the slice points
};

/// Projective dimension of the closure of grad f(L).
std::size_t image_dimension(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed = 1);
/// True when some sampled point of L lies in the open cone.
bool subspace_meets_cone(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed = 1);

VarietyDegrees variety_degree(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed, const TrackerConfig& cfg = {});

struct MLDegreeResult {
    std::size_t ml_degree = 0;
    std::size_t recount = 0;
    bool stable = false;
    std::size_t discarded_perp = 0;  // solutions with L S sigma = 0
    std::uint64_t seed = 0;
    std::uint64_t seed2 = 0;
};

MLDegreeResult ml_degree(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed, const TrackerConfig& cfg = {});

enum class LperpVerdict { Empty, Nonempty, Inconclusive };
const char* to_string(LperpVerdict v);

struct LperpResult {
    LperpVerdict verdict = LperpVerdict::Inconclusive;
    std::optional<CVec> witness;  // sigma in the image and in L-perp
    std::size_t solutions = 0;
    std::uint64_t seed = 0;
    std::uint64_t seed2 = 0;
};

/// Tests whether grad f(L) meets L-perp (the image itself, not its closure).
LperpResult lperp_intersection_test(const HyperbolicFamily& fam, const Subspace& L, std::uint64_t seed, const TrackerConfig& cfg = {});

/// sum_i a_i df/dtheta_i.
SparsePoly polar_polynomial(const SparsePoly& f, const QVec& a);

struct QuadricFactors {
    bool reducible = false;
    bool real = false;
    bool rational = false;
    std::size_t rank = 0;
    /// q = scale * l1 * l2; each factor has leading nonzero coefficient 1.
    std::complex<double> scale;
    std::vector<std::complex<double>> l1, l2;
    std::optional<QVec> l1_exact, l2_exact;
    Rational scale_exact;
};

/// Symmetric Gram matrix of a quadratic form: q = x^T G x.
QMat quadric_gram(const SparsePoly& q);
QuadricFactors quadric_linear_factor(const SparsePoly& q);

/// Directions a with rank(Gram(polar(f, a))) <= 2 for a cubic f, found by a
/// randomized solve of the 3x3 minors and verified afterwards.
std::vector<std::vector<double>> cubic_polar_candidates(const SparsePoly& f, std::uint64_t seed, const TrackerConfig& cfg = {});

}  // namespace hypex
