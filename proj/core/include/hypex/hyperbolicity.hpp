#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypex/polycore.hpp"
#include "hypex/realroots.hpp"

namespace hypex {

struct Certification {
    bool certified = false;  // probabilistic: all trials real-rooted
    bool refuted = false;    // exact: a line with a non-real root was found
    int trials = 0;
    std::uint64_t seed = 0;
    std::optional<QVec> witness;
};

/// A polynomial with a hyperbolicity direction and a pairing <a,b> = a^T S b.
struct HyperbolicFamily {
    SparsePoly f;
    QVec tau;
    QMat S;
    Certification cert;

    /// Validates f(tau) != 0 and S symmetric positive definite. An empty S means identity.
    static HyperbolicFamily make(SparsePoly f, QVec tau, QMat S = {});

    std::size_t dim() const { return f.nvars(); }
    unsigned degree() const { return f.degree(); }
    /// +1 or -1: sign of f on the cone.
    int sign() const;
};

HyperbolicFamily family_from_spec(const PolySpec& spec);

/// t -> f(theta + t dir), exact.
UniPoly restrict_to_line(const SparsePoly& f, const QVec& theta, const QVec& dir);

Certification certify_hyperbolic(const SparsePoly& f, const QVec& tau, int trials = 200, std::uint64_t seed = 1);

enum class ConeStatus { Interior, Boundary, Exterior };
const char* to_string(ConeStatus s);

struct ConeDecision {
    ConeStatus status = ConeStatus::Exterior;
    int roots_nonneg = 0;   // distinct roots of f(theta + t tau) in [0, inf); exact tests only
    double margin = 0.0;    // min <theta, sigma/|S sigma|> over the unit slice of C; dual tests only
    double tol = 0.0;
    int iterations = 0;
};

/// Exact membership in the closed hyperbolicity cone.
ConeDecision cone_contains(const HyperbolicFamily& fam, const QVec& theta);
/// Floating variant; theta is converted exactly to rationals.
ConeDecision cone_contains(const HyperbolicFamily& fam, const std::vector<double>& theta);

/// Numeric membership in the dual cone by a barrier method on a compact slice of C.
ConeDecision dual_cone_margin(const HyperbolicFamily& fam, const std::vector<double>& sigma, double tol = 1e-8);

}  // namespace hypex
