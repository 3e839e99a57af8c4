#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "hypex/polycore.hpp"

namespace hypex {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using cld = std::complex<long double>;
using CVecL = Eigen::Matrix<cld, Eigen::Dynamic, 1>;
using CMatL = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;

/// n homogeneous equations in n+1 homogeneous unknowns.
class PolySystem {
public:
    virtual ~PolySystem() = default;
    virtual std::size_t num_vars() const = 0;
    virtual std::vector<unsigned> degrees() const = 0;
    /// f has length n, J is n x (n+1).
    virtual void evaluate(const CVec& x, CVec& f, CMat& J) const = 0;
    virtual void evaluate(const CVecL& x, CVecL& f, CMatL& J) const = 0;
    /// True when every coefficient is real.
    virtual bool real_coefficients() const { return true; }
};

/// Explicit homogeneous polynomials with rational coefficients.
class ExplicitSystem final : public PolySystem {
public:
    explicit ExplicitSystem(std::vector<SparsePoly> polys);
    std::size_t num_vars() const override { return nvars_; }
    std::vector<unsigned> degrees() const override { return degrees_; }
    void evaluate(const CVec& x, CVec& f, CMat& J) const override;
    void evaluate(const CVecL& x, CVecL& f, CMatL& J) const override;

private:
    template <class V, class M>
    void eval_impl(const V& x, V& f, M& J) const;
    std::size_t nvars_ = 0;
    std::vector<unsigned> degrees_;
    std::vector<CompiledPoly> polys_;
};

/// Equations W * grad f(B u): the linear slices of the gradient map used by
/// every degree computation.
class GradientSliceSystem final : public PolySystem {
public:
    /// W is n x d, B is d x (n+1).
    GradientSliceSystem(const SparsePoly& f, const QMat& W, const QMat& B);
    std::size_t num_vars() const override { return static_cast<std::size_t>(B_.cols()); }
    std::vector<unsigned> degrees() const override;
    void evaluate(const CVec& x, CVec& f, CMat& J) const override;
    void evaluate(const CVecL& x, CVecL& f, CMatL& J) const override;

    const Eigen::MatrixXd& B() const { return B_; }

private:
    template <class V, class M>
    void eval_impl(const V& x, V& f, M& J) const;
    CompiledPoly f_;
    Eigen::MatrixXd W_, B_;
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Wl_, Bl_;
};

/// A square system; affine systems carry the homogenizing coordinate in slot 0.
struct SquareSystem {
    std::shared_ptr<const PolySystem> system;
    bool affine = false;
};

/// Homogenizes affine term lists (n polynomials in n variables).
SquareSystem make_affine_system(const std::vector<std::vector<RawTerm>>& polys, std::size_t nvars);
SquareSystem make_projective_system(std::vector<SparsePoly> polys);

struct TrackerConfig {
    std::size_t max_paths = 5000;
    double refine_tol = 1e-12;
    double cluster_tol = 1e-6;
    double infinity_tol = 1e-8;
    double divergence_norm = 1e8;
    double min_step = 1e-14;
    double max_step = 0.05;
    double predictor_tol = 1e-5;
    double rcond_tol = 1e-9;
    long max_steps = 200000;
    int retrack_rounds = 2;
    double max_failed_fraction = 0.25;
    unsigned threads = 1;
};

struct SolutionPoint {
    CVec x;  // max-modulus coordinate scaled to 1
    bool finite = true;
    bool at_infinity = false;
    bool singular = false;        // Jacobian rank-deficient or refinement stalled
    bool singular_locus = false;  // flagged by the caller's predicate
    bool failed = false;          // path did not reach t = 1
    bool real = false;
    int multiplicity = 1;
    double residual = 0.0;
    double rcond = 0.0;

    bool counted() const { return finite && !at_infinity && !singular && !singular_locus && !failed; }
};

struct PathStats {
    std::size_t paths = 0;
    std::size_t reached_end = 0;
    std::size_t failed = 0;
    std::size_t retracked = 0;
    long steps = 0;
};

struct SolutionSet {
    std::vector<SolutionPoint> points;  // one entry per cluster
    std::uint64_t seed = 0;
    std::size_t total_degree = 0;
    PathStats stats;

    /// Distinct finite regular solutions off the singular locus.
    std::size_t finite_count() const;
    std::size_t real_count() const;
    std::vector<CVec> finite_points() const;
};

using LocusPredicate = std::function<bool(const CVec&)>;

SolutionSet solve_total_degree(const SquareSystem& sys, std::uint64_t seed, const TrackerConfig& cfg = {},
                               const LocusPredicate& singular_locus = {});

struct RecountResult {
    SolutionSet first;
    SolutionSet second;
    bool stable = false;
};

/// Solves twice with independent solver randomness; stable iff counts agree.
RecountResult recount_with_seed(const SquareSystem& sys, std::uint64_t seed1, std::uint64_t seed2,
                                const TrackerConfig& cfg = {}, const LocusPredicate& singular_locus = {});

struct RefineResult {
    CVec x;
    double residual = 0.0;
    double rcond = 0.0;
    bool converged = false;
};

/// Newton refinement of a projective point on the patch <conj(x0), x> = 1.
RefineResult refine_point(const PolySystem& sys, const CVec& x0, double tol = 1e-12, int max_iter = 20);

/// Scales so the first coordinate of maximal modulus equals 1.
CVec normalize_projective(const CVec& x);
/// Distance between projective points (phase-aligned unit representatives).
double projective_distance(const CVec& a, const CVec& b);
/// Residual of a normalized point: max-norm of f at x / |x|_inf.
double residual_of(const PolySystem& sys, const CVec& x);

}  // namespace hypex
