#pragma once

#include <utility>
#include <vector>

#include "hypex/rational.hpp"

namespace hypex {

/// Univariate polynomial with rational coefficients, ascending order.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(QVec coeffs);

    static UniPoly monomial(unsigned k, const Rational& c = 1);
    static UniPoly from_roots(const QVec& roots);

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const QVec& coeffs() const { return c_; }
    const Rational& lead() const;
    Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

    Rational eval(const Rational& t) const;
    double eval(double t) const;
    UniPoly derivative() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Rational& s) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    /// Quotient and remainder of euclidean division by a nonzero divisor.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
    /// Same polynomial scaled to leading coefficient 1.
    UniPoly monic() const;

private:
    void trim();
    QVec c_;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// g / gcd(g, g'): same distinct roots, all simple.
UniPoly squarefree_part(const UniPoly& g);

/// Rational or +-infinity.
struct ExtRational {
    enum class Kind { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Rational value;

    ExtRational() = default;
    ExtRational(const Rational& v) : kind(Kind::Finite), value(v) {}
    static ExtRational neg_inf() { ExtRational e; e.kind = Kind::NegInf; return e; }
    static ExtRational pos_inf() { ExtRational e; e.kind = Kind::PosInf; return e; }
};

std::vector<UniPoly> sturm_sequence(const UniPoly& g);
/// Number of distinct real roots in (a, b].
int sturm_count(const UniPoly& g, const ExtRational& a, const ExtRational& b);
/// Real roots counted with multiplicity, layer by layer through gcd(g, g').
int real_root_count_with_multiplicity(const UniPoly& g);
bool is_real_rooted(const UniPoly& g);
/// 1 + max |a_i / a_n|; every complex root has modulus at most this.
Rational cauchy_bound(const UniPoly& g);
/// Distinct real roots in [0, inf).
int roots_in_closed_ray_nonneg(const UniPoly& g);

/// Intervals (lo, hi], one per distinct real root, ascending; endpoints are never roots.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly& g);
/// Distinct real roots as doubles, ascending, bisected to width <= tol.
std::vector<double> real_roots(const UniPoly& g, double tol = 1e-15);

}  // namespace hypex
