#pragma once

#include <cstdint>
#include <vector>

#include "hypex/polycore.hpp"

namespace hypex {

/// Quartic whose zero set bounds the dual cone of E3 in four variables.
SparsePoly steiner_quartic();
Rational steiner_eval(const QVec& sigma);
double steiner_eval(const std::vector<double>& sigma);

struct BoundarySample {
    QVec theta;                  // exact point with E3(theta) = 0
    std::vector<double> sigma;   // unit-norm gradient of E3 at theta
    double q = 0.0;              // Q(sigma)
};

/// Smooth real points of {E3 = 0}, away from the four coordinate points.
std::vector<BoundarySample> steiner_boundary_samples(int n, std::uint64_t seed);
/// max |Q(grad E3 / |grad E3|)| over n boundary samples.
double dual_vanishing_probe(int n, std::uint64_t seed);
/// Q(grad E3(theta)) in exact arithmetic.
Rational steiner_exact_witness(const QVec& theta);

}  // namespace hypex
