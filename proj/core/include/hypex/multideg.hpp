#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypex/homotopy.hpp"

namespace hypex {

/// Permutations of r elements with exactly s ascents. Requires r >= 1, 0 <= s <= r-1.
Integer eulerian(int r, int s);
/// Row A(r, 0..r-1).
std::vector<Integer> eulerian_row(int r);

/// alpha_i of the elementary symmetric polynomial of degree m in d unknowns.
Integer alpha_closed_form(int d, int m, int i);
/// (m-1)^(d-m+2) - C(d, m-2), the first entry past the Bezout range.
Integer borderline_alpha(int d, int m);
Integer binomial(int n, int k);

struct AlphaResult {
    std::size_t alpha = 0;
    std::size_t recount = 0;
    bool stable = false;
    std::size_t paths = 0;
    std::uint64_t seed = 0;
    std::uint64_t seed2 = 0;
};

/// Counts points of the gradient graph over a generic (i-1)-plane in theta and
/// a generic (d-i)-plane in sigma. Two independent seeds.
AlphaResult alpha_numeric(const SparsePoly& f, int i, std::uint64_t seed, const TrackerConfig& cfg = {});

struct Multidegree {
    int d = 0;
    std::vector<Integer> alphas;             // index i-1 holds alpha_i; 0 when not computed
    std::vector<std::string> provenance;     // "closed_form", "numeric" or "skipped"
    std::vector<bool> stable;
    std::vector<std::uint64_t> seeds;
};

Multidegree multidegree_closed_form(int d, int m);
/// Entries in `only` (1-based) or all of them when empty.
Multidegree multidegree_numeric(const SparsePoly& f, std::uint64_t seed, const TrackerConfig& cfg = {},
                                const std::vector<int>& only = {});

}  // namespace hypex
