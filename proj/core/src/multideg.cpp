#include "hypex/multideg.hpp"

#include <algorithm>

#include "hypex/error.hpp"
#include "hypex/gradmap.hpp"

namespace hypex {

namespace {

// Out-of-range arguments count as 0 inside the closed form.
Integer eulerian_or_zero(int r, int s) {
    if (r < 1 || s < 0 || s > r - 1) return 0;
    std::vector<Integer> row{1};
    for (int n = 2; n <= r; ++n) {
        std::vector<Integer> next(static_cast<std::size_t>(n), 0);
        for (int k = 0; k < n; ++k) {
            Integer v = 0;
            if (k >= 1) v += Integer(n - k) * row[static_cast<std::size_t>(k - 1)];
            if (k <= n - 2) v += Integer(k + 1) * row[static_cast<std::size_t>(k)];
            next[static_cast<std::size_t>(k)] = v;
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(s)];
}

Integer ipow(int b, int e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b < 0 ? -b : b), static_cast<unsigned long>(e));
    if (b < 0 && e % 2 == 1) r = -r;
    return r;
}

}  // namespace

Integer binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer eulerian(int r, int s) {
    if (r < 1 || s < 0 || s > r - 1) throw Error(ErrorKind::Range, "eulerian(r, s) needs r >= 1 and 0 <= s <= r-1");
    return eulerian_or_zero(r, s);
}

std::vector<Integer> eulerian_row(int r) {
    std::vector<Integer> row;
    for (int s = 0; s < r; ++s) row.push_back(eulerian(r, s));
    return row;
}

Integer alpha_closed_form(int d, int m, int i) {
    if (m < 1 || m > d || i < 1 || i > d) throw Error(ErrorKind::Range, "alpha_closed_form needs 1 <= m <= d and 1 <= i <= d");
    if (i < d - m + 3) return ipow(m - 1, i - 1);
    Integer sum = 0;
    for (int j = 0; j <= d - m; ++j)
        sum += Integer(d - m + 1 - j) * binomial(d - 1 - j, d - i) * ipow(m - 1, j) * eulerian_or_zero(i - 2 - j, m - d + i - 3);
    return sum;
}

Integer borderline_alpha(int d, int m) {
    if (m < 3 || m > d) throw Error(ErrorKind::Range, "borderline_alpha needs 3 <= m <= d");
    return ipow(m - 1, d - m + 2) - binomial(d, m - 2);
}

AlphaResult alpha_numeric(const SparsePoly& f, int i, std::uint64_t seed, const TrackerConfig& cfg) {
    const int d = static_cast<int>(f.nvars());
    if (i < 1 || i > d) throw Error(ErrorKind::Range, "alpha index out of range");
    if (f.degree() < 2) throw Error(ErrorKind::Range, "alpha_numeric needs deg f >= 2");
    const auto du = static_cast<std::size_t>(d), iu = static_cast<std::size_t>(i);

    auto run = [&](std::uint64_t s, std::size_t& paths) {
        Rng rng(derive_seed(s, 0));
        QMat B = rng.small_rational_matrix(du, iu);
        QMat W = rng.small_rational_matrix(iu - 1, du);
        auto sys = std::make_shared<GradientSliceSystem>(f, W, B);
        Eigen::MatrixXd Bd(static_cast<Eigen::Index>(du), static_cast<Eigen::Index>(iu));
        for (std::size_t r = 0; r < du; ++r)
            for (std::size_t c = 0; c < iu; ++c) Bd(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = B(r, c).get_d();
        SolutionSet sol = solve_total_degree(SquareSystem{sys, false}, derive_seed(s, 1), cfg, gradient_vanishes(f, Bd));
        paths = sol.total_degree;
        return sol.finite_count();
    };

    AlphaResult out;
    out.seed = seed;
    out.seed2 = derive_seed(seed, 7);
    out.alpha = run(out.seed, out.paths);
    std::size_t dummy;
    out.recount = run(out.seed2, dummy);
    out.stable = out.alpha == out.recount;
    return out;
}

Multidegree multidegree_closed_form(int d, int m) {
    Multidegree md;
    md.d = d;
    for (int i = 1; i <= d; ++i) {
        md.alphas.push_back(alpha_closed_form(d, m, i));
        md.provenance.emplace_back("closed_form");
        md.stable.push_back(true);
        md.seeds.push_back(0);
    }
    return md;
}

Multidegree multidegree_numeric(const SparsePoly& f, std::uint64_t seed, const TrackerConfig& cfg, const std::vector<int>& only) {
    Multidegree md;
    md.d = static_cast<int>(f.nvars());
    for (int i = 1; i <= md.d; ++i) {
        if (!only.empty() && std::find(only.begin(), only.end(), i) == only.end()) {
            md.alphas.emplace_back(0);
            md.provenance.emplace_back("skipped");
            md.stable.push_back(false);
            md.seeds.push_back(0);
            continue;
        }
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(100 + i));
        AlphaResult a = alpha_numeric(f, i, s, cfg);
        md.alphas.emplace_back(static_cast<unsigned long>(a.alpha));
        md.provenance.emplace_back("numeric");
        md.stable.push_back(a.stable);
        md.seeds.push_back(s);
    }
    return md;
}

}  // namespace hypex
