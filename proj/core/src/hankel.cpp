#include "hypex/hankel.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hypex/error.hpp"

namespace hypex {

namespace {

HankelSpace build(int m, const std::vector<std::vector<Exponent>>& entry_label) {
    HankelSpace H;
    H.m = m;
    const std::size_t d = static_cast<std::size_t>(m * (m + 1) / 2);
    H.slot.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
    std::map<Exponent, int> index;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            const Exponent& e = entry_label[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            auto [it, fresh] = index.emplace(e, static_cast<int>(H.coords.size()));
            if (fresh) H.coords.push_back(e);
            H.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = H.slot[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = it->second;
        }
    QMat L(H.coords.size(), d);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) L(static_cast<std::size_t>(H.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]), symdet_slot(m, i, j)) = 1;
    H.L = Subspace::make(std::move(L));
    return H;
}

}  // namespace

HankelSpace hankel_space(int m) {
    if (m < 2) throw Error(ErrorKind::Range, "Hankel space needs m >= 2");
    std::vector<std::vector<Exponent>> lab(static_cast<std::size_t>(m), std::vector<Exponent>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) lab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {static_cast<unsigned>(i + j)};
    HankelSpace H = build(m, lab);
    H.coords.clear();
    return H;
}

HankelSpace hankel_space_generalized(int r, int s) {
    if (r < 1 || s < 1) throw Error(ErrorKind::Range, "generalized Hankel space needs r, s >= 1");
    // degree-r monomials in s variables: support size ascending, then lex descending
    std::vector<Exponent> mons;
    Exponent e(static_cast<std::size_t>(s), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == s - 1) {
            e[static_cast<std::size_t>(pos)] = static_cast<unsigned>(left);
            mons.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[static_cast<std::size_t>(pos)] = static_cast<unsigned>(k);
            rec(pos + 1, left - k);
        }
    };
    rec(0, r);
    auto support = [](const Exponent& x) { return std::count_if(x.begin(), x.end(), [](unsigned v) { return v > 0; }); };
    std::stable_sort(mons.begin(), mons.end(), [&](const Exponent& a, const Exponent& b) { return support(a) < support(b); });
    const int m = static_cast<int>(mons.size());
    std::vector<std::vector<Exponent>> lab(static_cast<std::size_t>(m), std::vector<Exponent>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Exponent sum(static_cast<std::size_t>(s));
            for (int k = 0; k < s; ++k)
                sum[static_cast<std::size_t>(k)] = mons[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] + mons[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            lab[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sum;
        }
    HankelSpace H = build(m, lab);
    H.generalized = true;
    H.r = r;
    H.s = s;
    H.row_labels = mons;
    return H;
}

QMat hankel_matrix(const HankelSpace& H, const QVec& u) {
    if (u.size() != H.L.c()) throw Error(ErrorKind::Dimension, "Hankel coordinates have wrong length");
    const auto m = static_cast<std::size_t>(H.m);
    QMat A(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) A(i, j) = u[static_cast<std::size_t>(H.slot[i][j])];
    return A;
}

std::size_t plucker_index(int n, int a, int b) {
    if (!(0 <= a && a < b && b < n)) throw Error(ErrorKind::Range, "Plucker index needs 0 <= a < b < n");
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    return static_cast<std::size_t>(a * n - a * (a + 1) / 2 + (b - a - 1));
}

std::vector<SparsePoly> plucker_relations(int n) {
    if (n < 4) throw Error(ErrorKind::Range, "Plucker relations need n >= 4");
    const std::size_t N = static_cast<std::size_t>(n * (n - 1) / 2);
    auto var2 = [&](std::size_t x, std::size_t y) {
        Exponent e(N, 0);
        e[x] += 1;
        e[y] += 1;
        return e;
    };
    std::vector<SparsePoly> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    SparsePoly p(N);
                    p.add_term(var2(plucker_index(n, i, l), plucker_index(n, j, k)), 1);
                    p.add_term(var2(plucker_index(n, i, k), plucker_index(n, j, l)), -1);
                    p.add_term(var2(plucker_index(n, i, j), plucker_index(n, k, l)), 1);
                    out.push_back(std::move(p));
                }
    return out;
}

QMat bezout_from_plucker(const QVec& p, int m) {
    const int n = m + 1;
    if (m < 1 || p.size() != static_cast<std::size_t>(n * m / 2)) throw Error(ErrorKind::Range, "Plucker vector must have C(m+1, 2) entries");
    const auto mu = static_cast<std::size_t>(m);
    QMat B(mu, mu);
    for (int r = 0; r < m; ++r)
        for (int s = r; s < m; ++s) {
            Rational v = 0;
            for (int a = 0; a <= r; ++a) {
                const int b = r + s + 1 - a;
                if (b <= m) v += p[plucker_index(n, a, b)];
            }
            B(static_cast<std::size_t>(r), static_cast<std::size_t>(s)) = B(static_cast<std::size_t>(s), static_cast<std::size_t>(r)) = v;
        }
    return B;
}

QVec plucker_from_symmetric(const QMat& Sigma, int m) {
    const auto mu = static_cast<std::size_t>(m);
    if (m < 1 || Sigma.rows() != mu || Sigma.cols() != mu) throw Error(ErrorKind::Range, "Sigma must be m x m");
    const int n = m + 1;
    QVec p(static_cast<std::size_t>(n * m / 2));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const int k = a + b - 1;
            Rational v = Sigma(static_cast<std::size_t>(a), static_cast<std::size_t>(k - a));
            if (a - 1 >= std::max(0, k + 1 - m)) v -= Sigma(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(k - a + 1));
            p[plucker_index(n, a, b)] = v;
        }
    return p;
}

bool verify_grassmannian_membership(const QMat& H, int m) {
    if (H.rows() != static_cast<std::size_t>(m) || H.cols() != static_cast<std::size_t>(m)) throw Error(ErrorKind::Dimension, "H must be m x m");
    if (determinant(H) == 0) throw Error(ErrorKind::Domain, "Hankel matrix is singular");
    const QVec p = plucker_from_symmetric(adjugate(H), m);
    if (m + 1 < 4) return true;
    for (const auto& rel : plucker_relations(m + 1))
        if (eval_exact(rel, p) != 0) return false;
    return true;
}

std::vector<double> poly_from_gram(const Eigen::MatrixXd& Sigma) {
    const Eigen::Index m = Sigma.rows();
    std::vector<double> c(static_cast<std::size_t>(2 * m - 1), 0.0);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) c[static_cast<std::size_t>(i + j)] += Sigma(i, j);
    return c;
}

QVec poly_from_gram(const QMat& Sigma) {
    const std::size_t m = Sigma.rows();
    QVec c(2 * m - 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) c[i + j] += Sigma(i, j);
    return c;
}

GramCenter gram_analytic_center(const std::vector<double>& c_hat, double tol) {
    if (c_hat.size() < 3 || c_hat.size() % 2 == 0) throw Error(ErrorKind::Dimension, "coefficient vector must have odd length 2m-1 >= 3");
    const int m = static_cast<int>(c_hat.size() + 1) / 2;
    const HankelSpace H = hankel_space(m);
    const auto sd = build_symmetric_determinant(m);
    // moments of the uniform measure on [-1, 1] give a positive definite Hankel matrix
    QVec tau(c_hat.size());
    for (std::size_t k = 0; k < tau.size(); ++k) tau[k] = k % 2 == 0 ? Rational(1, static_cast<unsigned long>(k + 1)) : Rational(0);
    auto fam = HyperbolicFamily::make(compose_linear(sd.f, H.L.L.transpose()), tau, QMat::identity(tau.size()));
    MLEResult r;
    try {
        r = mle(fam, c_hat, tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotExist || e.kind() == ErrorKind::Convergence)
            throw Error(ErrorKind::NotExist, "polynomial is not strictly SOS: " + std::string(e.what()));
        throw;
    }
    Eigen::MatrixXd Theta(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) Theta(i, j) = r.theta_hat[static_cast<std::size_t>(i + j)];
    GramCenter out;
    out.Sigma = Theta.inverse();
    out.Sigma = (0.5 * (out.Sigma + out.Sigma.transpose())).eval();
    out.iterations = r.iterations;
    const auto c = poly_from_gram(out.Sigma);
    for (std::size_t k = 0; k < c.size(); ++k) out.poly_residual = std::max(out.poly_residual, std::abs(c[k] - c_hat[k]));
    const Eigen::MatrixXd inv = out.Sigma.inverse();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i + 1 < m && j > 0) out.hankel_residual = std::max(out.hankel_residual, std::abs(inv(i + 1, j - 1) - inv(i, j)));
    return out;
}

}  // namespace hypex
