#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypex/rational.hpp"

namespace hypex {

using Exponent = std::vector<unsigned>;

template <class T>
struct real_of {
    using type = T;
};
template <class R>
struct real_of<std::complex<R>> {
    using type = R;
};

/// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Homogeneous multivariate polynomial with exact rational coefficients.
class SparsePoly {
public:
    using TermMap = std::map<Exponent, Rational, GrlexLess>;

    explicit SparsePoly(std::size_t nvars);

    static SparsePoly constant(std::size_t nvars, const Rational& c);
    static SparsePoly variable(std::size_t nvars, std::size_t i);
    static SparsePoly linear_form(const QVec& coeffs);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    /// Total degree; throws for the zero polynomial.
    unsigned degree() const;
    std::optional<unsigned> degree_if_nonzero() const { return degree_; }

    const TermMap& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    Rational coefficient(const Exponent& e) const;

    /// Adds c * x^e; rejects exponents that break homogeneity.
    void add_term(const Exponent& e, const Rational& c);

    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator-() const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly operator*(const Rational& c) const;
    bool operator==(const SparsePoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    /// Term-list text: "c:e1,...,ed + ...".
    std::string to_string() const;

private:
    std::size_t nvars_;
    TermMap terms_;
    std::optional<unsigned> degree_;
};

struct RawTerm {
    Rational coeff;
    Exponent exps;
};

/// Parses the term list without the homogeneity check. nvars=0 infers it.
std::vector<RawTerm> parse_terms(std::string_view text, std::size_t nvars = 0);
SparsePoly parse_poly(std::string_view text, std::size_t nvars = 0);

Rational eval_exact(const SparsePoly& f, const QVec& x);
std::complex<double> eval_complex(const SparsePoly& f, const std::vector<std::complex<double>>& x);

SparsePoly derivative(const SparsePoly& f, std::size_t var);
std::vector<SparsePoly> gradient(const SparsePoly& f);
/// g(u) = f(B u) with B of shape nvars x k.
SparsePoly compose_linear(const SparsePoly& f, const QMat& B);

SparsePoly build_elementary_symmetric(int d, int m);

struct SymmetricDeterminant {
    SparsePoly f;
    QMat S;
    int m;
};
/// Variable index of entry (i,j): diagonal slots first, then the upper triangle row by row.
std::size_t symdet_slot(int m, int i, int j);
SymmetricDeterminant build_symmetric_determinant(int m);
/// Vectorizes a symmetric matrix in symdet variable order.
QVec symdet_vectorize(const QMat& A);
QMat symdet_matrix(const QVec& theta, int m);

SparsePoly build_graph_laplacian_det(const std::vector<std::pair<int, int>>& edges);
/// Number of spanning trees via exact determinant of the unit-weight reduced Laplacian.
Integer matrix_tree_count(const std::vector<std::pair<int, int>>& edges);
SparsePoly build_vamos();
SparsePoly build_product_linear_forms(const QMat& rows);

/// Determinant of a square matrix of polynomials by cofactor expansion.
SparsePoly poly_determinant(const std::vector<std::vector<SparsePoly>>& M);

/// A polynomial together with its default direction and pairing, as produced by
/// the builder strings "elem(d,m)", "symdet(m)", "laplacian(0-1;1-2)", "vamos",
/// "linforms(file)" or a term list / file path.
struct PolySpec {
    std::string name;
    SparsePoly f;
    QMat S;
    QVec tau;
};
PolySpec parse_poly_spec(const std::string& text);
/// All-ones when f(1,...,1) != 0, otherwise the first small integer vector with f != 0.
QVec default_direction(const SparsePoly& f);

/// Fast floating evaluation of value, gradient and Hessian.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const SparsePoly& f);

    std::size_t nvars() const { return nvars_; }
    unsigned degree() const { return degree_; }

    template <class T>
    T value(const T* x) const;
    template <class T>
    void value_grad(const T* x, T& v, T* g) const;
    /// H is row-major nvars x nvars.
    template <class T>
    void value_grad_hess(const T* x, T& v, T* g, T* H) const;

private:
    struct Term {
        long double coef;
        std::vector<std::pair<unsigned, unsigned>> support;
    };
    std::size_t nvars_ = 0;
    unsigned degree_ = 0;
    std::vector<Term> terms_;
};

template <class T>
T CompiledPoly::value(const T* x) const {
    using R = typename real_of<T>::type;
    T v(0);
    for (const auto& t : terms_) {
        T p(static_cast<R>(t.coef));
        for (auto [k, e] : t.support)
            for (unsigned r = 0; r < e; ++r) p *= x[k];
        v += p;
    }
    return v;
}

template <class T>
void CompiledPoly::value_grad(const T* x, T& v, T* g) const {
    using R = typename real_of<T>::type;
    v = T(0);
    for (std::size_t i = 0; i < nvars_; ++i) g[i] = T(0);
    T pw[16], d1[16];
    for (const auto& t : terms_) {
        const std::size_t s = t.support.size();
        for (std::size_t a = 0; a < s; ++a) {
            auto [k, e] = t.support[a];
            T p(1);
            for (unsigned r = 1; r < e; ++r) p *= x[k];
            d1[a] = p * static_cast<R>(e);
            pw[a] = p * x[k];
        }
        const T c(static_cast<R>(t.coef));
        T all = c;
        for (std::size_t a = 0; a < s; ++a) all *= pw[a];
        v += all;
        for (std::size_t a = 0; a < s; ++a) {
            T q = c * d1[a];
            for (std::size_t b = 0; b < s; ++b)
                if (b != a) q *= pw[b];
            g[t.support[a].first] += q;
        }
    }
}

template <class T>
void CompiledPoly::value_grad_hess(const T* x, T& v, T* g, T* H) const {
    using R = typename real_of<T>::type;
    v = T(0);
    for (std::size_t i = 0; i < nvars_; ++i) g[i] = T(0);
    for (std::size_t i = 0; i < nvars_ * nvars_; ++i) H[i] = T(0);
    T pw[16], d1[16], d2[16];
    for (const auto& t : terms_) {
        const std::size_t s = t.support.size();
        for (std::size_t a = 0; a < s; ++a) {
            auto [k, e] = t.support[a];
            T p(1);
            for (unsigned r = 2; r < e; ++r) p *= x[k];
            d2[a] = (e >= 2) ? p * static_cast<R>(e * (e - 1)) : T(0);
            T p1 = (e >= 2) ? p * x[k] : T(1);
            d1[a] = p1 * static_cast<R>(e);
            pw[a] = p1 * x[k];
        }
        const T c(static_cast<R>(t.coef));
        T all = c;
        for (std::size_t a = 0; a < s; ++a) all *= pw[a];
        v += all;
        for (std::size_t a = 0; a < s; ++a) {
            const std::size_t ka = t.support[a].first;
            T q = c * d1[a];
            T qq = c * d2[a];
            for (std::size_t b = 0; b < s; ++b)
                if (b != a) {
                    q *= pw[b];
                    qq *= pw[b];
                }
            g[ka] += q;
            H[ka * nvars_ + ka] += qq;
            for (std::size_t b = a + 1; b < s; ++b) {
                const std::size_t kb = t.support[b].first;
                T r = c * d1[a] * d1[b];
                for (std::size_t l = 0; l < s; ++l)
                    if (l != a && l != b) r *= pw[l];
                H[ka * nvars_ + kb] += r;
                H[kb * nvars_ + ka] += r;
            }
        }
    }
}

}  // namespace hypex
