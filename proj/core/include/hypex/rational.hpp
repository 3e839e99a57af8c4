#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace hypex {

using Rational = mpq_class;
using Integer = mpz_class;
using QVec = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class QMat {
public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QVec row(std::size_t i) const;
    QMat transpose() const;
    QMat operator*(const QMat& o) const;
    QVec operator*(const QVec& v) const;
    bool operator==(const QMat& o) const = default;

    bool is_symmetric() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> a_;
};

Rational parse_rational(std::string_view text);
QVec parse_rational_list(std::string_view text);
std::string to_string(const Rational& q);

double to_double(const Rational& q);
Rational from_double(double x);
std::vector<double> to_doubles(const QVec& v);
QVec from_doubles(const std::vector<double>& v);

Rational dot(const QVec& a, const QVec& b);

Rational determinant(QMat m);
QMat inverse(const QMat& m);
QMat adjugate(const QMat& m);
std::size_t rank(const QMat& m);
/// Rows spanning {x : m x = 0}.
QMat nullspace(const QMat& m);
bool leading_minors_positive(const QMat& m);

/// Independent seed for a numbered sub-stream (splitmix64 of seed and stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator shared by every randomized routine.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    double uniform(double lo = 0.0, double hi = 1.0);
    double normal();
    std::complex<double> unit_complex();
    /// p/q with 1 <= |p| <= max_num, 1 <= q <= max_den, random sign.
    Rational small_rational(int max_num = 97, int max_den = 97);
    QMat small_rational_matrix(std::size_t rows, std::size_t cols, int bound = 97);

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace hypex
