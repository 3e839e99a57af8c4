#include "hypex/rational.hpp"

#include <cmath>
#include <numbers>

#include "hypex/error.hpp"

namespace hypex {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Inhomogeneous: return "inhomogeneous";
        case ErrorKind::EmptyInput: return "empty_input";
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::Range: return "range";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Instability: return "instability";
        case ErrorKind::Budget: return "budget";
        case ErrorKind::Convergence: return "convergence";
        case ErrorKind::NotExist: return "not_exist";
    }
    return "unknown";
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
    if (rows.empty()) return {};
    QMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw Error(ErrorKind::Dimension, "ragged matrix rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(std::size_t i) const {
    return QVec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMat QMat::operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::Dimension, "matrix product shape mismatch");
    QMat r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

QVec QMat::operator*(const QVec& v) const {
    if (cols_ != v.size()) throw Error(ErrorKind::Dimension, "matrix-vector shape mismatch");
    QVec r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
}

bool QMat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_decimal(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        std::string_view e = s.substr(epos + 1);
        bool eneg = false;
        if (!e.empty() && (e[0] == '+' || e[0] == '-')) {
            eneg = e[0] == '-';
            e.remove_prefix(1);
        }
        if (!all_digits(e) || e.size() > 6) throw Error(ErrorKind::Parse, "bad exponent");
        exp10 = std::stol(std::string(e));
        if (eneg) exp10 = -exp10;
        s = s.substr(0, epos);
    }
    std::string digits;
    auto dot = s.find('.');
    if (dot == std::string_view::npos) {
        digits = std::string(s);
    } else {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw Error(ErrorKind::Parse, "bad decimal");
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<long>(fp.size());
    }
    if (!all_digits(digits)) throw Error(ErrorKind::Parse, "bad number");
    Integer num(digits, 10);
    Integer den = 1;
    Integer ten = 10;
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(exp10)));
    if (exp10 >= 0)
        num *= p;
    else
        den = p;
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw Error(ErrorKind::Parse, "empty number");
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string_view n = trim(s.substr(0, slash)), d = trim(s.substr(slash + 1));
        std::string_view nd = n;
        if (!nd.empty() && (nd[0] == '-' || nd[0] == '+')) nd.remove_prefix(1);
        if (!all_digits(nd) || !all_digits(d))
            throw Error(ErrorKind::Parse, "bad rational '" + std::string(s) + "'");
        Integer den(std::string{d}, 10);
        if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
        Integer num(std::string(nd), 10);
        if (!n.empty() && n[0] == '-') num = -num;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    try {
        return parse_decimal(s);
    } catch (const Error&) {
        throw Error(ErrorKind::Parse, "bad number '" + std::string(s) + "'");
    }
}

QVec parse_rational_list(std::string_view text) {
    QVec out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto pos = text.find(',', start);
        if (pos == std::string_view::npos) pos = text.size();
        std::string_view item = trim(text.substr(start, pos - start));
        if (!item.empty()) out.push_back(parse_rational(item));
        start = pos + 1;
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double x) {
    if (!std::isfinite(x)) throw Error(ErrorKind::Domain, "non-finite value");
    Rational q(x);
    q.canonicalize();
    return q;
}

std::vector<double> to_doubles(const QVec& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
    return r;
}

QVec from_doubles(const std::vector<double>& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = from_double(v[i]);
    return r;
}

Rational dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::Dimension, "dot product length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rational determinant(QMat m) {
    if (m.rows() != m.cols()) throw Error(ErrorKind::Dimension, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            Rational f = m(r, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

QMat inverse(const QMat& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::Dimension, "inverse of non-square matrix");
    const std::size_t n = a.rows();
    QMat m = a, inv = QMat::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw Error(ErrorKind::Domain, "singular matrix");
        if (p != c)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(p, j), m(c, j));
                std::swap(inv(p, j), inv(c, j));
            }
        Rational piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            Rational f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

QMat adjugate(const QMat& a) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw Error(ErrorKind::Dimension, "adjugate of non-square matrix");
    QMat adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            QMat minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = a(r, c);
                }
                ++rr;
            }
            Rational d = determinant(minor);
            adj(i, j) = ((i + j) % 2 == 0) ? d : Rational(-d);
        }
    return adj;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rational piv = m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) /= piv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const QMat& m) {
    QMat t = m;
    return rref(t).size();
}

QMat nullspace(const QMat& m) {
    QMat t = m;
    auto pivots = rref(t);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVec v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -t(i, free);
        basis.push_back(std::move(v));
    }
    if (basis.empty()) return QMat(0, m.cols());
    return QMat::from_rows(basis);
}

bool leading_minors_positive(const QMat& m) {
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        QMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
        if (determinant(sub) <= 0) return false;
    }
    return true;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

std::complex<double> Rng::unit_complex() {
    double a = uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(a), std::sin(a)};
}

Rational Rng::small_rational(int max_num, int max_den) {
    std::int64_t p = uniform_int(1, max_num);
    std::int64_t q = uniform_int(1, max_den);
    if (uniform_int(0, 1) == 1) p = -p;
    Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
    r.canonicalize();
    return r;
}

QMat Rng::small_rational_matrix(std::size_t rows, std::size_t cols, int bound) {
    QMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = small_rational(bound, bound);
    return m;
}

}  // namespace hypex
