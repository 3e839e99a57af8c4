#include "hypex/realroots.hpp"

#include <algorithm>
#include <cmath>

#include "hypex/error.hpp"

namespace hypex {

UniPoly::UniPoly(QVec coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::monomial(unsigned k, const Rational& c) {
    QVec v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
}

UniPoly UniPoly::from_roots(const QVec& roots) {
    UniPoly p(QVec{Rational(1)});
    for (const auto& r : roots) p = p * UniPoly(QVec{Rational(-r), Rational(1)});
    return p;
}

const Rational& UniPoly::lead() const {
    if (c_.empty()) throw Error(ErrorKind::EmptyInput, "zero polynomial has no leading coefficient");
    return c_.back();
}

Rational UniPoly::eval(const Rational& t) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
}

double UniPoly::eval(double t) const {
    double v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + it->get_d();
    return v;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    QVec d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    QVec r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) + o.coeff(k);
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    QVec r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) - o.coeff(k);
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    QVec r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const Rational& s) const {
    QVec r = c_;
    for (auto& x : r) x *= s;
    return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw Error(ErrorKind::Domain, "division by the zero polynomial");
    QVec rem = c_;
    const int dd = divisor.degree();
    if (degree() < dd) return {UniPoly(), *this};
    QVec quo(static_cast<std::size_t>(degree() - dd + 1));
    const Rational& lc = divisor.lead();
    for (int k = degree(); k >= dd; --k) {
        const Rational q = rem[static_cast<std::size_t>(k)] / lc;
        quo[static_cast<std::size_t>(k - dd)] = q;
        if (q == 0) continue;
        for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= q * divisor.c_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return {};
    return *this * Rational(1 / lead());
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x.divmod(y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

UniPoly squarefree_part(const UniPoly& g) {
    if (g.degree() <= 0) return g;
    UniPoly h = gcd(g, g.derivative());
    return g.divmod(h).first;
}

namespace {

int sign_of(const Rational& q) { return sgn(q); }

// Sign of p at an extended point (leading-term sign at infinity).
int sign_at(const UniPoly& p, const ExtRational& x) {
    if (p.is_zero()) return 0;
    switch (x.kind) {
        case ExtRational::Kind::PosInf: return sign_of(p.lead());
        case ExtRational::Kind::NegInf: return (p.degree() % 2 == 0 ? 1 : -1) * sign_of(p.lead());
        case ExtRational::Kind::Finite: return sign_of(p.eval(x.value));
    }
    return 0;
}

int variations(const std::vector<UniPoly>& seq, const ExtRational& x) {
    int v = 0, last = 0;
    for (const auto& p : seq) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

// Distinct roots strictly greater than x, for squarefree h.
int count_greater(const UniPoly& h, const ExtRational& x) {
    if (x.kind == ExtRational::Kind::PosInf) return 0;
    UniPoly q = h;
    if (x.kind == ExtRational::Kind::Finite && h.eval(x.value) == 0)
        q = h.divmod(UniPoly(QVec{Rational(-x.value), Rational(1)})).first;
    if (q.degree() <= 0) return 0;
    auto seq = sturm_sequence(q);
    return variations(seq, x) - variations(seq, ExtRational::pos_inf());
}

bool less(const ExtRational& a, const ExtRational& b) {
    using K = ExtRational::Kind;
    if (a.kind == b.kind) return a.kind == K::Finite && a.value < b.value;
    if (a.kind == K::NegInf || b.kind == K::PosInf) return true;
    return false;
}

}  // namespace

std::vector<UniPoly> sturm_sequence(const UniPoly& g) {
    if (g.is_zero()) throw Error(ErrorKind::EmptyInput, "Sturm sequence of the zero polynomial");
    std::vector<UniPoly> seq{g.monic()};
    UniPoly d = g.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d.monic());
    while (true) {
        UniPoly r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        // negated remainder, rescaled by a positive constant
        Rational s = abs(r.lead());
        seq.push_back(r * Rational(-1 / s));
    }
    return seq;
}

int sturm_count(const UniPoly& g, const ExtRational& a, const ExtRational& b) {
    if (g.is_zero()) throw Error(ErrorKind::EmptyInput, "root count of the zero polynomial");
    if (!less(a, b)) throw Error(ErrorKind::Range, "sturm_count needs a < b");
    if (g.degree() == 0) return 0;
    UniPoly h = squarefree_part(g);
    return count_greater(h, a) - count_greater(h, b);
}

int real_root_count_with_multiplicity(const UniPoly& g) {
    if (g.is_zero()) throw Error(ErrorKind::EmptyInput, "root count of the zero polynomial");
    int total = 0;
    UniPoly layer = g;
    while (layer.degree() > 0) {
        total += sturm_count(layer, ExtRational::neg_inf(), ExtRational::pos_inf());
        layer = gcd(layer, layer.derivative());
    }
    return total;
}

bool is_real_rooted(const UniPoly& g) { return real_root_count_with_multiplicity(g) == g.degree(); }

Rational cauchy_bound(const UniPoly& g) {
    if (g.is_zero()) throw Error(ErrorKind::EmptyInput, "Cauchy bound of the zero polynomial");
    Rational m = 0;
    const Rational& lc = g.lead();
    for (int k = 0; k < g.degree(); ++k) m = std::max<Rational>(m, abs(g.coeffs()[static_cast<std::size_t>(k)] / lc));
    return m + 1;
}

int roots_in_closed_ray_nonneg(const UniPoly& g) {
    if (g.is_zero()) throw Error(ErrorKind::EmptyInput, "root count of the zero polynomial");
    int at_zero = 0;
    UniPoly h = g;
    if (h.coeff(0) == 0) {
        at_zero = 1;
        std::size_t k = 0;
        while (h.coeff(k) == 0) ++k;
        h = UniPoly(QVec(h.coeffs().begin() + static_cast<std::ptrdiff_t>(k), h.coeffs().end()));
    }
    if (h.degree() <= 0) return at_zero;
    Rational M = cauchy_bound(h) + 1;
    return at_zero + sturm_count(h, Rational(0), M);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UniPoly& g) {
    std::vector<std::pair<Rational, Rational>> out;
    if (g.degree() <= 0) return out;
    UniPoly h = squarefree_part(g);
    auto seq = sturm_sequence(h);
    auto count = [&](const Rational& a, const Rational& b) {
        return variations(seq, a) - variations(seq, b);
    };
    Rational M = cauchy_bound(h);
    // work on (lo, hi] intervals with non-root endpoints
    std::vector<std::pair<Rational, Rational>> stack{{Rational(-M - 1), Rational(M + 1)}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = count(lo, hi);
        if (n == 0) continue;
        if (n == 1) {
            out.emplace_back(lo, hi);
            continue;
        }
        // split at a point that is not a root
        Rational mid = (lo + hi) / 2;
        for (long k = 3; h.eval(mid) == 0; ++k) mid = lo + (hi - lo) * Rational(k, 2 * k + 1);
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> real_roots(const UniPoly& g, double tol) {
    std::vector<double> roots;
    if (g.degree() <= 0) return roots;
    UniPoly h = squarefree_part(g);
    for (auto [lo, hi] : isolate_real_roots(h)) {
        // exactly one simple root in (lo, hi], endpoints are not roots
        int shi = sgn(h.eval(hi));
        Rational a = lo, b = hi;
        for (int it = 0; it < 200 && Rational(b - a).get_d() > tol * std::max(1.0, std::abs(b.get_d())); ++it) {
            Rational mid = (a + b) / 2;
            int s = sgn(h.eval(mid));
            if (s == 0) {
                a = b = mid;
                break;
            }
            if (s == shi)
                b = mid;
            else
                a = mid;
        }
        roots.push_back(Rational((a + b) / 2).get_d());
    }
    return roots;
}

}  // namespace hypex
