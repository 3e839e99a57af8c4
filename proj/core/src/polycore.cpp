#include "hypex/polycore.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "hypex/error.hpp"

namespace hypex {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return a < b;
}

SparsePoly::SparsePoly(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) throw Error(ErrorKind::Range, "polynomial needs at least one variable");
}

SparsePoly SparsePoly::constant(std::size_t nvars, const Rational& c) {
    SparsePoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

SparsePoly SparsePoly::variable(std::size_t nvars, std::size_t i) {
    SparsePoly p(nvars);
    Exponent e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, 1);
    return p;
}

SparsePoly SparsePoly::linear_form(const QVec& coeffs) {
    SparsePoly p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Exponent e(coeffs.size(), 0);
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    return p;
}

unsigned SparsePoly::degree() const {
    if (!degree_) throw Error(ErrorKind::EmptyInput, "degree of the zero polynomial is undefined");
    return *degree_;
}

Rational SparsePoly::coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePoly::add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw Error(ErrorKind::Dimension, "exponent length does not match nvars");
    if (c == 0) return;
    unsigned deg = std::accumulate(e.begin(), e.end(), 0u);
    if (degree_ && *degree_ != deg)
        throw Error(ErrorKind::Inhomogeneous, "inhomogeneous polynomial: term degrees " +
                                                  std::to_string(*degree_) + " and " + std::to_string(deg));
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    degree_ = terms_.empty() ? std::nullopt : std::optional<unsigned>(deg);
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorKind::Dimension, "nvars mismatch in sum");
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorKind::Dimension, "nvars mismatch in product");
    SparsePoly r(nvars_);
    Exponent e(nvars_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

SparsePoly SparsePoly::operator*(const Rational& c) const {
    if (c == 0) return SparsePoly(nvars_);
    SparsePoly r = *this;
    for (auto& [e, v] : r.terms_) v *= c;
    return r;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << it->second.get_str() << ':';
        for (std::size_t i = 0; i < it->first.size(); ++i) os << (i ? "," : "") << it->first[i];
    }
    return os.str();
}

namespace {

struct Cursor {
    std::size_t line = 1;
    std::size_t col = 1;
};

[[noreturn]] void parse_fail(const Cursor& at, const std::string& what) {
    throw Error(ErrorKind::Parse, "parse error at line " + std::to_string(at.line) + ", column " +
                                      std::to_string(at.col) + ": " + what);
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

std::vector<RawTerm> parse_terms(std::string_view text, std::size_t nvars) {
    // Split on '+' while tracking the position where each term begins.
    std::vector<std::pair<std::string, Cursor>> pieces;
    Cursor cur, start;
    std::string buf;
    bool started = false;
    for (char ch : text) {
        if (ch == '+') {
            pieces.emplace_back(buf, start);
            buf.clear();
            started = false;
        } else {
            if (!started && !std::isspace(static_cast<unsigned char>(ch))) {
                start = cur;
                started = true;
            }
            buf.push_back(ch);
        }
        if (ch == '\n') {
            ++cur.line;
            cur.col = 1;
        } else {
            ++cur.col;
        }
    }
    if (!started) start = cur;
    pieces.emplace_back(buf, start);

    std::vector<RawTerm> out;
    for (const auto& [raw, at] : pieces) {
        std::string term = strip(raw);
        if (term.empty()) parse_fail(at, "empty term");
        auto colon = term.find(':');
        if (colon == std::string::npos) parse_fail(at, "expected 'coeff:e1,...,ed' in '" + term + "'");
        RawTerm t;
        try {
            t.coeff = parse_rational(term.substr(0, colon));
        } catch (const Error& e) {
            parse_fail(at, e.what());
        }
        std::string exps = term.substr(colon + 1);
        std::stringstream ss(exps);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = strip(item);
            if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                parse_fail(at, "bad exponent '" + item + "'");
            if (item.size() > 6) parse_fail(at, "exponent too large");
            t.exps.push_back(static_cast<unsigned>(std::stoul(item)));
        }
        if (!exps.empty() && exps.back() == ',') parse_fail(at, "trailing comma");
        if (t.exps.empty()) parse_fail(at, "missing exponents");
        if (nvars == 0) nvars = t.exps.size();
        if (t.exps.size() != nvars)
            parse_fail(at, "expected " + std::to_string(nvars) + " exponents, got " + std::to_string(t.exps.size()));
        out.push_back(std::move(t));
    }
    return out;
}

SparsePoly parse_poly(std::string_view text, std::size_t nvars) {
    auto terms = parse_terms(text, nvars);
    SparsePoly p(terms.front().exps.size());
    for (const auto& t : terms) {
        if (t.coeff == 0) continue;
        p.add_term(t.exps, t.coeff);
    }
    if (p.is_zero()) throw Error(ErrorKind::EmptyInput, "empty input: polynomial cancels to zero");
    return p;
}

Rational eval_exact(const SparsePoly& f, const QVec& x) {
    if (x.size() != f.nvars()) throw Error(ErrorKind::Dimension, "evaluation point has wrong length");
    Rational v = 0;
    for (const auto& [e, c] : f.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned r = 0; r < e[i]; ++r) t *= x[i];
        v += t;
    }
    return v;
}

namespace {

// Neumaier summation of one real component.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

std::complex<double> eval_complex(const SparsePoly& f, const std::vector<std::complex<double>>& x) {
    if (x.size() != f.nvars()) throw Error(ErrorKind::Dimension, "evaluation point has wrong length");
    CompensatedSum re, im;
    for (const auto& [e, c] : f.terms()) {
        std::complex<double> t = c.get_d();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned r = 0; r < e[i]; ++r) t *= x[i];
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

SparsePoly derivative(const SparsePoly& f, std::size_t var) {
    if (var >= f.nvars()) throw Error(ErrorKind::Dimension, "derivative variable out of range");
    SparsePoly d(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e[var] == 0) continue;
        Exponent e2 = e;
        e2[var] -= 1;
        d.add_term(e2, c * e[var]);
    }
    return d;
}

std::vector<SparsePoly> gradient(const SparsePoly& f) {
    if (f.degree() < 1) throw Error(ErrorKind::Range, "gradient needs degree >= 1");
    std::vector<SparsePoly> g;
    g.reserve(f.nvars());
    for (std::size_t i = 0; i < f.nvars(); ++i) g.push_back(derivative(f, i));
    return g;
}

SparsePoly compose_linear(const SparsePoly& f, const QMat& B) {
    if (B.rows() != f.nvars()) throw Error(ErrorKind::Dimension, "compose_linear: B must have nvars rows");
    if (B.cols() == 0) throw Error(ErrorKind::Dimension, "compose_linear: B needs at least one column");
    const std::size_t k = B.cols();
    SparsePoly out(k);
    if (f.is_zero()) return out;
    const unsigned p = f.degree();
    // powers[j][e] = (row j of B as a linear form)^e
    std::vector<std::vector<SparsePoly>> powers(f.nvars());
    for (std::size_t j = 0; j < f.nvars(); ++j) {
        powers[j].push_back(SparsePoly::constant(k, 1));
        SparsePoly lin = SparsePoly::linear_form(B.row(j));
        for (unsigned e = 1; e <= p; ++e) {
            if (lin.is_zero())
                powers[j].push_back(SparsePoly(k));
            else
                powers[j].push_back(powers[j].back() * lin);
        }
    }
    for (const auto& [e, c] : f.terms()) {
        SparsePoly t = SparsePoly::constant(k, c);
        for (std::size_t j = 0; j < e.size() && !t.is_zero(); ++j)
            if (e[j] > 0) t = t * powers[j][e[j]];
        for (const auto& [et, ct] : t.terms()) out.add_term(et, ct);
    }
    return out;
}

SparsePoly build_elementary_symmetric(int d, int m) {
    if (d < 1 || m < 1 || m > d) throw Error(ErrorKind::Range, "elementary symmetric needs 1 <= m <= d");
    SparsePoly f(static_cast<std::size_t>(d));
    std::vector<bool> mask(static_cast<std::size_t>(d), false);
    std::fill(mask.begin(), mask.begin() + m, true);
    do {
        Exponent e(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) e[static_cast<std::size_t>(i)] = mask[static_cast<std::size_t>(i)] ? 1 : 0;
        f.add_term(e, 1);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return f;
}

std::size_t symdet_slot(int m, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= m) throw Error(ErrorKind::Range, "symmetric slot out of range");
    if (i == j) return static_cast<std::size_t>(i);
    // upper triangle, row-major, after the m diagonal slots
    std::size_t idx = static_cast<std::size_t>(m);
    for (int r = 0; r < i; ++r) idx += static_cast<std::size_t>(m - r - 1);
    return idx + static_cast<std::size_t>(j - i - 1);
}

SparsePoly poly_determinant(const std::vector<std::vector<SparsePoly>>& M) {
    const std::size_t n = M.size();
    if (n == 0) throw Error(ErrorKind::Dimension, "empty determinant");
    const std::size_t nv = M[0][0].nvars();
    if (n == 1) return M[0][0];
    SparsePoly det(nv);
    for (std::size_t c = 0; c < n; ++c) {
        if (M[0][c].is_zero()) continue;
        std::vector<std::vector<SparsePoly>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<SparsePoly> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(M[r][cc]);
            minor.push_back(std::move(row));
        }
        SparsePoly term = M[0][c] * poly_determinant(minor);
        det = (c % 2 == 0) ? det + term : det - term;
    }
    return det;
}

SymmetricDeterminant build_symmetric_determinant(int m) {
    if (m < 1) throw Error(ErrorKind::Range, "symdet needs m >= 1");
    const std::size_t d = static_cast<std::size_t>(m * (m + 1) / 2);
    std::vector<std::vector<SparsePoly>> M(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M[static_cast<std::size_t>(i)].push_back(SparsePoly::variable(d, symdet_slot(m, i, j)));
    SymmetricDeterminant out{poly_determinant(M), QMat(d, d), m};
    for (std::size_t s = 0; s < d; ++s) out.S(s, s) = s < static_cast<std::size_t>(m) ? 1 : 2;
    return out;
}

QVec symdet_vectorize(const QMat& A) {
    const int m = static_cast<int>(A.rows());
    QVec v(static_cast<std::size_t>(m * (m + 1) / 2));
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) v[symdet_slot(m, i, j)] = A(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return v;
}

QMat symdet_matrix(const QVec& theta, int m) {
    if (theta.size() != static_cast<std::size_t>(m * (m + 1) / 2))
        throw Error(ErrorKind::Dimension, "vector length does not match symmetric size");
    QMat A(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = theta[symdet_slot(m, i, j)];
    return A;
}

namespace {

std::vector<std::pair<int, int>> normalize_edges(const std::vector<std::pair<int, int>>& edges, int& m) {
    if (edges.empty()) throw Error(ErrorKind::Range, "graph has no edges");
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> out;
    m = 0;
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0) throw Error(ErrorKind::Range, "negative vertex label");
        if (a == b) throw Error(ErrorKind::Range, "self-loop in simple graph");
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second) throw Error(ErrorKind::Range, "repeated edge in simple graph");
        out.emplace_back(a, b);
        m = std::max(m, b);
    }
    // connectivity over {0..m}
    std::vector<int> parent(static_cast<std::size_t>(m + 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (auto [a, b] : out) parent[static_cast<std::size_t>(find(a))] = find(b);
    for (int v = 0; v <= m; ++v)
        if (find(v) != find(0)) throw Error(ErrorKind::Domain, "disconnected graph: vertex " + std::to_string(v) + " not reachable from 0");
    return out;
}

}  // namespace

SparsePoly build_graph_laplacian_det(const std::vector<std::pair<int, int>>& edges_in) {
    int m = 0;
    auto edges = normalize_edges(edges_in, m);
    const std::size_t d = edges.size();
    std::vector<std::vector<SparsePoly>> M(static_cast<std::size_t>(m), std::vector<SparsePoly>(static_cast<std::size_t>(m), SparsePoly(d)));
    for (std::size_t k = 0; k < d; ++k) {
        auto [a, b] = edges[k];
        SparsePoly x = SparsePoly::variable(d, k);
        if (a > 0) M[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(a - 1)] = M[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(a - 1)] + x;
        M[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(b - 1)] = M[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(b - 1)] + x;
        if (a > 0) {
            M[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = M[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] - x;
            M[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = M[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] - x;
        }
    }
    return poly_determinant(M);
}

Integer matrix_tree_count(const std::vector<std::pair<int, int>>& edges_in) {
    int m = 0;
    auto edges = normalize_edges(edges_in, m);
    QMat L(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (auto [a, b] : edges) {
        L(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(b - 1)) += 1;
        if (a > 0) {
            L(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(a - 1)) += 1;
            L(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)) -= 1;
            L(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(a - 1)) -= 1;
        }
    }
    Rational det = determinant(L);
    return det.get_num();
}

SparsePoly build_vamos() {
    const std::set<std::vector<int>> excluded = {{1, 2, 5, 6}, {1, 2, 7, 8}, {3, 4, 5, 6}, {3, 4, 7, 8}, {5, 6, 7, 8}};
    SparsePoly f(8);
    for (int a = 1; a <= 8; ++a)
        for (int b = a + 1; b <= 8; ++b)
            for (int c = b + 1; c <= 8; ++c)
                for (int d = c + 1; d <= 8; ++d) {
                    if (excluded.count({a, b, c, d})) continue;
                    Exponent e(8, 0);
                    e[static_cast<std::size_t>(a - 1)] = e[static_cast<std::size_t>(b - 1)] = 1;
                    e[static_cast<std::size_t>(c - 1)] = e[static_cast<std::size_t>(d - 1)] = 1;
                    f.add_term(e, 1);
                }
    return f;
}

SparsePoly build_product_linear_forms(const QMat& rows) {
    if (rows.rows() == 0 || rows.cols() == 0) throw Error(ErrorKind::Range, "no linear forms given");
    SparsePoly f = SparsePoly::constant(rows.cols(), 1);
    for (std::size_t i = 0; i < rows.rows(); ++i) {
        SparsePoly l = SparsePoly::linear_form(rows.row(i));
        if (l.is_zero()) throw Error(ErrorKind::Domain, "linear form " + std::to_string(i + 1) + " is zero");
        f = f * l;
    }
    return f;
}

QVec default_direction(const SparsePoly& f) {
    const std::size_t d = f.nvars();
    QVec ones(d, Rational(1));
    if (eval_exact(f, ones) != 0) return ones;
    QVec dec(d);
    for (std::size_t i = 0; i < d; ++i) dec[i] = static_cast<long>(d - i);
    if (eval_exact(f, dec) != 0) return dec;
    Rng rng(12345);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        QVec v(d);
        for (auto& x : v) x = static_cast<long>(rng.uniform_int(1, 9));
        if (eval_exact(f, v) != 0) return v;
    }
    throw Error(ErrorKind::Domain, "could not find a direction with f != 0");
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot read file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QMat read_matrix_file(const std::string& path) {
    std::stringstream in(read_file(path));
    std::string line;
    std::vector<QVec> rows;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::stringstream ls(line);
        std::string tok;
        QVec row;
        while (ls >> tok) row.push_back(parse_rational(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorKind::EmptyInput, "no rows in '" + path + "'");
    return QMat::from_rows(rows);
}

}  // namespace

PolySpec parse_poly_spec(const std::string& text_in) {
    const std::string text = strip(text_in);
    std::smatch mt;
    static const std::regex elem_re(R"(elem\(\s*(\d+)\s*,\s*(\d+)\s*\))");
    static const std::regex symdet_re(R"(symdet\(\s*(\d+)\s*\))");
    static const std::regex lap_re(R"(laplacian\((.*)\))");
    static const std::regex lin_re(R"(linforms\((.*)\))");
    PolySpec spec{text, SparsePoly(1), QMat(), QVec()};
    if (std::regex_match(text, mt, elem_re)) {
        spec.f = build_elementary_symmetric(std::stoi(mt[1]), std::stoi(mt[2]));
    } else if (std::regex_match(text, mt, symdet_re)) {
        int m = std::stoi(mt[1]);
        auto sd = build_symmetric_determinant(m);
        spec.f = sd.f;
        spec.S = sd.S;
        spec.tau = symdet_vectorize(QMat::identity(static_cast<std::size_t>(m)));
    } else if (std::regex_match(text, mt, lap_re)) {
        std::vector<std::pair<int, int>> edges;
        std::string body = mt[1];
        std::stringstream ss(body);
        std::string item;
        static const std::regex edge_re(R"(\s*(\d+)\s*[-,]\s*(\d+)\s*)");
        while (std::getline(ss, item, ';')) {
            std::smatch em;
            if (strip(item).empty()) continue;
            if (!std::regex_match(item, em, edge_re)) throw Error(ErrorKind::Parse, "bad edge '" + item + "'");
            edges.emplace_back(std::stoi(em[1]), std::stoi(em[2]));
        }
        spec.f = build_graph_laplacian_det(edges);
    } else if (text == "vamos") {
        spec.f = build_vamos();
    } else if (std::regex_match(text, mt, lin_re)) {
        spec.f = build_product_linear_forms(read_matrix_file(strip(mt[1])));
    } else if (text.find(':') == std::string::npos) {
        spec.f = parse_poly(read_file(text));
    } else {
        spec.f = parse_poly(text);
    }
    if (spec.S.rows() == 0) spec.S = QMat::identity(spec.f.nvars());
    if (spec.tau.empty()) spec.tau = default_direction(spec.f);
    return spec;
}

CompiledPoly::CompiledPoly(const SparsePoly& f) : nvars_(f.nvars()), degree_(f.is_zero() ? 0 : f.degree()) {
    for (const auto& [e, c] : f.terms()) {
        Term t;
        if (c.get_num().fits_slong_p() && c.get_den().fits_slong_p())
            t.coef = static_cast<long double>(c.get_num().get_si()) / static_cast<long double>(c.get_den().get_si());
        else
            t.coef = static_cast<long double>(c.get_d());
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] > 0) t.support.emplace_back(static_cast<unsigned>(k), e[k]);
        if (t.support.size() > 16) throw Error(ErrorKind::Range, "term support above 16 variables");
        terms_.push_back(std::move(t));
    }
}

}  // namespace hypex
