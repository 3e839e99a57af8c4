#include "output.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hypex/error.hpp"

namespace hypex::cli {

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

json manifest_json(const Manifest& m, const std::string& digest) {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - m.start).count();
    return json{{"command", m.command}, {"argv", m.argv}, {"seeds", m.seeds},
                {"version", HYPEX_VERSION}, {"wall_time", wall}, {"digest", digest}};
}

json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

Rational entry(const json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return from_double(v.get<double>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw Error(ErrorKind::Parse, "matrix entries must be numbers or rational strings");
}

}  // namespace

json finish(const Manifest& m, json result) {
    result["manifest"] = manifest_json(m, hex(fnv1a(result.dump())));
    return result;
}

json error_json(const Manifest& m, const std::string& kind, const std::string& message) {
    json e{{"error", {{"kind", kind}, {"message", message}}}};
    return finish(m, std::move(e));
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const QVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
}

json to_json(const CVec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
    return a;
}

json to_json(const SolutionSet& s) {
    json pts = json::array();
    for (const auto& p : s.points) {
        pts.push_back({{"x", to_json(p.x)},
                       {"finite", p.finite},
                       {"at_infinity", p.at_infinity},
                       {"singular", p.singular},
                       {"singular_locus", p.singular_locus},
                       {"failed", p.failed},
                       {"real", p.real},
                       {"multiplicity", p.multiplicity},
                       {"residual", p.residual},
                       {"rcond", p.rcond}});
    }
    return json{{"points", pts},
                {"finite_count", s.finite_count()},
                {"real_count", s.real_count()},
                {"total_degree", s.total_degree},
                {"seed", s.seed},
                {"stats", {{"paths", s.stats.paths}, {"reached_end", s.stats.reached_end}, {"failed", s.stats.failed},
                           {"retracked", s.stats.retracked}, {"steps", s.stats.steps}}}};
}

QMat matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw Error(ErrorKind::EmptyInput, "matrix has no rows");
    std::vector<QVec> out;
    for (const auto& r : rows) {
        if (!r.is_array()) throw Error(ErrorKind::Parse, "matrix rows must be arrays");
        QVec row;
        for (const auto& v : r) row.push_back(entry(v));
        if (!out.empty() && row.size() != out.front().size()) throw Error(ErrorKind::Dimension, "ragged matrix");
        out.push_back(std::move(row));
    }
    return QMat::from_rows(out);
}

Subspace read_subspace(const std::string& path) {
    const json j = load(path);
    if (j.contains("rows")) return Subspace::make(matrix_from_json(j.at("rows")));
    if (j.contains("equations")) return Subspace::from_equations(matrix_from_json(j.at("equations")));
    throw Error(ErrorKind::Parse, path + ": expected \"rows\" or \"equations\"");
}

SquareSystem read_system(const std::string& path) {
    const json j = load(path);
    if (!j.contains("polys")) throw Error(ErrorKind::Parse, path + ": missing \"polys\"");
    const std::size_t n = j.value("nvars", std::size_t{0});
    if (j.value("affine", false)) {
        std::vector<std::vector<RawTerm>> polys;
        for (const auto& p : j.at("polys")) polys.push_back(parse_terms(p.get<std::string>(), n));
        std::size_t nv = n;
        if (nv == 0 && !polys.empty() && !polys.front().empty()) nv = polys.front().front().exps.size();
        return make_affine_system(polys, nv);
    }
    std::vector<SparsePoly> polys;
    for (const auto& p : j.at("polys")) polys.push_back(parse_poly(p.get<std::string>(), n));
    return make_projective_system(std::move(polys));
}

}  // namespace hypex::cli
