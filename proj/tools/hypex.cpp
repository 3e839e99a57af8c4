#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <thread>

#include "CLI11.hpp"
#include "hypex/error.hpp"
#include "hypex/hankel.hpp"
#include "hypex/hyperbolicity.hpp"
#include "hypex/multideg.hpp"
#include "hypex/realroots.hpp"
#include "hypex/riesz.hpp"
#include "hypex/steiner.hpp"
#include "output.hpp"

using namespace hypex;
using namespace hypex::cli;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitInstability = 2;
constexpr int kExitUsage = 64;

struct Common {
    std::string poly;
    std::string tau;
    std::string subspace;
    std::string json_out;
    std::string csv_out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double tol = -1.0;
    unsigned threads = 0;
    std::size_t max_paths = 0;
    double refine_tol = 0.0;
    double cluster_tol = 0.0;
};

std::uint64_t seed_of(const Common& c) {
    if (c.seed_given) return c.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

TrackerConfig tracker(const Common& c) {
    TrackerConfig cfg;
    cfg.threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    if (c.max_paths) cfg.max_paths = c.max_paths;
    if (c.refine_tol > 0) cfg.refine_tol = c.refine_tol;
    if (c.cluster_tol > 0) cfg.cluster_tol = c.cluster_tol;
    return cfg;
}

HyperbolicFamily family(const Common& c) {
    if (c.poly.empty()) throw Error(ErrorKind::EmptyInput, "--poly is required");
    PolySpec spec = parse_poly_spec(c.poly);
    if (!c.tau.empty()) spec.tau = parse_rational_list(c.tau);
    return family_from_spec(spec);
}

std::vector<double> doubles(const std::string& text) { return to_doubles(parse_rational_list(text)); }

// Outcome of one subcommand: the result object and the exit code it implies.
struct Outcome {
    json result;
    int code = 0;
};

Outcome cone_member(const Common& c, const std::string& point, bool dual) {
    auto fam = family(c);
    json r;
    if (dual) {
        const double tol = c.tol > 0 ? c.tol : 1e-8;
        auto d = dual_cone_margin(fam, doubles(point), tol);
        r = {{"status", to_string(d.status)}, {"margin", d.margin}, {"tol", d.tol}, {"iterations", d.iterations},
             {"witness", nullptr}};
        return {r, 0};
    }
    const QVec theta = parse_rational_list(point);
    auto d = cone_contains(fam, theta);
    json witness = nullptr;
    if (d.status != ConeStatus::Interior) {
        // nonnegative roots of t -> f(theta + t tau) certify the decision
        json roots = json::array();
        for (auto [lo, hi] : isolate_real_roots(restrict_to_line(fam.f, theta, fam.tau)))
            if (hi >= 0) roots.push_back({to_string(lo), to_string(hi)});
        witness = {{"line_roots", roots}};
    }
    r = {{"status", to_string(d.status)}, {"roots_nonneg", d.roots_nonneg}, {"witness", witness}};
    return {r, 0};
}

Outcome hyperbolic_check(const Common& c, int trials, std::uint64_t seed) {
    auto fam = family(c);
    auto cert = certify_hyperbolic(fam.f, fam.tau, trials, seed);
    json r{{"certified", cert.certified}, {"refuted", cert.refuted}, {"trials", cert.trials}, {"seed", cert.seed},
           {"witness", cert.witness ? to_json(*cert.witness) : json(nullptr)}};
    return {r, 0};
}

Outcome run_mle(const Common& c, const std::string& sigma) {
    auto fam = family(c);
    auto res = mle(fam, doubles(sigma), c.tol > 0 ? c.tol : 1e-10);
    json r{{"theta_hat", res.theta_hat}, {"residual", res.residual}, {"iterations", res.iterations},
           {"newton_decrements", res.newton_decrements}};
    return {r, 0};
}

Outcome fiber(const Common& c, const std::string& sigma, std::uint64_t seed) {
    auto fam = family(c);
    auto res = fiber_solve(fam, parse_rational_list(sigma), seed, tracker(c));
    json r{{"complex_count", res.complex_count}, {"real_count", res.real_count}, {"in_cone", res.in_cone},
           {"cone_points", res.cone_points}, {"stable", res.stable}, {"recount", res.recount},
           {"seed", res.seed}, {"solutions", to_json(res.solutions)}};
    return {r, res.stable ? 0 : kExitInstability};
}

Outcome multidegree(const Common& c, bool closed, bool numeric, std::uint64_t seed, const std::vector<int>& only) {
    if (c.poly.empty()) throw Error(ErrorKind::EmptyInput, "--poly is required");
    Multidegree md;
    static const std::regex re(R"(\s*elem\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
    std::smatch mt;
    const bool is_elem = std::regex_match(c.poly, mt, re);
    // without a flag, elementary symmetric inputs use the closed form
    if (closed || (!numeric && is_elem)) {
        if (!is_elem) throw Error(ErrorKind::Domain, "--closed-form needs elem(d,m)");
        md = multidegree_closed_form(std::stoi(mt[1]), std::stoi(mt[2]));
    } else {
        md = multidegree_numeric(parse_poly_spec(c.poly).f, seed, tracker(c), only);
    }
    json alphas = json::array();
    for (const auto& a : md.alphas) alphas.push_back(a.get_str());
    bool stable = true;
    for (std::size_t i = 0; i < md.stable.size(); ++i)
        if (md.provenance[i] == "numeric" && !md.stable[i]) stable = false;
    std::vector<bool> st(md.stable.begin(), md.stable.end());
    json r{{"d", md.d}, {"alphas", alphas}, {"provenance", md.provenance}, {"stable", st}, {"seeds", md.seeds}};
    // small integers print as numbers so the common case reads naturally
    bool fits = true;
    for (const auto& a : md.alphas) fits = fits && a.fits_slong_p();
    if (fits) {
        json nums = json::array();
        for (const auto& a : md.alphas) nums.push_back(a.get_si());
        r["alphas"] = nums;
    }
    return {r, stable ? 0 : kExitInstability};
}

Outcome expvar(const Common& c, bool want_degree, bool want_ml, bool want_lperp, bool points, std::uint64_t seed) {
    auto fam = family(c);
    if (c.subspace.empty()) throw Error(ErrorKind::EmptyInput, "--subspace is required");
    const Subspace L = read_subspace(c.subspace);
    const auto cfg = tracker(c);
    json r{{"c", L.c()}, {"d", L.d()}};
    int code = 0;
    if (want_degree) {
        auto v = variety_degree(fam, L, seed, cfg);
        json img = json::array();
        if (points)
            for (const auto& p : v.image_points) img.push_back(to_json(p));
        r["degree"] = {{"degree", v.degree}, {"ml_degree", v.ml_degree}, {"map_degree", v.map_degree},
                       {"theta_count", v.theta_count}, {"image_dim", v.image_dim},
                       {"exact_division", v.exact_division}, {"stable", v.stable}, {"meets_cone", v.meets_cone},
                       {"recount", v.recount}, {"seed", v.seed}, {"seed2", v.seed2}, {"image_points", img}};
        if (!v.stable) code = kExitInstability;
    }
    if (want_ml) {
        auto m = ml_degree(fam, L, seed, cfg);
        r["ml"] = {{"ml_degree", m.ml_degree}, {"recount", m.recount}, {"stable", m.stable},
                   {"discarded_perp", m.discarded_perp}, {"seed", m.seed}, {"seed2", m.seed2}};
        if (!m.stable) code = kExitInstability;
    }
    if (want_lperp) {
        auto l = lperp_intersection_test(fam, L, seed, cfg);
        r["lperp"] = {{"verdict", to_string(l.verdict)}, {"solutions", l.solutions},
                      {"witness", l.witness ? to_json(*l.witness) : json(nullptr)},
                      {"seed", l.seed}, {"seed2", l.seed2}};
        if (l.verdict == LperpVerdict::Inconclusive) code = kExitInstability;
    }
    return {r, code};
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

Outcome central_path(const Common& c, int n, std::uint64_t seed) {
    auto fam = family(c);
    if (c.subspace.empty()) throw Error(ErrorKind::EmptyInput, "--subspace is required");
    const Subspace L = read_subspace(c.subspace);
    auto rows = central_path_trace(fam, L.L, n, seed);
    const std::size_t d = fam.dim();
    std::vector<std::string> header{"t"};
    for (std::size_t i = 1; i <= d; ++i) header.push_back("theta_" + std::to_string(i));
    for (std::size_t i = 1; i <= d; ++i) header.push_back("sigma_" + std::to_string(i));
    std::vector<std::vector<double>> table;
    json arr = json::array();
    for (const auto& row : rows) {
        std::vector<double> line{row.t};
        line.insert(line.end(), row.theta.begin(), row.theta.end());
        line.insert(line.end(), row.sigma.begin(), row.sigma.end());
        table.push_back(line);
        arr.push_back({{"t", row.t}, {"theta", row.theta}, {"sigma", row.sigma}});
    }
    if (!c.csv_out.empty()) write_csv(c.csv_out, header, table);
    return {json{{"rows", arr}, {"csv", c.csv_out}}, 0};
}

Outcome hankel(const Common& c, int m, int verify, int r_deg, int s_vars, bool degrees, std::uint64_t seed) {
    json r;
    HankelSpace H = (r_deg > 0 && s_vars > 0) ? hankel_space_generalized(r_deg, s_vars) : hankel_space(m);
    r["m"] = H.m;
    r["c"] = H.L.c();
    json layout = json::array();
    for (int i = 0; i < H.m; ++i) {
        json row = json::array();
        for (int j = 0; j < H.m; ++j) {
            const int k = H.slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (H.generalized) {
                std::string lab = "theta";
                for (unsigned e : H.coords[static_cast<std::size_t>(k)]) lab += std::to_string(e);
                row.push_back(lab);
            } else {
                row.push_back("theta" + std::to_string(k));
            }
        }
        layout.push_back(row);
    }
    r["layout"] = layout;
    int code = 0;
    if (verify > 0) {
        if (H.generalized) throw Error(ErrorKind::Domain, "--verify applies to classical Hankel matrices");
        Rng rng(seed);
        int passed = 0, singular = 0;
        for (int t = 0; t < verify; ++t) {
            QVec u(H.L.c());
            for (auto& x : u) x = rng.small_rational(50, 9);
            const QMat A = hankel_matrix(H, u);
            if (determinant(A) == 0) {
                ++singular;
                continue;
            }
            if (verify_grassmannian_membership(A, H.m)) ++passed;
        }
        r["verify"] = {{"trials", verify}, {"passed", passed}, {"singular_skipped", singular}, {"seed", seed}};
        if (passed + singular != verify) code = kExitDomain;
    }
    if (degrees) {
        auto sd = build_symmetric_determinant(H.m);
        auto fam = HyperbolicFamily::make(sd.f, symdet_vectorize(QMat::identity(static_cast<std::size_t>(H.m))), sd.S);
        auto v = variety_degree(fam, H.L, seed, tracker(c));
        auto ml = ml_degree(fam, H.L, seed, tracker(c));
        r["degree"] = v.degree;
        r["ml_degree"] = ml.ml_degree;
        r["stable"] = v.stable && ml.stable;
        if (!(v.stable && ml.stable)) code = kExitInstability;
    }
    return {r, code};
}

Outcome gram_center(const Common& c, const std::string& coeffs) {
    auto g = gram_analytic_center(doubles(coeffs), c.tol > 0 ? c.tol : 1e-12);
    json S = json::array();
    for (Eigen::Index i = 0; i < g.Sigma.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < g.Sigma.cols(); ++j) row.push_back(g.Sigma(i, j));
        S.push_back(row);
    }
    return {json{{"sigma", S}, {"poly_residual", g.poly_residual}, {"hankel_residual", g.hankel_residual},
                 {"iterations", g.iterations}},
            0};
}

Outcome riesz(const Common& c, const std::string& kernel, int m, double alpha, const std::string& theta, long samples,
              std::uint64_t seed) {
    QuadConfig q;
    if (c.tol > 0) q.tol = c.tol;
    if (samples > 0) q.samples = samples;
    q.seed = seed;
    auto res = laplace_check(parse_kernel(kernel, m, alpha), doubles(theta), q);
    const bool pass = res.rel_error <= q.tol;
    json r{{"lhs", res.lhs}, {"rhs", res.rhs}, {"rel_error", res.rel_error}, {"tol", q.tol},
           {"tail_estimate", res.tail_estimate}, {"std_error", res.std_error},
           {"truncation_dominated", res.truncation_dominated}, {"evaluations", res.evaluations}, {"pass", pass}};
    return {r, 0};
}

Outcome steiner(const Common& c, int probe, const std::string& witness, std::uint64_t seed) {
    json r;
    if (probe > 0) {
        auto samples = steiner_boundary_samples(probe, seed);
        double worst = 0.0;
        std::vector<std::vector<double>> table;
        for (const auto& s : samples) {
            worst = std::max(worst, std::abs(s.q));
            std::vector<double> line = to_doubles(s.theta);
            line.insert(line.end(), s.sigma.begin(), s.sigma.end());
            line.push_back(s.q);
            table.push_back(line);
        }
        if (!c.csv_out.empty())
            write_csv(c.csv_out, {"theta_1", "theta_2", "theta_3", "theta_4", "sigma_1", "sigma_2", "sigma_3", "sigma_4", "q"},
                      table);
        r["probe"] = {{"samples", probe}, {"max_abs_q", worst}, {"seed", seed}};
    }
    if (!witness.empty()) r["witness"] = {{"theta", witness}, {"q", to_string(steiner_exact_witness(parse_rational_list(witness)))}};
    r["quartic"] = steiner_quartic().to_string();
    return {r, 0};
}

Outcome solve(const Common& c, const std::string& system, std::uint64_t seed) {
    auto sys = read_system(system);
    auto res = recount_with_seed(sys, seed, derive_seed(seed, 7), tracker(c));
    json r = to_json(res.first);
    r["stable"] = res.stable;
    r["recount"] = res.second.finite_count();
    return {r, res.stable ? 0 : kExitInstability};
}

void emit(const Common& c, const json& j) {
    const std::string text = j.dump(2);
    if (!c.json_out.empty()) {
        std::ofstream out(c.json_out);
        if (!out) throw Error(ErrorKind::Parse, "cannot write " + c.json_out);
        out << text << "\n";
    }
    std::cout << text << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic polynomials, exponential varieties and their degrees"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(HYPEX_VERSION));

    Common c;
    auto common = [&](CLI::App* sub, bool seeded) {
        sub->add_option("--poly", c.poly, "builder string, term list or file");
        sub->add_option("--tau", c.tau, "hyperbolicity direction, comma separated rationals");
        sub->add_option("--tol", c.tol, "tolerance");
        sub->add_option("--threads", c.threads, "worker threads (default: available cores)");
        sub->add_option("--json-out", c.json_out, "also write the JSON result here");
        if (seeded) {
            sub->add_option("--seed", c.seed, "random seed (recorded in the manifest)");
            sub->add_option("--max-paths", c.max_paths, "path budget");
            sub->add_option("--refine-tol", c.refine_tol);
            sub->add_option("--cluster-tol", c.cluster_tol);
        }
    };

    std::string point, sigma, coeffs, kernel = "diagonal", theta, witness, system;
    bool dual = false, closed = false, numeric = false, want_degree = false, want_ml = false, want_lperp = false,
         points = false, degrees = false, extended = false;
    int trials = 200, n = 20, m = 3, verify = 0, r_deg = 0, s_vars = 0, probe = 0;
    long samples = 0;
    double alpha = 0.5;
    std::vector<int> only;

    auto* s_cone = app.add_subcommand("cone-member", "membership in the hyperbolicity cone or its dual");
    common(s_cone, false);
    s_cone->add_option("--point", point, "theta (or sigma with --dual)")->required();
    s_cone->add_flag("--dual", dual, "test the dual cone numerically");

    auto* s_hyp = app.add_subcommand("hyperbolic-check", "randomized hyperbolicity certificate");
    common(s_hyp, true);
    s_hyp->add_option("--trials", trials);

    auto* s_mle = app.add_subcommand("mle", "maximum likelihood estimate");
    common(s_mle, false);
    s_mle->add_option("--sigma", sigma)->required();

    auto* s_fiber = app.add_subcommand("fiber", "all complex preimages of sigma");
    common(s_fiber, true);
    s_fiber->add_option("--sigma", sigma)->required();

    auto* s_md = app.add_subcommand("multidegree", "gradient multidegree");
    common(s_md, true);
    auto* o_closed = s_md->add_flag("--closed-form", closed);
    s_md->add_flag("--numeric", numeric)->excludes(o_closed);
    s_md->add_option("--only", only, "1-based entries to compute numerically")->delimiter(',');

    auto* s_ev = app.add_subcommand("expvar", "degree, ML degree and L-perp test of an exponential variety");
    common(s_ev, true);
    s_ev->add_option("--subspace", c.subspace, "JSON file with rows or equations")->required();
    s_ev->add_flag("--degree", want_degree);
    s_ev->add_flag("--mldegree", want_ml);
    s_ev->add_flag("--lperp", want_lperp);
    s_ev->add_flag("--points", points, "include image points");

    auto* s_lp = app.add_subcommand("lperp", "does the image of L meet L-perp");
    common(s_lp, true);
    s_lp->add_option("--subspace", c.subspace)->required();

    auto* s_cp = app.add_subcommand("central-path", "curve F(L cap C) for a 2-dimensional L");
    common(s_cp, true);
    s_cp->add_option("--subspace", c.subspace)->required();
    s_cp->add_option("--n", n, "samples");
    s_cp->add_option("--csv-out,--csv", c.csv_out);

    auto* s_hk = app.add_subcommand("hankel", "Hankel spaces and the Grassmannian of lines");
    common(s_hk, true);
    s_hk->add_option("--m", m);
    s_hk->add_option("--r", r_deg, "generalized: half degree");
    s_hk->add_option("--s", s_vars, "generalized: number of variables");
    s_hk->add_option("--verify", verify, "random rational Hankel matrices to test");
    s_hk->add_flag("--degrees", degrees, "degree and ML degree of the Hankel model");

    auto* s_gc = app.add_subcommand("gram-center", "analytic center of the Gram spectrahedron");
    common(s_gc, false);
    s_gc->add_option("--coeffs", coeffs, "c_0,...,c_{2m-2}")->required();

    auto* s_rz = app.add_subcommand("riesz-check", "Laplace identity of a Riesz kernel");
    common(s_rz, true);
    s_rz->add_option("--kernel", kernel)->check(CLI::IsMember({"wishart", "diagonal", "quadric3"}));
    s_rz->add_option("--m", m);
    s_rz->add_option("--alpha", alpha);
    s_rz->add_option("--theta", theta)->required();
    s_rz->add_option("--samples", samples, "Monte Carlo samples");

    auto* s_st = app.add_subcommand("steiner", "Steiner quartic checks");
    common(s_st, true);
    s_st->add_option("--probe", probe, "boundary samples");
    s_st->add_option("--witness", witness, "exact theta on E3 = 0");
    s_st->add_option("--csv-out,--csv", c.csv_out);

    auto* s_solve = app.add_subcommand("solve", "total-degree homotopy");
    common(s_solve, true);
    s_solve->add_option("--system", system, "JSON system file")->required();

    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->add_flag("--extended", extended, "accepted for symmetry with the acceptance runner");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    for (auto* o : sub->get_options())
        if (o->get_name() == "--seed" && o->count() > 0) c.seed_given = true;

    Manifest man;
    man.command = sub->get_name();
    man.argv.assign(argv, argv + argc);
    const bool seeded = sub->get_option_no_throw("--seed") != nullptr;
    const std::uint64_t seed = seeded ? seed_of(c) : 0;
    if (seeded) man.seeds.push_back(seed);

    try {
        Outcome out;
        const std::string& name = man.command;
        if (name == "cone-member") out = cone_member(c, point, dual);
        else if (name == "hyperbolic-check") out = hyperbolic_check(c, trials, seed);
        else if (name == "mle") out = run_mle(c, sigma);
        else if (name == "fiber") out = fiber(c, sigma, seed);
        else if (name == "multidegree") out = multidegree(c, closed, numeric, seed, only);
        else if (name == "expvar") {
            if (!want_degree && !want_ml && !want_lperp) want_degree = want_ml = want_lperp = true;
            out = expvar(c, want_degree, want_ml, want_lperp, points, seed);
        } else if (name == "lperp") out = expvar(c, false, false, true, false, seed);
        else if (name == "central-path") out = central_path(c, n, seed);
        else if (name == "hankel") out = hankel(c, m, verify, r_deg, s_vars, degrees, seed);
        else if (name == "gram-center") out = gram_center(c, coeffs);
        else if (name == "riesz-check") out = riesz(c, kernel, m, alpha, theta, samples, seed);
        else if (name == "steiner") out = steiner(c, probe, witness, seed);
        else if (name == "solve") out = solve(c, system, seed);
        emit(c, finish(man, std::move(out.result)));
        return out.code;
    } catch (const Error& e) {
        emit(c, error_json(man, to_string(e.kind()), e.what()));
        return e.kind() == ErrorKind::Instability ? kExitInstability : kExitDomain;
    } catch (const std::exception& e) {
        emit(c, error_json(man, "internal", e.what()));
        return kExitDomain;
    }
}
