#include <cypair/actions.hpp>
#include <cypair/arrangements.hpp>
#include <cypair/cohom.hpp>
#include <cypair/lattice.hpp>
#include <cypair/models.hpp>
#include <cypair/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

// Batch command surface over the library. Every subcommand prints one JSON
// report {command, inputs, seed, results, pass} on stdout and exits 0 when the
// report passes, 1 when a computed check fails, 2 on usage errors or malformed
// input. Reports are deterministic for fixed inputs and seed.
namespace {

using nlohmann::json;
namespace models = cypair::models;
namespace actions = cypair::actions;
namespace lattice = cypair::lattice;
namespace arr = cypair::arrangements;
namespace cohom = cypair::cohom;

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.what() carries the byte/line position
        throw std::invalid_argument(origin + ": " + e.what());
    }
}

// inline JSON when the argument starts with '[' or '{', else a file path
json load_json(const std::string& arg, const std::string& flag) {
    size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{'))
        return parse_json_text(arg, flag);
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument(flag + ": cannot open file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), arg);
}

int emit(const std::string& command, json inputs, std::uint64_t seed, json results, bool pass) {
    json rep = {{"command", command},
                {"inputs", std::move(inputs)},
                {"seed", seed},
                {"results", std::move(results)},
                {"pass", pass}};
    std::cout << rep.dump(2) << "\n";
    return pass ? 0 : 1;
}

models::HyperboloidPoint parse_hyperboloid(const std::string& arg, const std::string& flag,
                                           double tol) {
    models::HyperboloidPoint p{models::vec_from_json(load_json(arg, flag))};
    models::check_hyperboloid_point(p, tol);
    return p;
}

std::vector<models::Isometry> parse_generators(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("generators: expected a nonempty array of matrices");
    std::vector<models::Isometry> gens;
    for (const auto& e : j) {
        if (e.is_array())
            gens.push_back(models::make_isometry(models::mat_from_json(e), 1e-6));
        else
            gens.push_back(models::isometry_from_json(e));
    }
    return gens;
}

arr::CycloNum cyclo_flex(const json& j) {
    if (j.is_object()) return arr::cyclo_from_json(j);
    if (j.is_number_integer()) return arr::CycloNum(cypair::Rational(j.get<long long>()));
    if (j.is_string()) return arr::CycloNum(cypair::parse_rational(j.get<std::string>()));
    throw std::invalid_argument("cyclotomic entry must be {a,b}, an integer or a \"p/q\" string");
}

std::vector<arr::ProjPoint> parse_proj_points(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("points: expected an array");
    std::vector<arr::ProjPoint>pts;
    for (const auto& pj : j) {
        if (!pj.is_array() || pj.size() != 3)
            throw std::invalid_argument("points: each point needs three homogeneous coordinates");
        arr::ProjPoint p;
        for (int i = 0; i < 3; ++i) p.c[i] = cyclo_flex(pj[i]);
        pts.push_back(std::move(p));
    }
    return pts;
}

cypair::BigInt bigint_flex(const json& j, const std::string& what) {
    if (j.is_number_integer()) return cypair::BigInt(j.get<long long>());
    if (j.is_string()) {
        try {
            return cypair::BigInt(j.get<std::string>());
        } catch (const std::runtime_error&) {
        }
    }
    throw std::invalid_argument(what + " must be integers");
}

cohom::IntMatrix2 int_matrix_flex(const json& j) {
    if (j.is_array() && j.size() == 4) {
        json wrapped = {{"entries", j}};
        return cohom::int_matrix_from_json(wrapped);
    }
    return cohom::int_matrix_from_json(j);
}

// fixed-size chunks so reports do not depend on the worker count
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < count;) body(i);
        });
    for (auto& th : pool) th.join();
}

std::uint64_t chunk_seed(std::uint64_t seed, int chunk) {
    return seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(chunk + 1));
}

json polyhedron_stats(const actions::Polyhedron& poly, std::uint64_t seed) {
    auto ball = actions::chebyshev_ball(poly, seed);
    return {{"sides", poly.halfspaces.size()},
            {"inradius", ball.feasible ? ball.radius : 0.0},
            {"degenerate", poly.degenerate}};
}

// --- lattice ------------------------------------------------------------

int run_lattice_intersect(const std::string& u_arg, const std::string& v_arg) {
    auto u = lattice::divisor_from_json(load_json(u_arg, "--u"));
    auto v = lattice::divisor_from_json(load_json(v_arg, "--v"));
    if (u.rank() != v.rank() || u.rank() < 1)
        throw std::invalid_argument("--u and --v must be nonempty and of equal length");
    lattice::PicardLattice lat{u.rank() - 1};
    auto prod = lattice::intersect(lat, u, v);
    json inputs = {{"u", lattice::to_json(u)}, {"v", lattice::to_json(v)}};
    json results = {{"product", cypair::to_string(prod)}, {"rank", lat.rank()}};
    return emit("lattice intersect", inputs, 0, results, true);
}

int run_lattice_canonical(int points) {
    if (points < 0) throw std::invalid_argument("--points must be >= 0");
    lattice::PicardLattice lat{points};
    auto K = lattice::canonical_class(lat);
    auto sq = lattice::intersect(lat, K, K);
    json inputs = {{"points", points}};
    json results = {{"class", lattice::to_json(K)}, {"square", cypair::to_string(sq)}};
    return emit("lattice canonical", inputs, 0, results, true);
}

// --- models ---------------------------------------------------------------

models::HyperboloidPoint point_in_model(const models::Vec& v, const std::string& model,
                                        double tol) {
    if (model == "hyperboloid") {
        models::HyperboloidPoint p{v};
        models::check_hyperboloid_point(p, tol);
        return p;
    }
    if (v.norm() >= 1.0)
        throw std::invalid_argument("--point: " + model + " coordinates must have norm < 1");
    if (model == "klein") return models::to_hyperboloid(models::KleinPoint{v});
    return models::to_hyperboloid(models::PoincarePoint{v});
}

int run_models_convert(const std::string& point_arg, const std::string& from,
                       const std::string& to, double tol) {
    auto v = models::vec_from_json(load_json(point_arg, "--point"));
    auto h = point_in_model(v, from, tol);
    json out;
    if (to == "hyperboloid")
        out = models::to_json(h);
    else if (to == "klein")
        out = models::to_json(models::to_klein(h));
    else
        out = models::to_json(models::to_poincare(h));
    json inputs = {{"point", load_json(point_arg, "--point")}, {"from", from}, {"to", to}};
    return emit("models convert", inputs, 0, {{"point", out}}, true);
}

int run_models_distance(const std::string& u_arg, const std::string& v_arg, double tol) {
    auto u = parse_hyperboloid(u_arg, "--u", tol);
    auto v = parse_hyperboloid(v_arg, "--v", tol);
    json inputs = {{"u", load_json(u_arg, "--u")}, {"v", load_json(v_arg, "--v")}};
    double d = models::distance(u, v, tol);
    return emit("models distance", inputs, 0, {{"distance", d}}, true);
}

int run_models_classify(const std::string& matrix_arg, double tol) {
    json mj = load_json(matrix_arg, "--matrix");
    models::Isometry g = mj.is_array()
                             ? models::make_isometry(models::mat_from_json(mj), 1e-6)
                             : models::isometry_from_json(mj);
    auto cls = models::classify_isometry(g, tol);
    json results = {{"type", models::to_string(cls.type)},
                    {"translation_length", cls.translation_length}};
    return emit("models classify", {{"matrix", mj}}, 0, results, true);
}

int run_models_cat0(const std::string& a_arg, const std::string& b_arg, const std::string& c_arg,
                    int dim, int samples, std::uint64_t seed, double tol, int jobs) {
    if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
    models::HyperboloidPoint a, b, c;
    bool given = !a_arg.empty() || !b_arg.empty() || !c_arg.empty();
    if (given) {
        if (a_arg.empty() || b_arg.empty() || c_arg.empty())
            throw std::invalid_argument("give all of --a, --b, --c or none");
        a = parse_hyperboloid(a_arg, "--a", tol);
        b = parse_hyperboloid(b_arg, "--b", tol);
        c = parse_hyperboloid(c_arg, "--c", tol);
    } else {
        std::mt19937_64 rng(seed);
        a = models::random_point(dim, rng);
        b = models::random_point(dim, rng);
        c = models::random_point(dim, rng);
    }
    const int chunk = 256;
    int chunks = (samples + chunk - 1) / chunk;
    std::vector<double> violation(chunks, 0.0);
    parallel_for(chunks, jobs, [&](int i) {
        int cnt = std::min(chunk, samples - i * chunk);
        violation[i] = models::cat0_check(a, b, c, cnt, chunk_seed(seed, i)).max_violation;
    });
    double maxv = 0.0;
    for (double v : violation) maxv = std::max(maxv, v);
    bool pass = maxv <= tol;
    json inputs = {{"dim", a.dim()}, {"samples", samples}, {"tolerance", tol},
                   {"random_triangle", !given}};
    json results = {{"max_violation", maxv},
                    {"samples", samples},
                    {"vertices", {models::to_json(a), models::to_json(b), models::to_json(c)}}};
    return emit("models cat0-sample", inputs, seed, results, pass);
}

// --- actions ----------------------------------------------------------------

int run_actions_dirichlet(const std::string& gens_arg, int L, const std::string& base_arg,
                          std::uint64_t seed, double tol, std::size_t cap) {
    auto gens = parse_generators(load_json(gens_arg, "--gens"));
    auto elems = actions::word_ball(gens, L, cap);
    models::HyperboloidPoint base = base_arg.empty()
                                        ? models::basepoint(gens.front().dim())
                                        : parse_hyperboloid(base_arg, "--base", tol);
    auto dom = actions::dirichlet_domain(elems, base, nullptr, true, seed);
    json inputs = {{"generators", gens.size()}, {"word_length", L},
                   {"ball_size", elems.words.size()}};
    json results = {{"polyhedron", actions::to_json(dom)}, {"stats", polyhedron_stats(dom, seed)}};
    return emit("actions dirichlet", inputs, seed, results, true);
}

int run_actions_proper_count(const std::string& gens_arg, int L, const std::string& point_arg,
                             double radius, double tol, std::size_t cap) {
    auto gens = parse_generators(load_json(gens_arg, "--gens"));
    auto elems = actions::word_ball(gens, L, cap);
    models::HyperboloidPoint x = point_arg.empty()
                                     ? models::basepoint(gens.front().dim())
                                     : parse_hyperboloid(point_arg, "--point", tol);
    int count = actions::proper_action_count(elems, x, radius);
    json inputs = {{"generators", gens.size()}, {"word_length", L}, {"radius", radius},
                   {"ball_size", elems.words.size()}};
    return emit("actions proper-count", inputs, 0, {{"count", count}}, true);
}

int run_actions_limit_set(const std::string& gens_arg, int L, const std::string& point_arg,
                          double min_norm, std::uint64_t seed, double tol, std::size_t cap) {
    auto gens = parse_generators(load_json(gens_arg, "--gens"));
    auto elems = actions::word_ball(gens, L, cap);
    models::HyperboloidPoint x = point_arg.empty()
                                     ? models::basepoint(gens.front().dim())
                                     : parse_hyperboloid(point_arg, "--point", tol);
    auto pts = actions::limit_points(elems, x, min_norm);
    json pjson = json::array();
    std::vector<models::Vec> klein;
    for (const auto& p : pts) {
        pjson.push_back(models::to_json(p));
        klein.push_back(models::to_klein(p));
    }
    json hull;
    json stats;
    if (!pts.empty() && gens.front().dim() <= 4) {
        auto poly = actions::klein_convex_hull(klein, seed);
        hull = actions::to_json(poly);
        stats = polyhedron_stats(poly, seed);
    }
    json inputs = {{"generators", gens.size()}, {"word_length", L}, {"min_norm", min_norm},
                   {"ball_size", elems.words.size()}};
    json results = {{"count", pts.size()}, {"points", pjson}, {"hull", hull}, {"stats", stats}};
    return emit("actions limit-set", inputs, seed, results, true);
}

int run_actions_project_cone(const std::string& rays_arg, std::uint64_t seed) {
    json rj = load_json(rays_arg, "--rays");
    if (!rj.is_array() || rj.empty())
        throw std::invalid_argument("--rays: expected a nonempty array of vectors");
    actions::ConeSpec cone;
    for (const auto& e : rj) cone.rays.push_back(models::vec_from_json(e));
    auto proj = actions::project_cone(cone, seed);
    json results = {{"projection", actions::to_json(proj)},
                    {"stats", polyhedron_stats(proj.hull, seed)}};
    return emit("actions project-cone", {{"rays", cone.rays.size()}}, seed, results, true);
}

int run_actions_shrink(const std::string& horoballs_arg, const std::string& domain_arg) {
    json hj = load_json(horoballs_arg, "--horoballs");
    if (!hj.is_array() || hj.empty())
        throw std::invalid_argument("--horoballs: expected a nonempty array");
    std::vector<models::Horoball> balls;
    for (const auto& e : hj) balls.push_back(models::horoball_from_json(e));
    auto dom = actions::polyhedron_from_json(load_json(domain_arg, "--domain"));
    auto shrunk = actions::shrink_horoballs(balls, dom);
    json out = json::array(), radii = json::array();
    for (const auto& h : shrunk) {
        out.push_back(models::to_json(h));
        radii.push_back(models::horoball_to_euclidean(h).radius);
    }
    json inputs = {{"horoballs", balls.size()}, {"domain_sides", dom.halfspaces.size()}};
    return emit("actions shrink", inputs, 0, {{"horoballs", out}, {"radii", radii}}, true);
}

int run_actions_complement_path(const std::string& x_arg, const std::string& y_arg,
                                const std::string& horoball_arg, double tol) {
    auto x = parse_hyperboloid(x_arg, "--x", tol);
    auto y = parse_hyperboloid(y_arg, "--y", tol);
    auto h = models::horoball_from_json(load_json(horoball_arg, "--horoball"));
    auto path = actions::complement_path(x, y, h);
    double direct = models::distance(x, y);
    json inputs = {{"x", load_json(x_arg, "--x")}, {"y", load_json(y_arg, "--y")},
                   {"horoball", models::to_json(h)}};
    json results = {{"path", actions::to_json(path)},
                    {"direct_distance", direct},
                    {"excess", path.length - direct}};
    return emit("actions complement-path", inputs, 0, results, path.length >= direct - tol);
}

// --- arrange ---------------------------------------------------------------

int run_arrange_dual_hesse() {
    auto cfg = arr::build_dual_hesse();
    bool rows3 = true, cols4 = true;
    for (const auto& row : cfg.incidence) {
        int s = 0;
        for (bool b : row) s += b;
        rows3 = rows3 && s == 3;
    }
    for (size_t l = 0; l < cfg.lines.size(); ++l) {
        int s = 0;
        for (const auto& row : cfg.incidence) s += row[l];
        cols4 = cols4 && s == 4;
    }
    auto rep = arr::max_collinear(cfg.points);
    bool sharp = arr::aut_sharp_trivial(cfg.points);
    auto verdict = arr::check_pair(arr::dual_hesse_pair());
    bool pass = rows3 && cols4 && verdict.overall == arr::Overall::KltCy;
    json results = {{"points", cfg.points.size()},
                    {"lines", cfg.lines.size()},
                    {"lines_per_point", rows3 ? 3 : -1},
                    {"points_per_line", cols4 ? 4 : -1},
                    {"max_collinear", rep.count},
                    {"aut_sharp", sharp},
                    {"verdict", arr::to_json(verdict)},
                    {"configuration", arr::to_json(cfg)}};
    return emit("arrange dual-hesse", json::object(), 0, results, pass);
}

int run_arrange_coble() {
    auto ex = arr::build_coble_lattice_example();
    auto verdict = arr::check_pair(ex.pair);
    json squares = json::array();
    for (const auto& r : ex.r)
        squares.push_back(cypair::to_string(lattice::intersect(ex.pair.lat, r, r)));
    auto boundary = lattice::zero_class(ex.pair.lat);
    for (int i = 0; i < 4; ++i) boundary = boundary + ex.r[i];
    boundary = boundary + ex.r[4] * cypair::Rational(2);
    auto K = lattice::canonical_class(ex.pair.lat);
    bool trivial = lattice::is_numerically_trivial(boundary + K * cypair::Rational(2));
    bool pass = verdict.overall == arr::Overall::LcCy && trivial;
    json results = {{"rank", ex.pair.lat.rank()},
                    {"component_squares", squares},
                    {"boundary_plus_2k_trivial", trivial},
                    {"verdict", arr::to_json(verdict)}};
    return emit("arrange coble", json::object(), 0, results, pass);
}

int run_arrange_check_pair(const std::string& pair_arg) {
    auto spec = arr::pair_from_json(load_json(pair_arg, "--pair"));
    auto verdict = arr::check_pair(spec);
    bool pass = verdict.overall == arr::Overall::KltCy || verdict.overall == arr::Overall::LcCy;
    json inputs = {{"components", spec.components.size()}, {"rank", spec.lat.rank()},
                   {"has_coordinates", spec.source.has_value()}};
    return emit("arrange check-pair", inputs, 0, {{"verdict", arr::to_json(verdict)}}, pass);
}

int run_arrange_aut_sharp(const std::string& points_arg, const std::string& config_arg) {
    std::vector<arr::ProjPoint> pts;
    json inputs;
    if (!config_arg.empty()) {
        auto cfg = arr::configuration_from_json(load_json(config_arg, "--config"));
        pts = cfg.points;
        inputs = {{"points", pts.size()}, {"lines", cfg.lines.size()}};
    } else {
        pts = parse_proj_points(load_json(points_arg, "--points"));
        inputs = {{"points", pts.size()}};
    }
    auto rep = arr::max_collinear(pts);
    bool gen4 = arr::general_position_4(pts);
    bool sharp = arr::aut_sharp_trivial(pts);
    json results = {{"max_collinear", rep.count},
                    {"general_position_4", gen4},
                    {"aut_sharp", sharp}};
    if (rep.witness) results["witness_line"] = arr::to_json(*rep.witness);
    return emit("arrange aut-sharp", inputs, 0, results, sharp);
}

// --- cohom -------------------------------------------------------------

int run_cohom_h1(const std::string& table_arg) {
    auto g = cohom::finite_group_from_json(load_json(table_arg, "--table"));
    auto r = cohom::h1_z2(g);
    json inputs = {{"order", g.order}};
    return emit("cohom h1", inputs, 0, cohom::to_json(r), true);
}

int run_cohom_semidirect(const std::string& table_arg) {
    auto g = cohom::finite_group_from_json(load_json(table_arg, "--table"));
    auto s = cohom::semidirect_order2_classes(g);
    bool pass = s.map_well_defined && s.map_surjective;
    json inputs = {{"order", g.order}};
    return emit("cohom semidirect", inputs, 0, cohom::to_json(s), pass);
}

int run_cohom_free_check(const std::string& gens_arg, long long shear, int L,
                         const std::string& center_arg, const std::string& entry_limit) {
    std::vector<cohom::IntMatrix2> gens;
    json inputs;
    if (!gens_arg.empty()) {
        json gj = load_json(gens_arg, "--gens");
        if (!gj.is_array() || gj.empty())
            throw std::invalid_argument("--gens: expected a nonempty array of 2x2 matrices");
        for (const auto& e : gj) gens.push_back(int_matrix_flex(e));
        inputs = {{"generators", gens.size()}, {"word_length", L}};
    } else {
        gens = cohom::shear_pair(cypair::BigInt(shear));
        inputs = {{"shear", shear}, {"word_length", L}};
    }
    std::vector<cypair::BigInt> center;
    if (!center_arg.empty()) {
        json cj = load_json(center_arg, "--center");
        if (!cj.is_array()) throw std::invalid_argument("--center: expected an array of scalars");
        for (const auto& e : cj) center.push_back(bigint_flex(e, "--center scalars"));
    }
    auto res = cohom::no_relation_search(gens, L, center,
                                         entry_limit.empty() ? cypair::BigInt(0)
                                                             : cypair::BigInt(entry_limit));
    return emit("cohom free-check", inputs, 0, cohom::to_json(res), res.free_up_to_len);
}

int run_cohom_pingpong(int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> num(-999, 999), den(1, 999);
    std::vector<std::pair<cypair::Rational, cypair::Rational>> pts;
    pts.reserve(samples);
    while (static_cast<int>(pts.size()) < samples) {
        cypair::Rational x(num(rng), den(rng)), y(num(rng), den(rng));
        if (x == 0 && y == 0) continue;
        pts.emplace_back(std::move(x), std::move(y));
    }
    bool ok = cohom::pingpong_witness(pts);
    json inputs = {{"samples", samples}};
    return emit("cohom pingpong", inputs, seed, {{"witness", ok}, {"samples", samples}}, ok);
}

int run_cohom_mod_center(const std::string& pairs_arg) {
    json pj = load_json(pairs_arg, "--pairs");
    if (!pj.is_array() || pj.empty())
        throw std::invalid_argument("--pairs: expected a nonempty array of matrix pairs");
    std::vector<std::pair<cohom::CycloMatrix2, cohom::CycloMatrix2>> pairs;
    for (const auto& e : pj) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("--pairs: each entry must be a pair of matrices");
        pairs.emplace_back(cohom::cyclo_matrix_from_json(e[0]),
                           cohom::cyclo_matrix_from_json(e[1]));
    }
    auto flags = cohom::distinct_mod_center(pairs);
    bool all = true;
    for (bool b : flags) all = all && b;
    json results = {{"distinct", flags}, {"all_distinct", all}};
    return emit("cohom mod-center", {{"pairs", pairs.size()}}, 0, results, all);
}

// --- verify ------------------------------------------------------------

int run_verify() {
    auto checks = cypair::verify::run_all_checks();
    json results = cypair::verify::to_json(checks);
    bool pass = results.at("pass").get<bool>();
    return emit("verify", json::object(), 0, results, pass);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic lattices, model geometry, group actions and exact arrangements"};
    app.require_subcommand(1);
    int rc = 0;

    // shared option storage; CLI11 callbacks run during parse, so plain locals
    struct {
        std::string u, v, point, matrix, a, b, c;
        std::string gens, base, rays, horoballs, domain, x, y, horoball;
        std::string pair, points, config, table, center, pairs, entry_limit;
        std::uint64_t seed = 0;
        double tolerance = 1e-9;
        int word_length = 6;
        int samples = 1000;
        int jobs = 1;
        int dim = 2;
        int k = 0;
        long long shear = 2;
        double radius = 1.0;
        double min_norm = 0.999;
        std::size_t cap = 100000;
    } o;

    auto add_seed = [&](CLI::App* s) { s->add_option("--seed", o.seed, "RNG seed (default 0)"); };
    auto add_tol = [&](CLI::App* s) {
        s->add_option("--tolerance", o.tolerance, "numeric tolerance (default 1e-9)");
    };
    auto add_len = [&](CLI::App* s) {
        s->add_option("--word-length", o.word_length, "word length bound L (default 6)");
    };

    auto* lat = app.add_subcommand("lattice", "exact divisor-class arithmetic");
    lat->require_subcommand(1);
    auto* lat_int = lat->add_subcommand("intersect", "intersection product of two classes");
    lat_int->add_option("--u", o.u, "divisor class, JSON array of rationals")->required();
    lat_int->add_option("--v", o.v, "divisor class, JSON array of rationals")->required();
    lat_int->callback([&] { rc = run_lattice_intersect(o.u, o.v); });
    auto* lat_can = lat->add_subcommand("canonical", "canonical class of a blow-up lattice");
    lat_can->add_option("--points", o.k, "number of blown-up points")->required();
    lat_can->callback([&] { rc = run_lattice_canonical(o.k); });

    auto* mod = app.add_subcommand("models", "hyperbolic-space models and isometries");
    mod->require_subcommand(1);
    auto* mod_conv = mod->add_subcommand("convert", "convert a point between models");
    mod_conv->add_option("--point", o.point, "coordinates, JSON array")->required();
    mod_conv->add_option("--from", o.u, "hyperboloid|klein|poincare")
        ->required()
        ->check(CLI::IsMember({"hyperboloid", "klein", "poincare"}));
    mod_conv->add_option("--to", o.v, "hyperboloid|klein|poincare")
        ->required()
        ->check(CLI::IsMember({"hyperboloid", "klein", "poincare"}));
    add_tol(mod_conv);
    mod_conv->callback([&] { rc = run_models_convert(o.point, o.u, o.v, o.tolerance); });
    auto* mod_dist = mod->add_subcommand("distance", "distance between hyperboloid points");
    mod_dist->add_option("--u", o.u, "hyperboloid point, JSON array")->required();
    mod_dist->add_option("--v", o.v, "hyperboloid point, JSON array")->required();
    add_tol(mod_dist);
    mod_dist->callback([&] { rc = run_models_distance(o.u, o.v, o.tolerance); });
    auto* mod_cls = mod->add_subcommand("classify", "elliptic/parabolic/hyperbolic type");
    mod_cls->add_option("--matrix", o.matrix, "isometry matrix, JSON")->required();
    add_tol(mod_cls);
    mod_cls->callback([&] { rc = run_models_classify(o.matrix, o.tolerance); });
    auto* mod_cat = mod->add_subcommand("cat0-sample", "comparison-triangle thinness sampling");
    mod_cat->add_option("--a", o.a, "triangle vertex, hyperboloid JSON");
    mod_cat->add_option("--b", o.b, "triangle vertex, hyperboloid JSON");
    mod_cat->add_option("--c", o.c, "triangle vertex, hyperboloid JSON");
    mod_cat->add_option("--dim", o.dim, "dimension for random triangles (default 2)");
    mod_cat->add_option("--samples", o.samples, "sample count (default 1000)");
    mod_cat->add_option("--jobs", o.jobs,
                        "worker threads; reports do not depend on this (default 1)");
    add_seed(mod_cat);
    add_tol(mod_cat);
    mod_cat->callback([&] {
        rc = run_models_cat0(o.a, o.b, o.c, o.dim, o.samples, o.seed, o.tolerance, o.jobs);
    });

    auto* act = app.add_subcommand("actions", "discrete group actions on hyperbolic space");
    act->require_subcommand(1);
    auto* act_dir = act->add_subcommand("dirichlet", "Dirichlet domain of a word ball");
    act_dir->add_option("--gens", o.gens, "generator matrices, JSON array or file")->required();
    act_dir->add_option("--base", o.base, "base point, hyperboloid JSON (default e0)");
    act_dir->add_option("--element-cap", o.cap, "word-ball size cap (default 100000)");
    add_len(act_dir);
    add_seed(act_dir);
    add_tol(act_dir);
    act_dir->callback([&] {
        rc = run_actions_dirichlet(o.gens, o.word_length, o.base, o.seed, o.tolerance, o.cap);
    });
    auto* act_cnt = act->add_subcommand("proper-count", "orbit points within 2r of a point");
    act_cnt->add_option("--gens", o.gens, "generator matrices, JSON array or file")->required();
    act_cnt->add_option("--point", o.point, "test point, hyperboloid JSON (default e0)");
    act_cnt->add_option("--radius", o.radius, "ball radius r (default 1)");
    act_cnt->add_option("--element-cap", o.cap, "word-ball size cap (default 100000)");
    add_len(act_cnt);
    add_tol(act_cnt);
    act_cnt->callback([&] {
        rc = run_actions_proper_count(o.gens, o.word_length, o.point, o.radius, o.tolerance,
                                      o.cap);
    });
    auto* act_lim = act->add_subcommand("limit-set", "accumulation directions of an orbit");
    act_lim->add_option("--gens", o.gens, "generator matrices, JSON array or file")->required();
    act_lim->add_option("--point", o.point, "orbit base point, hyperboloid JSON (default e0)");
    act_lim->add_option("--min-norm", o.min_norm, "Klein-norm threshold (default 0.999)");
    act_lim->add_option("--element-cap", o.cap, "word-ball size cap (default 100000)");
    add_len(act_lim);
    add_seed(act_lim);
    add_tol(act_lim);
    act_lim->callback([&] {
        rc = run_actions_limit_set(o.gens, o.word_length, o.point, o.min_norm, o.seed,
                                   o.tolerance, o.cap);
    });
    auto* act_cone = act->add_subcommand("project-cone", "Klein projection of cone rays");
    act_cone->add_option("--rays", o.rays, "ray vectors, JSON array or file")->required();
    add_seed(act_cone);
    act_cone->callback([&] { rc = run_actions_project_cone(o.rays, o.seed); });
    auto* act_shr = act->add_subcommand("shrink", "shrink horoballs to the antipode condition");
    act_shr->add_option("--horoballs", o.horoballs, "horoball list, JSON array or file")
        ->required();
    act_shr->add_option("--domain", o.domain, "convex region, polyhedron JSON or file")
        ->required();
    act_shr->callback([&] { rc = run_actions_shrink(o.horoballs, o.domain); });
    auto* act_cp = act->add_subcommand("complement-path", "shortest path avoiding a horoball");
    act_cp->add_option("--x", o.x, "start point, hyperboloid JSON")->required();
    act_cp->add_option("--y", o.y, "end point, hyperboloid JSON")->required();
    act_cp->add_option("--horoball", o.horoball, "horoball {base:{coords},level}, JSON or file")
        ->required();
    add_tol(act_cp);
    act_cp->callback([&] {
        rc = run_actions_complement_path(o.x, o.y, o.horoball, o.tolerance);
    });

    auto* ar = app.add_subcommand("arrange", "exact projective configurations and pair checks");
    ar->require_subcommand(1);
    auto* ar_dh = ar->add_subcommand("dual-hesse", "the 12-point 9-line configuration");
    ar_dh->callback([&] { rc = run_arrange_dual_hesse(); });
    auto* ar_cb = ar->add_subcommand("coble", "the rank-11 half-coefficient example");
    ar_cb->callback([&] { rc = run_arrange_coble(); });
    auto* ar_cp = ar->add_subcommand("check-pair", "verdict for a pair specification");
    ar_cp->add_option("--pair", o.pair, "pair spec, JSON or file")->required();
    ar_cp->callback([&] { rc = run_arrange_check_pair(o.pair); });
    auto* ar_as = ar->add_subcommand("aut-sharp", "collinearity profile of a point set");
    ar_as->add_option("--points", o.points, "points, JSON array of coordinate triples");
    ar_as->add_option("--config", o.config, "configuration JSON or file");
    ar_as->callback([&] {
        if (o.points.empty() == o.config.empty())
            throw CLI::ValidationError("aut-sharp", "give exactly one of --points or --config");
        rc = run_arrange_aut_sharp(o.points, o.config);
    });

    auto* co = app.add_subcommand("cohom", "involutions on finite groups and matrix certificates");
    co->require_subcommand(1);
    auto* co_h1 = co->add_subcommand("h1", "twisted classes for a marked involution");
    co_h1->add_option("--table", o.table, "group table JSON or file")->required();
    co_h1->callback([&] { rc = run_cohom_h1(o.table); });
    auto* co_sd = co->add_subcommand("semidirect", "order-2 conjugacy classes in A x| Z/2");
    co_sd->add_option("--table", o.table, "group table JSON or file")->required();
    co_sd->callback([&] { rc = run_cohom_semidirect(o.table); });
    auto* co_fc = co->add_subcommand("free-check", "exhaustive relation search for 2x2 matrices");
    co_fc->add_option("--gens", o.gens, "generator matrices, JSON array or file");
    co_fc->add_option("--shear", o.shear,
                      "use the elementary shear pair with this parameter (default 2)");
    co_fc->add_option("--center", o.center, "scalars s with s*I treated as trivial, JSON array");
    co_fc->add_option("--entry-limit", o.entry_limit, "abort when any entry exceeds this");
    add_len(co_fc);
    co_fc->callback([&] {
        rc = run_cohom_free_check(o.gens, o.shear, o.word_length, o.center, o.entry_limit);
    });
    auto* co_pp = co->add_subcommand("pingpong", "sampled two-set criterion for the shear pair");
    co_pp->add_option("--samples", o.samples, "sample count (default 1000)");
    add_seed(co_pp);
    co_pp->callback([&] { rc = run_cohom_pingpong(o.samples, o.seed); });
    auto* co_mc = co->add_subcommand("mod-center", "pairwise distinctness modulo cube-root scalars");
    co_mc->add_option("--pairs", o.pairs, "matrix pairs, JSON array or file")->required();
    co_mc->callback([&] { rc = run_cohom_mod_center(o.pairs); });

    auto* ver = app.add_subcommand("verify", "run the built-in verification suite");
    ver->callback([&] { rc = run_verify(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
