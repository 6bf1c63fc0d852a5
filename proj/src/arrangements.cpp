#include <cypair/arrangements.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cypair::arrangements {

CycloNum CycloNum::zeta_pow(int k) {
    int r = ((k % 3) + 3) % 3;
    if (r == 0) return {1, 0};
    if (r == 1) return {0, 1};
    return {-1, -1};  // zeta^2 = -1 - zeta
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw std::domain_error("CycloNum: zero has no inverse");
    Rational n = norm();  // (a + b z)(a + b z^2) = a^2 - ab + b^2 > 0
    CycloNum cj = conj();
    return {cj.a / n, cj.b / n};
}

namespace {

bool zero_triple(const std::array<CycloNum, 3>& c) {
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

bool proportional(const std::array<CycloNum, 3>& p, const std::array<CycloNum, 3>& q) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(p[i] * q[j] - p[j] * q[i]).is_zero()) return false;
    return true;
}

std::array<CycloNum, 3> cross(const std::array<CycloNum, 3>& p, const std::array<CycloNum, 3>& q) {
    return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

CycloNum dot(const std::array<CycloNum, 3>& p, const std::array<CycloNum, 3>& q) {
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
}

}  // namespace

bool same_projective(const ProjPoint& p, const ProjPoint& q) { return proportional(p.c, q.c); }
bool same_projective(const ProjLine& p, const ProjLine& q) { return proportional(p.c, q.c); }

bool incidence(const ProjPoint& p, const ProjLine& l) {
    if (zero_triple(p.c)) throw std::invalid_argument("incidence: zero point");
    if (zero_triple(l.c)) throw std::invalid_argument("incidence: zero line");
    return dot(p.c, l.c).is_zero();
}

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
    if (zero_triple(p.c) || zero_triple(q.c))
        throw std::invalid_argument("line_through: zero point");
    std::array<CycloNum, 3> l = cross(p.c, q.c);
    if (zero_triple(l)) throw std::invalid_argument("line_through: points coincide");
    return ProjLine{l};
}

CycloNum det3(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    return dot(p.c, cross(q.c, r.c));
}

Configuration build_dual_hesse() {
    Configuration cfg;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            cfg.points.push_back(
                ProjPoint{{CycloNum(1), CycloNum::zeta_pow(i), CycloNum::zeta_pow(j)}});
    cfg.points.push_back(ProjPoint{{CycloNum(1), CycloNum(0), CycloNum(0)}});
    cfg.points.push_back(ProjPoint{{CycloNum(0), CycloNum(1), CycloNum(0)}});
    cfg.points.push_back(ProjPoint{{CycloNum(0), CycloNum(0), CycloNum(1)}});

    for (int k = 0; k < 3; ++k)  // y = zeta^k x
        cfg.lines.push_back(ProjLine{{CycloNum::zeta_pow(k), CycloNum(-1), CycloNum(0)}});
    for (int k = 0; k < 3; ++k)  // z = zeta^k x
        cfg.lines.push_back(ProjLine{{CycloNum::zeta_pow(k), CycloNum(0), CycloNum(-1)}});
    for (int k = 0; k < 3; ++k)  // z = zeta^k y
        cfg.lines.push_back(ProjLine{{CycloNum(0), CycloNum::zeta_pow(k), CycloNum(-1)}});

    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
            if (same_projective(cfg.points[i], cfg.points[j]))
                throw std::logic_error("build_dual_hesse: duplicate point");

    cfg.incidence.assign(cfg.points.size(), std::vector<bool>(cfg.lines.size(), false));
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t j = 0; j < cfg.lines.size(); ++j)
            cfg.incidence[i][j] = incidence(cfg.points[i], cfg.lines[j]);
    return cfg;
}

CollinearReport max_collinear(const std::vector<ProjPoint>& points) {
    if (points.size() < 2) throw std::invalid_argument("max_collinear: need at least 2 points");
    CollinearReport best;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (same_projective(points[i], points[j]))
                throw std::invalid_argument("max_collinear: points must be distinct");
            ProjLine l = line_through(points[i], points[j]);
            int count = 0;
            for (const auto& p : points)
                if (incidence(p, l)) ++count;
            if (count > best.count) {
                best.count = count;
                best.witness = l;
            }
        }
    }
    return best;
}

bool general_position_4(const std::vector<ProjPoint>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw std::invalid_argument("general_position_4: need at least 4 points");
    auto indep = [&](int a, int b, int c) { return !det3(points[a], points[b], points[c]).is_zero(); };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    if (indep(a, b, c) && indep(a, b, d) && indep(a, c, d) && indep(b, c, d))
                        return true;
    return false;
}

bool aut_sharp_trivial(const std::vector<ProjPoint>& points) {
    // nontrivial exactly when all points are collinear except at most one
    return max_collinear(points).count < static_cast<int>(points.size()) - 1;
}

std::vector<DivisorClass> strict_transform_classes(const Configuration& cfg) {
    PicardLattice lat{static_cast<int>(cfg.points.size())};
    std::vector<DivisorClass> out;
    out.reserve(cfg.lines.size());
    for (std::size_t j = 0; j < cfg.lines.size(); ++j) {
        std::map<int, int> mults;
        for (std::size_t i = 0; i < cfg.points.size(); ++i)
            if (cfg.incidence[i][j]) mults[static_cast<int>(i) + 1] = 1;
        out.push_back(lattice::curve_class(lat, 1, mults));
    }
    return out;
}

namespace {

std::vector<std::vector<Rational>> sorted_coord_lists(const std::vector<DivisorClass>& cs) {
    std::vector<std::vector<Rational>> v;
    v.reserve(cs.size());
    for (const auto& c : cs) v.push_back(c.coords);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

Verdict check_pair(const PairSpec& spec) {
    Verdict v;
    const int rank = spec.lat.rank();
    for (const auto& comp : spec.components) {
        if (comp.cls.rank() != rank)
            throw std::invalid_argument("check_pair: component rank does not match the lattice");
        if (comp.coefficient <= 0)
            throw std::invalid_argument("check_pair: coefficients must be positive (effective divisor)");
    }

    // (i) numerical triviality of K + Delta, exact
    DivisorClass sum = lattice::canonical_class(spec.lat);
    for (const auto& comp : spec.components) sum = sum + comp.cls * comp.coefficient;
    v.cy = lattice::is_numerically_trivial(sum);
    v.trace.push_back(v.cy ? "K + Delta is numerically trivial (exact)"
                           : "K + Delta is a nonzero class");

    // (ii) coefficient bounds
    v.coefficient_class = CoeffClass::Klt;
    for (const auto& comp : spec.components) {
        if (comp.coefficient > 1) {
            v.coefficient_class = CoeffClass::Fails;
            break;
        }
        if (comp.coefficient == 1) v.coefficient_class = CoeffClass::LcOnly;
    }
    v.trace.push_back("coefficients: " + to_string(v.coefficient_class));

    // (iii) combinatorial normal-crossing check for line arrangements
    v.snc = SncStatus::Unknown;
    bool all_ri = true;
    for (const auto& comp : spec.components) all_ri = all_ri && comp.is_reduced_irreducible;
    if (spec.components.empty()) {
        v.snc = SncStatus::Holds;  // empty support
        v.trace.push_back("snc: empty boundary");
    } else if (!all_ri) {
        v.trace.push_back("snc: unknown, components are not all reduced irreducible");
    } else {
        bool pairwise_ok = true;
        for (std::size_t i = 0; i < spec.components.size() && pairwise_ok; ++i) {
            for (std::size_t j = i + 1; j < spec.components.size() && pairwise_ok; ++j) {
                Rational num =
                    lattice::intersect(spec.lat, spec.components[i].cls, spec.components[j].cls);
                if (num != 0 && num != 1) pairwise_ok = false;
            }
        }
        if (!pairwise_ok) {
            v.trace.push_back("snc: unknown, a pairwise intersection number is outside {0,1}");
        } else if (spec.source.has_value()) {
            const Configuration& cfg = *spec.source;
            bool matches = static_cast<int>(cfg.points.size()) == spec.lat.k;
            if (matches) {
                auto transforms = strict_transform_classes(cfg);
                std::vector<DivisorClass> classes;
                for (const auto& comp : spec.components) classes.push_back(comp.cls);
                matches = sorted_coord_lists(transforms) == sorted_coord_lists(classes);
            }
            if (!matches) {
                v.trace.push_back("snc: unknown, components do not match the attached configuration");
            } else {
                // decisive triple check: three concurrent lines meeting away
                // from the blown points give a genuine triple point
                bool triple_bad = false;
                const auto& L = cfg.lines;
                for (std::size_t a = 0; a < L.size() && !triple_bad; ++a) {
                    for (std::size_t b = a + 1; b < L.size() && !triple_bad; ++b) {
                        std::array<CycloNum, 3> pt = cross(L[a].c, L[b].c);
                        if (zero_triple(pt)) continue;  // coincident lines
                        for (std::size_t c = b + 1; c < L.size() && !triple_bad; ++c) {
                            if (!dot(pt, L[c].c).is_zero()) continue;
                            bool blown = false;
                            for (const auto& p : cfg.points)
                                if (same_projective(p, ProjPoint{pt})) { blown = true; break; }
                            if (!blown) triple_bad = true;
                        }
                    }
                }
                if (triple_bad) {
                    v.snc = SncStatus::Fails;
                    v.trace.push_back("snc: fails, three lines meet at a point that is not blown up");
                } else {
                    v.snc = SncStatus::Holds;
                    v.trace.push_back(
                        "snc: holds, pairwise numbers in {0,1} and all triple points blown up");
                }
            }
        } else if (spec.no_undeclared_triples) {
            v.snc = SncStatus::Holds;
            v.trace.push_back(
                "snc: holds, pairwise numbers in {0,1} and absence of extra triple points attested");
        } else {
            v.trace.push_back("snc: unknown, no coordinates attached and no triple-point attestation");
        }
    }

    // assemble; exact failures are decisive, missing normal-crossing evidence
    // is not, and a failed combinatorial check still leaves the resolution
    // route open, so it stays indeterminate rather than not-CY
    if (!v.cy) {
        v.overall = Overall::NotCy;
    } else if (v.coefficient_class == CoeffClass::Fails) {
        v.overall = Overall::NotCy;
    } else if (v.snc == SncStatus::Holds) {
        v.overall = v.coefficient_class == CoeffClass::Klt ? Overall::KltCy : Overall::LcCy;
    } else {
        v.overall = Overall::Indeterminate;
    }
    v.trace.push_back("overall: " + to_string(v.overall));
    return v;
}

PairSpec dual_hesse_pair() {
    PairSpec spec;
    Configuration cfg = build_dual_hesse();
    spec.lat = PicardLattice{static_cast<int>(cfg.points.size())};
    for (const auto& cls : strict_transform_classes(cfg))
        spec.components.push_back({cls, Rational(1, 3), true});
    spec.source = std::move(cfg);
    return spec;
}

CobleExample build_coble_lattice_example() {
    // blown points: p_ij (1 <= i < j <= 4) as labels 1..6 in lex order,
    // q_1 q_2 q_3 as 7..9, a as 10
    PicardLattice lat{10};
    auto pair_label = [](int i, int j) {
        static const std::map<std::pair<int, int>, int> idx{
            {{1, 2}, 1}, {{1, 3}, 2}, {{1, 4}, 3}, {{2, 3}, 4}, {{2, 4}, 5}, {{3, 4}, 6}};
        return idx.at({std::min(i, j), std::max(i, j)});
    };
    CobleExample out;
    for (int i = 1; i <= 4; ++i) {
        std::map<int, int> mults;
        for (int j = 1; j <= 4; ++j)
            if (j != i) mults[pair_label(i, j)] = 1;
        out.r.push_back(lattice::curve_class(lat, 1, mults));
    }
    out.r.push_back(lattice::curve_class(lat, 1, {{7, 1}, {8, 1}, {9, 1}, {10, 1}}));

    for (int i = 0; i < 4; ++i)
        if (lattice::intersect(lat, out.r[i], out.r[i]) != -2)
            throw std::logic_error("coble example: R_i^2 != -2");
    if (lattice::intersect(lat, out.r[4], out.r[4]) != -3)
        throw std::logic_error("coble example: R_5^2 != -3");
    DivisorClass c6 = out.r[0] + out.r[1] + out.r[2] + out.r[3] + out.r[4] * Rational(2);
    if (!(c6 == lattice::canonical_class(lat) * Rational(-2)))
        throw std::logic_error("coble example: R_1 + ... + 2 R_5 != -2K");

    out.pair.lat = lat;
    for (int i = 0; i < 4; ++i) out.pair.components.push_back({out.r[i], Rational(1, 2), true});
    out.pair.components.push_back({out.r[4], Rational(1), true});
    // the five lines are in general linear position by construction, so no
    // three components meet away from the blown points
    out.pair.no_undeclared_triples = true;
    return out;
}

std::string to_string(SncStatus s) {
    switch (s) {
        case SncStatus::Holds: return "holds";
        case SncStatus::Fails: return "fails";
        default: return "unknown";
    }
}

std::string to_string(CoeffClass c) {
    switch (c) {
        case CoeffClass::Klt: return "KLT";
        case CoeffClass::LcOnly: return "lc-only";
        default: return "fails";
    }
}

std::string to_string(Overall o) {
    switch (o) {
        case Overall::KltCy: return "KLT-CY";
        case Overall::LcCy: return "lc-CY";
        case Overall::NotCy: return "not-CY";
        default: return "indeterminate";
    }
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const CycloNum& x) {
    return {{"a", cypair::to_string(x.a)}, {"b", cypair::to_string(x.b)}};
}

namespace {

nlohmann::json triple_to_json(const std::array<CycloNum, 3>& c) {
    return nlohmann::json::array({to_json(c[0]), to_json(c[1]), to_json(c[2])});
}

Rational rational_field(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected a rational as an integer or \"p/q\" string");
}

std::array<CycloNum, 3> triple_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("expected three homogeneous coordinates");
    std::array<CycloNum, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = cyclo_from_json(j[i]);
    return c;
}

}  // namespace

nlohmann::json to_json(const ProjPoint& p) { return triple_to_json(p.c); }
nlohmann::json to_json(const ProjLine& l) { return triple_to_json(l.c); }

nlohmann::json to_json(const Configuration& cfg) {
    nlohmann::json pts = nlohmann::json::array(), lns = nlohmann::json::array();
    for (const auto& p : cfg.points) pts.push_back(to_json(p));
    for (const auto& l : cfg.lines) lns.push_back(to_json(l));
    return {{"points", pts}, {"lines", lns}};
}

nlohmann::json to_json(const PairSpec& spec) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : spec.components) {
        comps.push_back({{"class", lattice::to_json(c.cls)},
                         {"coefficient", cypair::to_string(c.coefficient)},
                         {"is_reduced_irreducible", c.is_reduced_irreducible}});
    }
    nlohmann::json j{{"points", spec.lat.k},
                     {"components", comps},
                     {"no_undeclared_triples", spec.no_undeclared_triples}};
    if (spec.source) j["configuration"] = to_json(*spec.source);
    return j;
}

nlohmann::json to_json(const Verdict& v) {
    return {{"snc", to_string(v.snc)},
            {"coefficient_class", to_string(v.coefficient_class)},
            {"cy", v.cy},
            {"overall", to_string(v.overall)},
            {"trace", v.trace}};
}

CycloNum cyclo_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b"))
        throw std::invalid_argument("cyclotomic number needs fields a and b");
    return {rational_field(j.at("a")), rational_field(j.at("b"))};
}

Configuration configuration_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("lines"))
        throw std::invalid_argument("configuration needs points and lines");
    Configuration cfg;
    for (const auto& pj : j.at("points")) {
        ProjPoint p{triple_from_json(pj)};
        if (zero_triple(p.c)) throw std::invalid_argument("configuration: zero point");
        cfg.points.push_back(std::move(p));
    }
    for (const auto& lj : j.at("lines")) {
        ProjLine l{triple_from_json(lj)};
        if (zero_triple(l.c)) throw std::invalid_argument("configuration: zero line");
        cfg.lines.push_back(std::move(l));
    }
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t k = i + 1; k < cfg.points.size(); ++k)
            if (same_projective(cfg.points[i], cfg.points[k]))
                throw std::invalid_argument("configuration: duplicate point");
    cfg.incidence.assign(cfg.points.size(), std::vector<bool>(cfg.lines.size(), false));
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t k = 0; k < cfg.lines.size(); ++k)
            cfg.incidence[i][k] = incidence(cfg.points[i], cfg.lines[k]);
    return cfg;
}

PairSpec pair_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("components"))
        throw std::invalid_argument("pair spec needs points and components");
    PairSpec spec;
    spec.lat = PicardLattice{j.at("points").get<int>()};
    if (spec.lat.k < 0) throw std::invalid_argument("pair spec: negative point count");
    for (const auto& cj : j.at("components")) {
        PairComponent comp;
        comp.cls = lattice::divisor_from_json(cj.at("class"));
        comp.coefficient = rational_field(cj.at("coefficient"));
        comp.is_reduced_irreducible = cj.value("is_reduced_irreducible", true);
        spec.components.push_back(std::move(comp));
    }
    spec.no_undeclared_triples = j.value("no_undeclared_triples", false);
    if (j.contains("configuration")) spec.source = configuration_from_json(j.at("configuration"));
    return spec;
}

}  // namespace cypair::arrangements
