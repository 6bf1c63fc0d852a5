#include <doctest.h>

#include <cypair/arrangements.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace cypair;
using namespace cypair::arrangements;

namespace {

ProjPoint pt(int x, int y, int z) {
    return ProjPoint{{CycloNum(Rational(x)), CycloNum(Rational(y)), CycloNum(Rational(z))}};
}

ProjPoint zeta_point(int i, int j) {
    return ProjPoint{{CycloNum(1), CycloNum::zeta_pow(i), CycloNum::zeta_pow(j)}};
}

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
    CycloNum z = CycloNum::zeta_pow(1);
    CHECK(z * z == CycloNum::zeta_pow(2));
    CHECK(z * z * z == CycloNum(1));
    CHECK(CycloNum(1) + z + z * z == CycloNum());
    CHECK(CycloNum::zeta_pow(-1) == CycloNum::zeta_pow(2));
    CHECK(CycloNum::zeta_pow(7) == z);

    CycloNum x(Rational(3, 2), Rational(-1, 3));
    CycloNum y(Rational(-2), Rational(5, 7));
    CHECK((x + y) - y == x);
    CHECK(x * y == y * x);
    CHECK(x * (y + CycloNum(1)) == x * y + x);
    CHECK((x * y) * z == x * (y * z));

    // conjugation and norm
    CHECK(x * x.conj() == CycloNum(x.norm()));
    CHECK((x * y).norm() == x.norm() * y.norm());

    // inverses
    CHECK(x * x.inverse() == CycloNum(1));
    CHECK(z * z.inverse() == CycloNum(1));
    CHECK_THROWS_AS(CycloNum().inverse(), std::domain_error);
}

TEST_CASE("dual hesse configuration counts") {
    Configuration cfg = build_dual_hesse();
    REQUIRE(cfg.points.size() == 12);
    REQUIRE(cfg.lines.size() == 9);

    // each point on exactly 3 lines, each line through exactly 4 points
    for (std::size_t i = 0; i < cfg.points.size(); ++i) {
        int row = 0;
        for (std::size_t j = 0; j < cfg.lines.size(); ++j) row += cfg.incidence[i][j] ? 1 : 0;
        CHECK(row == 3);
    }
    for (std::size_t j = 0; j < cfg.lines.size(); ++j) {
        int col = 0;
        for (std::size_t i = 0; i < cfg.points.size(); ++i) col += cfg.incidence[i][j] ? 1 : 0;
        CHECK(col == 4);
    }
}

TEST_CASE("incidence basics") {
    Configuration cfg = build_dual_hesse();
    const ProjLine& y_eq_x = cfg.lines[0];
    CHECK(incidence(pt(1, 1, 1), y_eq_x));
    CHECK_FALSE(incidence(pt(1, 0, 0), y_eq_x));
    CHECK(incidence(pt(0, 0, 1), y_eq_x));

    CHECK_THROWS_AS(incidence(pt(0, 0, 0), y_eq_x), std::invalid_argument);
    CHECK_THROWS_AS(incidence(pt(1, 1, 1), ProjLine{}), std::invalid_argument);
    CHECK_THROWS_AS(line_through(pt(1, 1, 1), pt(2, 2, 2)), std::invalid_argument);
}

TEST_CASE("max collinear") {
    std::vector<ProjPoint> three{pt(1, 0, 0), pt(1, 1, 0), pt(1, 2, 0)};
    auto r3 = max_collinear(three);
    CHECK(r3.count == 3);
    REQUIRE(r3.witness.has_value());
    for (const auto& p : three) CHECK(incidence(p, *r3.witness));

    std::vector<ProjPoint> two{pt(1, 0, 0), pt(0, 1, 0)};
    CHECK(max_collinear(two).count == 2);

    Configuration cfg = build_dual_hesse();
    CHECK(max_collinear(cfg.points).count == 4);

    CHECK_THROWS_AS(max_collinear({pt(1, 0, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(max_collinear({pt(1, 0, 0), pt(2, 0, 0)}), std::invalid_argument);
}

TEST_CASE("lines through a coordinate point and a unit cube point are configuration lines") {
    Configuration cfg = build_dual_hesse();
    for (int corner = 9; corner < 12; ++corner) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                ProjLine d = line_through(cfg.points[corner], zeta_point(i, j));
                bool found = false;
                for (const auto& l : cfg.lines)
                    if (same_projective(d, l)) { found = true; break; }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("numerically trivial automorphism criterion and general position") {
    Configuration cfg = build_dual_hesse();
    CHECK(aut_sharp_trivial(cfg.points));
    CHECK(general_position_4(cfg.points));

    // twelve collinear points
    std::vector<ProjPoint> on_line;
    for (int t = 0; t < 12; ++t) on_line.push_back(pt(1, t, 0));
    CHECK_FALSE(aut_sharp_trivial(on_line));
    CHECK_FALSE(general_position_4(on_line));

    // eleven on a line plus one off it: still not trivial
    std::vector<ProjPoint> eleven_plus_one(on_line.begin(), on_line.end() - 1);
    eleven_plus_one.push_back(pt(0, 0, 1));
    CHECK_FALSE(aut_sharp_trivial(eleven_plus_one));
    CHECK_FALSE(general_position_4(eleven_plus_one));

    // ten on a line plus two off it: both criteria flip together
    std::vector<ProjPoint> ten_plus_two(on_line.begin(), on_line.end() - 2);
    ten_plus_two.push_back(pt(0, 0, 1));
    ten_plus_two.push_back(pt(1, 0, 1));
    CHECK(aut_sharp_trivial(ten_plus_two));
    CHECK(general_position_4(ten_plus_two));

    CHECK_THROWS_AS(general_position_4({pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)}),
                    std::invalid_argument);
}

TEST_CASE("strict transform classes of the dual hesse lines") {
    Configuration cfg = build_dual_hesse();
    auto classes = strict_transform_classes(cfg);
    REQUIRE(classes.size() == 9);
    lattice::PicardLattice lat{12};

    for (const auto& c : classes) {
        CHECK(c.coords[0] == 1);
        CHECK(lattice::intersect(lat, c, c) == -3);  // 1 - 4 incident points
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j)
            CHECK(lattice::intersect(lat, classes[i], classes[j]) == 0);

    // sum of the nine transforms plus three times the canonical class vanishes
    lattice::DivisorClass total = lattice::zero_class(lat);
    for (const auto& c : classes) total = total + c;
    CHECK(lattice::is_numerically_trivial(total + lattice::canonical_class(lat) * Rational(3)));
}

TEST_CASE("pair verdict for the dual hesse third-weight boundary") {
    PairSpec spec = dual_hesse_pair();
    Verdict v = check_pair(spec);
    CHECK(v.cy);
    CHECK(v.coefficient_class == CoeffClass::Klt);
    CHECK(v.snc == SncStatus::Holds);
    CHECK(v.overall == Overall::KltCy);
    CHECK_FALSE(v.trace.empty());
}

TEST_CASE("pair verdict is invariant under permutations and relabeling") {
    PairSpec spec = dual_hesse_pair();
    Verdict base = check_pair(spec);

    PairSpec shuffled = spec;
    std::reverse(shuffled.components.begin(), shuffled.components.end());
    std::swap(shuffled.components[0], shuffled.components[3]);
    Verdict v1 = check_pair(shuffled);
    CHECK(v1.overall == base.overall);
    CHECK(v1.snc == base.snc);
    CHECK(v1.coefficient_class == base.coefficient_class);

    // rotate the blown-point labels
    PairSpec relabeled = spec;
    const int k = spec.lat.k;
    auto perm = [&](int i) { return (i + 5) % k; };  // 0-based
    for (auto& comp : relabeled.components) {
        lattice::DivisorClass c = comp.cls;
        for (int i = 0; i < k; ++i) c.coords[1 + perm(i)] = comp.cls.coords[1 + i];
        comp.cls = c;
    }
    Configuration cfg = *spec.source;
    Configuration moved = cfg;
    for (int i = 0; i < k; ++i) moved.points[perm(i)] = cfg.points[i];
    for (int i = 0; i < k; ++i)
        for (std::size_t j = 0; j < cfg.lines.size(); ++j)
            moved.incidence[perm(i)][j] = cfg.incidence[i][j];
    relabeled.source = moved;
    Verdict v2 = check_pair(relabeled);
    CHECK(v2.overall == base.overall);
    CHECK(v2.snc == base.snc);
    CHECK(v2.coefficient_class == base.coefficient_class);
}

TEST_CASE("coble lattice example") {
    CobleExample ex = build_coble_lattice_example();
    REQUIRE(ex.r.size() == 5);
    lattice::PicardLattice lat{10};

    for (int i = 0; i < 4; ++i) CHECK(lattice::intersect(lat, ex.r[i], ex.r[i]) == -2);
    CHECK(lattice::intersect(lat, ex.r[4], ex.r[4]) == -3);

    lattice::DivisorClass c6 =
        ex.r[0] + ex.r[1] + ex.r[2] + ex.r[3] + ex.r[4] * Rational(2);
    lattice::DivisorClass expect = lattice::canonical_class(lat) * Rational(-2);
    CHECK(c6 == expect);
    CHECK(c6.coords[0] == 6);
    for (int i = 1; i <= 10; ++i) CHECK(c6.coords[i] == -2);

    // K + (1/2) C6 vanishes exactly and the verdict is log-canonical only
    Verdict v = check_pair(ex.pair);
    CHECK(v.cy);
    CHECK(v.coefficient_class == CoeffClass::LcOnly);
    CHECK(v.snc == SncStatus::Holds);
    CHECK(v.overall == Overall::LcCy);

    // without the general-position attestation the verdict degrades honestly
    PairSpec bare = ex.pair;
    bare.no_undeclared_triples = false;
    Verdict vb = check_pair(bare);
    CHECK(vb.snc == SncStatus::Unknown);
    CHECK(vb.overall == Overall::Indeterminate);
}

TEST_CASE("pair verdict rejects and degrades correctly") {
    // empty boundary on the 12-point blow-up: K is not trivial
    PairSpec zero;
    zero.lat = lattice::PicardLattice{12};
    Verdict v = check_pair(zero);
    CHECK_FALSE(v.cy);
    CHECK(v.overall == Overall::NotCy);

    // non-effective coefficients are rejected
    PairSpec bad = dual_hesse_pair();
    bad.components[0].coefficient = Rational(-1, 3);
    CHECK_THROWS_AS(check_pair(bad), std::invalid_argument);
    bad.components[0].coefficient = Rational(0);
    CHECK_THROWS_AS(check_pair(bad), std::invalid_argument);

    // rank mismatch
    PairSpec mismatch = dual_hesse_pair();
    mismatch.lat = lattice::PicardLattice{9};
    CHECK_THROWS_AS(check_pair(mismatch), std::invalid_argument);

    // coefficient above 1 is decisive
    CobleExample ex = build_coble_lattice_example();
    PairSpec heavy = ex.pair;
    heavy.components[4].coefficient = Rational(3, 2);
    Verdict vh = check_pair(heavy);
    CHECK(vh.coefficient_class == CoeffClass::Fails);
    CHECK(vh.overall == Overall::NotCy);
}

TEST_CASE("three concurrent lines at an unblown point fail the crossing check") {
    Configuration cfg;
    // x = 0, y = 0, x + y = 0 all pass through [0:0:1], which is not blown up
    cfg.lines.push_back(ProjLine{{CycloNum(1), CycloNum(0), CycloNum(0)}});
    cfg.lines.push_back(ProjLine{{CycloNum(0), CycloNum(1), CycloNum(0)}});
    cfg.lines.push_back(ProjLine{{CycloNum(1), CycloNum(1), CycloNum(0)}});
    cfg.points = {pt(0, 1, 0), pt(0, 1, 1), pt(1, 0, 0), pt(1, 0, 1), pt(1, -1, 0), pt(1, -1, 1)};
    cfg.incidence.assign(cfg.points.size(), std::vector<bool>(cfg.lines.size(), false));
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        for (std::size_t j = 0; j < cfg.lines.size(); ++j)
            cfg.incidence[i][j] = incidence(cfg.points[i], cfg.lines[j]);

    PairSpec spec;
    spec.lat = lattice::PicardLattice{6};
    for (const auto& cls : strict_transform_classes(cfg))
        spec.components.push_back({cls, Rational(1), true});
    spec.source = cfg;

    Verdict v = check_pair(spec);
    CHECK(v.cy);  // K + sum of the three transforms vanishes
    CHECK(v.coefficient_class == CoeffClass::LcOnly);
    CHECK(v.snc == SncStatus::Fails);
    CHECK(v.overall == Overall::Indeterminate);
}

TEST_CASE("arrangements json round trips") {
    Configuration cfg = build_dual_hesse();
    Configuration back = configuration_from_json(to_json(cfg));
    REQUIRE(back.points.size() == cfg.points.size());
    REQUIRE(back.lines.size() == cfg.lines.size());
    CHECK(back.incidence == cfg.incidence);
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        CHECK(same_projective(back.points[i], cfg.points[i]));

    PairSpec spec = dual_hesse_pair();
    PairSpec spec_back = pair_from_json(to_json(spec));
    Verdict v = check_pair(spec_back);
    CHECK(v.overall == Overall::KltCy);

    CobleExample ex = build_coble_lattice_example();
    Verdict vc = check_pair(pair_from_json(to_json(ex.pair)));
    CHECK(vc.overall == Overall::LcCy);

    auto vj = to_json(check_pair(spec));
    CHECK(vj.at("overall") == "KLT-CY");
    CHECK(vj.at("snc") == "holds");
    CHECK(vj.at("cy") == true);

    CHECK_THROWS_AS(cyclo_from_json(nlohmann::json{{"a", "1/0"}, {"b", "0"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(cyclo_from_json(nlohmann::json{{"a", "1"}}), std::invalid_argument);
    CHECK_THROWS_AS(configuration_from_json(nlohmann::json{{"points", nlohmann::json::array()}}),
                    std::invalid_argument);
    nlohmann::json dup = to_json(cfg);
    dup["points"].push_back(dup["points"][0]);
    CHECK_THROWS_AS(configuration_from_json(dup), std::invalid_argument);
}
