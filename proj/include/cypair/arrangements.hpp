#pragma once

#include <cypair/lattice.hpp>
#include <cypair/rational.hpp>

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

// Exact projective geometry over Q(zeta_3), line-arrangement configurations,
// strict-transform classes on blow-ups, and pair verdicts (numerically trivial
// K + Delta, coefficient bounds, combinatorial normal-crossing checks).
namespace cypair::arrangements {

using cypair::Rational;
using lattice::DivisorClass;
using lattice::PicardLattice;

// a + b*zeta with zeta a primitive cube root of unity: zeta^2 = -1 - zeta.
struct CycloNum {
    Rational a, b;

    CycloNum() : a(0), b(0) {}
    CycloNum(Rational re) : a(std::move(re)), b(0) {}
    CycloNum(Rational re, Rational ze) : a(std::move(re)), b(std::move(ze)) {}

    static CycloNum zeta_pow(int k);  // zeta^k, any integer k

    bool is_zero() const { return a == 0 && b == 0; }
    CycloNum conj() const { return {a - b, -b}; }  // image under zeta -> zeta^2
    Rational norm() const { return a * a - a * b + b * b; }
    CycloNum inverse() const;  // throws std::domain_error on zero

    friend CycloNum operator+(const CycloNum& x, const CycloNum& y) { return {x.a + y.a, x.b + y.b}; }
    friend CycloNum operator-(const CycloNum& x, const CycloNum& y) { return {x.a - y.a, x.b - y.b}; }
    friend CycloNum operator-(const CycloNum& x) { return {-x.a, -x.b}; }
    friend CycloNum operator*(const CycloNum& x, const CycloNum& y) {
        // (a + b z)(c + d z) = ac - bd + (ad + bc - bd) z using z^2 = -1 - z
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend bool operator==(const CycloNum& x, const CycloNum& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const CycloNum& x, const CycloNum& y) { return !(x == y); }
};

struct ProjPoint {
    std::array<CycloNum, 3> c;
};

struct ProjLine {
    std::array<CycloNum, 3> c;
};

// equality up to a nonzero scalar, by vanishing 2x2 minors
bool same_projective(const ProjPoint& p, const ProjPoint& q);
bool same_projective(const ProjLine& p, const ProjLine& q);

// exact evaluation of the linear form; throws on a zero point or line
bool incidence(const ProjPoint& p, const ProjLine& l);

// the unique line through two distinct points (cross product); throws when
// the points coincide projectively
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);

CycloNum det3(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);

struct Configuration {
    std::vector<ProjPoint> points;
    std::vector<ProjLine> lines;
    std::vector<std::vector<bool>> incidence;  // points x lines, cached exact tests
};

// The twelve points [1:zeta^i:zeta^j] (i,j lexicographic) plus the three
// coordinate points, with the nine lines y = zeta^k x, z = zeta^k x,
// z = zeta^k y in that order.
Configuration build_dual_hesse();

struct CollinearReport {
    int count = 0;
    std::optional<ProjLine> witness;
};

// maximum number of input points on a common line, exhaustively over
// pair-spanned lines; needs at least 2 points
CollinearReport max_collinear(const std::vector<ProjPoint>& points);

// true iff some 4 of the points have no 3 collinear (exact determinants);
// needs at least 4 points
bool general_position_4(const std::vector<ProjPoint>& points);

// the blown-up surface has no nontrivial numerically-trivial automorphisms
// iff the points are not all collinear except at most one
bool aut_sharp_trivial(const std::vector<ProjPoint>& points);

// class of each line's strict transform in the blow-up lattice of rank
// (#points + 1): E0 minus the incident exceptional classes
std::vector<DivisorClass> strict_transform_classes(const Configuration& cfg);

struct PairComponent {
    DivisorClass cls;
    Rational coefficient;
    bool is_reduced_irreducible = true;
};

struct PairSpec {
    PicardLattice lat;
    std::vector<PairComponent> components;
    std::optional<Configuration> source;  // exact coordinates, when available
    // explicit attestation that no three components meet away from the blown
    // points; consulted only when no coordinate configuration is attached
    bool no_undeclared_triples = false;
};

enum class SncStatus { Holds, Fails, Unknown };
enum class CoeffClass { Klt, LcOnly, Fails };
enum class Overall { KltCy, LcCy, NotCy, Indeterminate };

std::string to_string(SncStatus s);
std::string to_string(CoeffClass c);
std::string to_string(Overall o);

struct Verdict {
    SncStatus snc = SncStatus::Unknown;
    CoeffClass coefficient_class = CoeffClass::Fails;
    bool cy = false;
    Overall overall = Overall::Indeterminate;
    std::vector<std::string> trace;
};

// (i) K + sum coeff_i class_i == 0 exactly; (ii) coefficient bounds (< 1
// versus <= 1); (iii) combinatorial normal-crossing check on line
// arrangements; throws std::invalid_argument on non-effective coefficients.
Verdict check_pair(const PairSpec& spec);

// Delta = (1/3) sum of the nine strict transforms on the dual Hesse blow-up
PairSpec dual_hesse_pair();

// Rank-11 lattice example: ten blown points (six pairwise intersections of
// four lines, three cubic-section points and one free point on a fifth line),
// with Delta = (1/2)(R1+R2+R3+R4) + R5. Construction is checked exactly:
// R_i^2 = -2 for i <= 4, R5^2 = -3, and R1+...+R4+2R5 = -2K.
struct CobleExample {
    PairSpec pair;
    std::vector<DivisorClass> r;  // R1..R5
};
CobleExample build_coble_lattice_example();

nlohmann::json to_json(const CycloNum& x);
nlohmann::json to_json(const ProjPoint& p);
nlohmann::json to_json(const ProjLine& l);
nlohmann::json to_json(const Configuration& cfg);
nlohmann::json to_json(const PairSpec& spec);
nlohmann::json to_json(const Verdict& v);
CycloNum cyclo_from_json(const nlohmann::json& j);
Configuration configuration_from_json(const nlohmann::json& j);
PairSpec pair_from_json(const nlohmann::json& j);

}  // namespace cypair::arrangements
