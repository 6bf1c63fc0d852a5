#pragma once

#include <cypair/models.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Discrete-group machinery over the models layer: word balls, Dirichlet
// domains expressed as Klein half-space intersections, proper-action counts,
// limit sets, convex hulls and cone projections in the Klein ball, horoball
// packing checks, horoball shrinking, and horoball-complement paths in H^2.
namespace cypair::actions {

using models::Horoball;
using models::HyperboloidPoint;
using models::IdealPoint;
using models::Isometry;
using models::Mat;
using models::Vec;

// {w : normal . w <= offset} in Klein coordinates; normal nonzero.
struct HalfSpace {
    Vec normal;
    double offset = 0.0;
};

// Intersection of half-spaces, implicitly clipped to the open unit ball.
// `degenerate` marks hulls whose input had affine dimension below n; such
// polyhedra carry opposing half-space pairs pinning the affine span.
struct Polyhedron {
    int n = 0;
    std::vector<HalfSpace> halfspaces;
    bool degenerate = false;

    bool contains(const Vec& w, double tol = 1e-9) const;
};

// Deduplicated group elements: identity first, inverse-closed.
struct GroupElementSet {
    std::vector<Isometry> generators;  // as supplied plus appended inverses
    std::vector<Isometry> words;

    int dim() const { return words.empty() ? 0 : words.front().dim(); }
};

// Generators of a closed convex cone in the ambient (1, n) space.
struct ConeSpec {
    std::vector<Vec> rays;  // length n+1 each, v.v >= -eps, v0 > 0
};

// All distinct products of length <= L over generators and their inverses.
// Throws std::length_error when the element count would exceed element_cap.
GroupElementSet word_ball(const std::vector<Isometry>& generators, int L,
                          std::size_t element_cap = 100000);

// Intersection of bisector half-spaces {x : x.a <= x.(g a)} over nonidentity
// enumerated g, in Klein coordinates, optionally clipped to restrict_to.
// Redundant half-spaces are removed by LP feasibility for n <= 4.
// Throws std::invalid_argument when some nonidentity g fixes a.
Polyhedron dirichlet_domain(const GroupElementSet& elems, const HyperboloidPoint& a,
                            const Polyhedron* restrict_to = nullptr, bool remove_redundant = true,
                            std::uint64_t seed = 0);

// Number of enumerated g with d(x, g x) < 2r (the ball-overlap criterion).
int proper_action_count(const GroupElementSet& elems, const HyperboloidPoint& x, double r);

// Directions of orbit points that got within min_norm of the unit sphere in
// the Klein model, deduplicated within angular tolerance 1e-6.
std::vector<IdealPoint> limit_points(const GroupElementSet& elems, const HyperboloidPoint& x,
                                     double min_norm);

// Euclidean convex hull of points in the closed Klein ball as a half-space
// list; exact facet enumeration capped at n <= 4.  Inputs of lower affine
// dimension come back with the degenerate flag set.
Polyhedron klein_convex_hull(const std::vector<Vec>& points, std::uint64_t seed = 0);

struct ConeProjection {
    std::vector<Vec> points;  // Klein images of the rays, boundary points included
    Polyhedron hull;
};

// Radial projection of cone rays into the Klein ball: spatial part / v0.
// Rays with |v.v| <= eps land on the boundary sphere; v.v < -eps errors.
ConeProjection project_cone(const ConeSpec& cone, std::uint64_t seed = 0);

// True iff every enumerated g outside the base-point stabilizer moves h to a
// horoball with disjoint closure.  The default stabilizer predicate compares
// base directions within angular tolerance 1e-6.
bool horocusp_check(const GroupElementSet& elems, const Horoball& h,
                    const std::function<bool(const Isometry&)>& stabilizer_predicate = {});

// Lowers each horoball's level (bisection, <= 40 steps, resolution 1e-12)
// until the Euclidean antipode of its tangency point, read in Klein
// coordinates, lies in C.  Levels never increase; disjointness is preserved.
// Throws std::invalid_argument when no shrink can achieve the condition.
std::vector<Horoball> shrink_horoballs(const std::vector<Horoball>& horoballs, const Polyhedron& C);

struct PathPiece {
    std::string kind;  // "geodesic" | "horocyclic"
    Vec from, to;      // Poincare coordinates
    double length = 0.0;
};

struct ComplementPath {
    double length = 0.0;
    bool detoured = false;
    std::vector<PathPiece> pieces;
};

// Shortest path from x to y avoiding the open horoball, H^2 only: either the
// direct geodesic or tangent segment + horocyclic arc + tangent segment.
// Throws when n != 2 or an endpoint lies strictly inside the horoball.
ComplementPath complement_path(const HyperboloidPoint& x, const HyperboloidPoint& y,
                               const Horoball& h);

// Small-dimension linear programming (Seidel's randomized algorithm) used for
// redundancy elimination and interior sampling; exposed for tests.
struct LpResult {
    bool feasible = false;
    Vec x;
    double value = 0.0;
};
// maximize objective . x subject to constraints and |x_i| <= box_bound
LpResult maximize(const std::vector<HalfSpace>& constraints, const Vec& objective,
                  double box_bound, std::uint64_t seed = 0);

struct ChebyshevBall {
    bool feasible = false;
    Vec center;
    double radius = 0.0;
};
// Largest ball inside the polyhedron intersected with the unit box.
ChebyshevBall chebyshev_ball(const Polyhedron& poly, std::uint64_t seed = 0);

nlohmann::json to_json(const HalfSpace& h);
nlohmann::json to_json(const Polyhedron& p);
nlohmann::json to_json(const ConeProjection& c);
nlohmann::json to_json(const ComplementPath& p);
Polyhedron polyhedron_from_json(const nlohmann::json& j);

}  // namespace cypair::actions
