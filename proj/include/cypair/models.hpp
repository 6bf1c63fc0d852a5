#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <random>
#include <string>
#include <vector>

// The hyperboloid, Klein and Poincare ball models of hyperbolic n-space built
// on a diagonal form of signature (1, n), together with distances, geodesics,
// isometries, horoballs and CAT(0) comparison machinery.
//
// Conventions:
//  - vectors of length n+1 live in the ambient Lorentz space, index 0 is the
//    timelike coordinate; the positive sheet is selected by v[0] > 0
//  - Klein and Poincare points are vectors of length n inside the unit ball
//  - ideal points are forward isotropic vectors normalized to b[0] == 1
namespace cypair::models {

inline constexpr double kModelTol = 1e-9;     // epsilon_m: model membership tolerance
inline constexpr double kClassifyTol = 1e-9;  // epsilon_c: spectral classification margin

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct LorentzForm {
    int n = 0;
    int rank() const { return n + 1; }
    Mat gram() const;
};

// <u, v> = u0 v0 - u1 v1 - ... - un vn
double lorentz_product(const Vec& u, const Vec& v);

struct HyperboloidPoint {
    Vec v;  // length n+1, <v,v> = 1, v[0] > 0
    int dim() const { return static_cast<int>(v.size()) - 1; }
};

struct KleinPoint {
    Vec w;  // length n, |w| < 1
    int dim() const { return static_cast<int>(w.size()); }
};

struct PoincarePoint {
    Vec u;  // length n, |u| < 1
    int dim() const { return static_cast<int>(u.size()); }
};

struct IdealPoint {
    Vec b;  // length n+1, <b,b> = 0, b[0] == 1
    int dim() const { return static_cast<int>(b.size()) - 1; }
    Vec direction() const { return b.tail(b.size() - 1); }  // unit vector in R^n
};

struct Isometry {
    Mat m;  // (n+1)x(n+1), m^T G m = G, orthochronous
    int dim() const { return static_cast<int>(m.rows()) - 1; }
};

struct Horoball {
    IdealPoint base;
    double level = 0.0;  // Busemann threshold; the ball is {x : busemann(base, x) < level}
};

struct GeodesicSegment {
    HyperboloidPoint a, b;
    double length = 0.0;
};

// --- validation -------------------------------------------------------------

bool is_hyperboloid_point(const Vec& v, double tol = kModelTol);
void check_hyperboloid_point(const HyperboloidPoint& p, double tol = kModelTol);
bool is_isometry_matrix(const Mat& m, double tol = kModelTol);
Isometry make_isometry(Mat m, double tol = kModelTol);  // throws on invalid input
IdealPoint make_ideal(Vec b, double tol = kModelTol);   // normalizes b[0] to 1

// --- basic geometry ---------------------------------------------------------

double distance(const HyperboloidPoint& u, const HyperboloidPoint& v, double tol = kModelTol);

KleinPoint to_klein(const HyperboloidPoint& p);
Vec to_klein(const IdealPoint& p);  // lands on the unit sphere
PoincarePoint to_poincare(const HyperboloidPoint& p);
HyperboloidPoint to_hyperboloid(const KleinPoint& p);
HyperboloidPoint to_hyperboloid(const PoincarePoint& p);
PoincarePoint klein_to_poincare(const KleinPoint& p);
KleinPoint poincare_to_klein(const PoincarePoint& p);

GeodesicSegment geodesic(const HyperboloidPoint& a, const HyperboloidPoint& b);
// t is arc length in [0, seg.length]; throws std::out_of_range beyond a small slack.
HyperboloidPoint geodesic_point(const GeodesicSegment& seg, double t);

// Euclidean comparison triangle with the same side lengths: A at the origin,
// B on the positive x-axis, C in the upper half plane.
struct ComparisonTriangle {
    Eigen::Vector2d A, B, C;
};
ComparisonTriangle comparison_triangle(const HyperboloidPoint& a, const HyperboloidPoint& b,
                                       const HyperboloidPoint& c);

struct Cat0Report {
    double max_violation = 0.0;  // max over samples of d(p,q) - |P-Q|
    int samples = 0;
};
Cat0Report cat0_check(const HyperboloidPoint& a, const HyperboloidPoint& b,
                      const HyperboloidPoint& c, int samples, std::uint64_t seed = 0);

// --- isometries -------------------------------------------------------------

HyperboloidPoint apply_isometry(const Isometry& g, const HyperboloidPoint& x);
KleinPoint apply_isometry(const Isometry& g, const KleinPoint& x);
PoincarePoint apply_isometry(const Isometry& g, const PoincarePoint& x);
IdealPoint apply_isometry(const Isometry& g, const IdealPoint& x);
Horoball apply_isometry(const Isometry& g, const Horoball& h);
Isometry compose(const Isometry& g, const Isometry& h);
Isometry inverse(const Isometry& g);

enum class IsometryClass { Elliptic, Parabolic, Hyperbolic };
std::string to_string(IsometryClass c);

struct Classification {
    IsometryClass type = IsometryClass::Elliptic;
    double translation_length = 0.0;
};
Classification classify_isometry(const Isometry& g, double eps = kClassifyTol);

// --- horoballs --------------------------------------------------------------

double busemann(const IdealPoint& b, const HyperboloidPoint& x);

// Euclidean ball in the Poincare model, tangent to the unit sphere at the base
// direction; its interior is exactly {busemann < level}.
struct EuclideanBall {
    Vec center;
    double radius = 0.0;
};
EuclideanBall horoball_to_euclidean(const Horoball& h);
bool horoballs_disjoint(const Horoball& h1, const Horoball& h2);

// --- constructors and sampling ----------------------------------------------

HyperboloidPoint basepoint(int n);  // e0
Isometry identity_isometry(int n);
Isometry boost(int n, int axis, double t);               // axis in 1..n
Isometry rotation(int n, int i, int j, double theta);    // spatial axes i < j in 1..n
Isometry parabolic_h2();                                 // standard parabolic in O+(1,2)

// Default radius keeps double-precision Klein roundtrips comfortably below
// 1e-12: the reconstruction 1/sqrt(1 - |w|^2) amplifies rounding by cosh(r)^3.
HyperboloidPoint random_point(int n, std::mt19937_64& rng, double max_radius = 3.0);
Isometry random_isometry(int n, std::mt19937_64& rng, int factors = 6);

// --- serialization ----------------------------------------------------------

nlohmann::json to_json(const HyperboloidPoint& p);
nlohmann::json to_json(const KleinPoint& p);
nlohmann::json to_json(const PoincarePoint& p);
nlohmann::json to_json(const IdealPoint& p);
nlohmann::json to_json(const Isometry& g);
nlohmann::json to_json(const Horoball& h);
Vec vec_from_json(const nlohmann::json& j);
Mat mat_from_json(const nlohmann::json& j);
Isometry isometry_from_json(const nlohmann::json& j);
Horoball horoball_from_json(const nlohmann::json& j);

}  // namespace cypair::models
