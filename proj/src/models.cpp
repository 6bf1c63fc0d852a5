#include "cypair/models.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cypair::models {

Mat LorentzForm::gram() const {
    Mat g = -Mat::Identity(n + 1, n + 1);
    g(0, 0) = 1.0;
    return g;
}

double lorentz_product(const Vec& u, const Vec& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("lorentz_product: dimension mismatch");
    double s = u[0] * v[0];
    for (Eigen::Index i = 1; i < u.size(); ++i) s -= u[i] * v[i];
    return s;
}

bool is_hyperboloid_point(const Vec& v, double tol) {
    if (v.size() < 2) return false;
    return std::abs(lorentz_product(v, v) - 1.0) <= tol && v[0] > 0.0;
}

void check_hyperboloid_point(const HyperboloidPoint& p, double tol) {
    if (!is_hyperboloid_point(p.v, tol))
        throw std::invalid_argument("point is not on the positive unit hyperboloid");
}

bool is_isometry_matrix(const Mat& m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 2) return false;
    const int n = static_cast<int>(m.rows()) - 1;
    Mat g = LorentzForm{n}.gram();
    Mat resid = m.transpose() * g * m - g;
    return resid.cwiseAbs().maxCoeff() <= tol && m(0, 0) > 0.0;
}

Isometry make_isometry(Mat m, double tol) {
    if (!is_isometry_matrix(m, tol))
        throw std::invalid_argument("matrix does not preserve the Lorentz form (or reverses time)");
    return Isometry{std::move(m)};
}

IdealPoint make_ideal(Vec b, double tol) {
    if (b.size() < 2) throw std::invalid_argument("ideal point: dimension too small");
    if (b[0] <= 0.0) throw std::invalid_argument("ideal point must be forward pointing");
    double q = lorentz_product(b, b);
    if (std::abs(q) > tol * std::max(1.0, b[0] * b[0]))
        throw std::invalid_argument("ideal point must be isotropic");
    Vec nb = b / b[0];
    // snap the direction onto the unit sphere exactly so later formulas see b0 == 1
    double sn = nb.tail(nb.size() - 1).norm();
    if (sn > 0.0) nb.tail(nb.size() - 1) /= sn;
    nb[0] = 1.0;
    return IdealPoint{std::move(nb)};
}

double distance(const HyperboloidPoint& u, const HyperboloidPoint& v, double tol) {
    double c = lorentz_product(u.v, v.v);
    if (c < 1.0) {
        if (c < 1.0 - tol)
            throw std::invalid_argument("distance: inner product below 1, inputs are not valid hyperboloid points");
        c = 1.0;
    }
    return std::acosh(c);
}

KleinPoint to_klein(const HyperboloidPoint& p) {
    return KleinPoint{p.v.tail(p.v.size() - 1) / p.v[0]};
}

Vec to_klein(const IdealPoint& p) {
    return p.b.tail(p.b.size() - 1) / p.b[0];
}

PoincarePoint to_poincare(const HyperboloidPoint& p) {
    return PoincarePoint{p.v.tail(p.v.size() - 1) / (1.0 + p.v[0])};
}

HyperboloidPoint to_hyperboloid(const KleinPoint& p) {
    double s = p.w.squaredNorm();
    if (s >= 1.0) throw std::invalid_argument("Klein point must lie inside the unit ball");
    Vec v(p.w.size() + 1);
    v[0] = 1.0;
    v.tail(p.w.size()) = p.w;
    v /= std::sqrt(1.0 - s);
    return HyperboloidPoint{std::move(v)};
}

HyperboloidPoint to_hyperboloid(const PoincarePoint& p) {
    double s = p.u.squaredNorm();
    if (s >= 1.0) throw std::invalid_argument("Poincare point must lie inside the unit ball");
    Vec v(p.u.size() + 1);
    v[0] = 1.0 + s;
    v.tail(p.u.size()) = 2.0 * p.u;
    v /= (1.0 - s);
    return HyperboloidPoint{std::move(v)};
}

PoincarePoint klein_to_poincare(const KleinPoint& p) {
    double s = p.w.squaredNorm();
    if (s >= 1.0) throw std::invalid_argument("Klein point must lie inside the unit ball");
    return PoincarePoint{p.w / (1.0 + std::sqrt(1.0 - s))};
}

KleinPoint poincare_to_klein(const PoincarePoint& p) {
    double s = p.u.squaredNorm();
    if (s >= 1.0) throw std::invalid_argument("Poincare point must lie inside the unit ball");
    return KleinPoint{2.0 * p.u / (1.0 + s)};
}

GeodesicSegment geodesic(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    return GeodesicSegment{a, b, distance(a, b)};
}

HyperboloidPoint geodesic_point(const GeodesicSegment& seg, double t) {
    const double L = seg.length;
    if (t < -1e-12 || t > L + 1e-12) throw std::out_of_range("geodesic parameter outside [0, length]");
    if (L < 1e-14) return seg.a;
    t = std::clamp(t, 0.0, L);
    Vec p = (std::sinh(L - t) * seg.a.v + std::sinh(t) * seg.b.v) / std::sinh(L);
    return HyperboloidPoint{std::move(p)};
}

ComparisonTriangle comparison_triangle(const HyperboloidPoint& a, const HyperboloidPoint& b,
                                       const HyperboloidPoint& c) {
    double dab = distance(a, b), dac = distance(a, c), dbc = distance(b, c);
    ComparisonTriangle T;
    T.A = Eigen::Vector2d(0.0, 0.0);
    T.B = Eigen::Vector2d(dab, 0.0);
    double x, y;
    if (dab < 1e-14) {
        x = dac;
        y = 0.0;
    } else {
        x = (dab * dab + dac * dac - dbc * dbc) / (2.0 * dab);
        double y2 = dac * dac - x * x;
        y = y2 > 0.0 ? std::sqrt(y2) : 0.0;
    }
    T.C = Eigen::Vector2d(x, y);
    return T;
}

Cat0Report cat0_check(const HyperboloidPoint& a, const HyperboloidPoint& b,
                      const HyperboloidPoint& c, int samples, std::uint64_t seed) {
    ComparisonTriangle T = comparison_triangle(a, b, c);
    GeodesicSegment sides[3] = {geodesic(a, b), geodesic(a, c), geodesic(b, c)};
    Eigen::Vector2d ends[3][2] = {{T.A, T.B}, {T.A, T.C}, {T.B, T.C}};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pair(0, 2);  // (0,1), (0,2), (1,2)

    Cat0Report rep;
    rep.samples = samples;
    for (int k = 0; k < samples; ++k) {
        int pr = pair(rng);
        int s1 = pr == 2 ? 1 : 0;
        int s2 = pr == 0 ? 1 : 2;
        double t1 = unit(rng), t2 = unit(rng);
        HyperboloidPoint p = geodesic_point(sides[s1], t1 * sides[s1].length);
        HyperboloidPoint q = geodesic_point(sides[s2], t2 * sides[s2].length);
        Eigen::Vector2d P = ends[s1][0] + t1 * (ends[s1][1] - ends[s1][0]);
        Eigen::Vector2d Q = ends[s2][0] + t2 * (ends[s2][1] - ends[s2][0]);
        double viol = distance(p, q) - (P - Q).norm();
        if (k == 0 || viol > rep.max_violation) rep.max_violation = viol;
    }
    return rep;
}

HyperboloidPoint apply_isometry(const Isometry& g, const HyperboloidPoint& x) {
    return HyperboloidPoint{g.m * x.v};
}

KleinPoint apply_isometry(const Isometry& g, const KleinPoint& x) {
    return to_klein(apply_isometry(g, to_hyperboloid(x)));
}

PoincarePoint apply_isometry(const Isometry& g, const PoincarePoint& x) {
    return to_poincare(apply_isometry(g, to_hyperboloid(x)));
}

IdealPoint apply_isometry(const Isometry& g, const IdealPoint& x) {
    Vec gb = g.m * x.b;
    return make_ideal(std::move(gb), 1e-6);
}

Horoball apply_isometry(const Isometry& g, const Horoball& h) {
    Vec gb = g.m * h.base.b;
    double scale = gb[0];  // positive: g is orthochronous and b is forward isotropic
    Horoball out;
    out.base = make_ideal(std::move(gb), 1e-6);
    out.level = h.level - std::log(scale);
    return out;
}

Isometry compose(const Isometry& g, const Isometry& h) { return Isometry{g.m * h.m}; }

Isometry inverse(const Isometry& g) {
    const int n = g.dim();
    Mat G = LorentzForm{n}.gram();
    return Isometry{G * g.m.transpose() * G};  // Lorentz-orthogonal inverse, exact up to rounding
}

std::string to_string(IsometryClass c) {
    switch (c) {
        case IsometryClass::Elliptic: return "elliptic";
        case IsometryClass::Parabolic: return "parabolic";
        case IsometryClass::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

namespace {

// log of the spectral radius via Gelfand's formula with normalized repeated
// squaring, carried out in 100-digit floats.  The precision matters: a
// defective (parabolic) Jordan block has an eps^(1/3)-sensitive pseudospectrum,
// and rounding noise starts dominating the normalized power once the true
// eigenvalue scale 4^-k falls below eps^(1/3), which happens inside 46
// squarings for anything under ~85 digits (in doubles the artifact reaches
// 1e-3).  At 100 digits the onset sits past step 55, so the loop tracks the
// exact iteration and only the Jordan polynomial bias O(K / 2^K) ~ 1e-12
// remains.
double log_spectral_radius(const Mat& m) {
    using MpFloat = boost::multiprecision::cpp_bin_float_100;
    const int n = static_cast<int>(m.rows());
    std::vector<MpFloat> b(static_cast<size_t>(n) * n), c(b.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[static_cast<size_t>(i) * n + j] = m(i, j);
    auto frob = [](const std::vector<MpFloat>& a) {
        MpFloat s = 0;
        for (const auto& x : a) s += x * x;
        return sqrt(s);
    };
    constexpr int kSquarings = 46;
    MpFloat logscale = 0;  // maintained so m^(2^k) = b * exp(logscale)
    for (int k = 0; k < kSquarings; ++k) {
        MpFloat nu = frob(b);
        if (nu == 0) return -std::numeric_limits<double>::infinity();
        for (auto& x : b) x /= nu;
        logscale = 2 * (logscale + log(nu));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                MpFloat s = 0;
                for (int l = 0; l < n; ++l)
                    s += b[static_cast<size_t>(i) * n + l] * b[static_cast<size_t>(l) * n + j];
                c[static_cast<size_t>(i) * n + j] = s;
            }
        b.swap(c);
    }
    MpFloat lr = (log(frob(b)) + logscale) / MpFloat(std::ldexp(1.0, kSquarings));
    return lr.convert_to<double>();
}

}  // namespace

Classification classify_isometry(const Isometry& g, double eps) {
    const int n = g.dim();
    Classification out;

    double lr = log_spectral_radius(g.m);
    if (lr > std::log1p(eps)) {  // spectral radius above 1 + eps
        out.type = IsometryClass::Hyperbolic;
        out.translation_length = lr;
        return out;
    }

    // spectral radius 1: elliptic iff a timelike vector is fixed
    Mat d = g.m - Mat::Identity(n + 1, n + 1);
    Eigen::JacobiSVD<Mat> svd(d, Eigen::ComputeFullV);
    double smax = svd.singularValues()[0];
    if (smax <= eps * (n + 1)) {
        out.type = IsometryClass::Elliptic;  // numerically the identity
        return out;
    }
    double thresh = 1e-6 * smax;
    std::vector<int> null_idx;
    for (int i = 0; i <= n; ++i)
        if (svd.singularValues()[i] <= thresh) null_idx.push_back(i);
    if (null_idx.empty()) {
        // no fixed direction at all: rotation part only, fixed point is interior
        out.type = IsometryClass::Elliptic;
        return out;
    }
    Mat basis(n + 1, static_cast<int>(null_idx.size()));
    for (size_t j = 0; j < null_idx.size(); ++j) basis.col(static_cast<int>(j)) = svd.matrixV().col(null_idx[j]);
    Mat G = LorentzForm{n}.gram();
    Mat S = basis.transpose() * G * basis;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
    double lam = es.eigenvalues().maxCoeff();
    out.type = lam > eps ? IsometryClass::Elliptic : IsometryClass::Parabolic;
    return out;
}

double busemann(const IdealPoint& b, const HyperboloidPoint& x) {
    double ip = lorentz_product(x.v, b.b);
    if (ip <= 0.0) throw std::invalid_argument("busemann: point and ideal base are not forward compatible");
    return std::log(ip);
}

EuclideanBall horoball_to_euclidean(const Horoball& h) {
    Vec u = h.base.direction();
    double r = 1.0 / (1.0 + std::exp(-h.level));
    EuclideanBall ball;
    ball.center = (1.0 - r) * u;
    ball.radius = r;
    return ball;
}

bool horoballs_disjoint(const Horoball& h1, const Horoball& h2) {
    // closures disjoint, with a strict margin so tangency counts as contact
    EuclideanBall b1 = horoball_to_euclidean(h1);
    EuclideanBall b2 = horoball_to_euclidean(h2);
    return (b1.center - b2.center).norm() > b1.radius + b2.radius + 1e-12;
}

HyperboloidPoint basepoint(int n) {
    Vec v = Vec::Zero(n + 1);
    v[0] = 1.0;
    return HyperboloidPoint{std::move(v)};
}

Isometry identity_isometry(int n) { return Isometry{Mat::Identity(n + 1, n + 1)}; }

Isometry boost(int n, int axis, double t) {
    if (axis < 1 || axis > n) throw std::invalid_argument("boost: axis out of range");
    Mat m = Mat::Identity(n + 1, n + 1);
    m(0, 0) = std::cosh(t);
    m(0, axis) = std::sinh(t);
    m(axis, 0) = std::sinh(t);
    m(axis, axis) = std::cosh(t);
    return Isometry{std::move(m)};
}

Isometry rotation(int n, int i, int j, double theta) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw std::invalid_argument("rotation: need two distinct spatial axes");
    Mat m = Mat::Identity(n + 1, n + 1);
    m(i, i) = std::cos(theta);
    m(j, j) = std::cos(theta);
    m(i, j) = -std::sin(theta);
    m(j, i) = std::sin(theta);
    return Isometry{std::move(m)};
}

Isometry parabolic_h2() {
    Mat m(3, 3);
    m << 1.5, -0.5, 1.0,
         0.5,  0.5, 1.0,
         1.0, -1.0, 1.0;
    return Isometry{std::move(m)};
}

HyperboloidPoint random_point(int n, std::mt19937_64& rng, double max_radius) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, max_radius);
    Vec dir(n);
    do {
        for (int i = 0; i < n; ++i) dir[i] = gauss(rng);
    } while (dir.norm() < 1e-12);
    dir /= dir.norm();
    double r = unif(rng);
    Vec v(n + 1);
    v[0] = std::cosh(r);
    v.tail(n) = std::sinh(r) * dir;
    return HyperboloidPoint{std::move(v)};
}

Isometry random_isometry(int n, std::mt19937_64& rng, int factors) {
    std::uniform_real_distribution<double> t(-1.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_int_distribution<int> axis(1, n);
    std::uniform_int_distribution<int> coin(0, 1);
    Mat m = Mat::Identity(n + 1, n + 1);
    for (int k = 0; k < factors; ++k) {
        if (n >= 2 && coin(rng) == 1) {
            int i = axis(rng), j = axis(rng);
            while (j == i) j = axis(rng);
            m = rotation(n, std::min(i, j), std::max(i, j), ang(rng)).m * m;
        } else {
            m = boost(n, axis(rng), t(rng)).m * m;
        }
    }
    return Isometry{std::move(m)};
}

nlohmann::json to_json(const HyperboloidPoint& p) {
    return {{"model", "hyperboloid"}, {"coords", std::vector<double>(p.v.data(), p.v.data() + p.v.size())}};
}
nlohmann::json to_json(const KleinPoint& p) {
    return {{"model", "klein"}, {"coords", std::vector<double>(p.w.data(), p.w.data() + p.w.size())}};
}
nlohmann::json to_json(const PoincarePoint& p) {
    return {{"model", "poincare"}, {"coords", std::vector<double>(p.u.data(), p.u.data() + p.u.size())}};
}
nlohmann::json to_json(const IdealPoint& p) {
    return {{"model", "ideal"}, {"coords", std::vector<double>(p.b.data(), p.b.data() + p.b.size())}};
}
nlohmann::json to_json(const Isometry& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < g.m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < g.m.cols(); ++j) row.push_back(g.m(i, j));
        rows.push_back(std::move(row));
    }
    return {{"matrix", rows}};
}
nlohmann::json to_json(const Horoball& h) {
    return {{"base", to_json(h.base)}, {"level", h.level}};
}

Vec vec_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
    Vec v(j.size());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw std::invalid_argument("expected an array of numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

Mat mat_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty array of rows");
    size_t cols = 0;
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array()) throw std::invalid_argument("expected an array of rows");
        if (i == 0)
            cols = j[i].size();
        else if (j[i].size() != cols)
            throw std::invalid_argument("ragged matrix rows");
    }
    Mat m(j.size(), cols);
    for (size_t i = 0; i < j.size(); ++i)
        for (size_t k = 0; k < cols; ++k) {
            if (!j[i][k].is_number()) throw std::invalid_argument("expected numeric matrix entries");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
        }
    return m;
}

Isometry isometry_from_json(const nlohmann::json& j) {
    if (!j.contains("matrix")) throw std::invalid_argument("isometry JSON needs a \"matrix\" field");
    return make_isometry(mat_from_json(j.at("matrix")), 1e-6);
}

Horoball horoball_from_json(const nlohmann::json& j) {
    if (!j.contains("base") || !j.contains("level"))
        throw std::invalid_argument("horoball JSON needs \"base\" and \"level\" fields");
    const auto& base = j.at("base");
    if (!base.contains("coords")) throw std::invalid_argument("horoball base needs \"coords\"");
    Horoball h;
    h.base = make_ideal(vec_from_json(base.at("coords")), 1e-6);
    h.level = j.at("level").get<double>();
    return h;
}

}  // namespace cypair::models
