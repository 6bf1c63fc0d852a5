#include <cypair/actions.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace cypair::actions {

namespace {

constexpr double kTol = 1e-9;

double max_norm_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

bool is_identity(const Mat& m, double tol = kTol) {
    return max_norm_diff(m, Mat::Identity(m.rows(), m.cols())) <= tol;
}

nlohmann::json jvec(const Vec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

void canonical_sort(std::vector<HalfSpace>& hs) {
    std::sort(hs.begin(), hs.end(), [](const HalfSpace& a, const HalfSpace& b) {
        for (Eigen::Index i = 0; i < a.normal.size(); ++i) {
            if (a.normal[i] != b.normal[i]) return a.normal[i] < b.normal[i];
        }
        return a.offset < b.offset;
    });
}

}  // namespace

bool Polyhedron::contains(const Vec& w, double tol) const {
    if (static_cast<int>(w.size()) != n) return false;
    if (w.norm() > 1.0 + tol) return false;
    for (const auto& h : halfspaces) {
        if (h.normal.dot(w) > h.offset + tol) return false;
    }
    return true;
}

GroupElementSet word_ball(const std::vector<Isometry>& generators, int L, std::size_t element_cap) {
    if (L < 0) throw std::invalid_argument("word_ball: L must be nonnegative");
    if (generators.empty())
        throw std::invalid_argument("word_ball: need at least one generator (pass the identity for the trivial group)");
    const int n = generators.front().dim();
    for (const auto& g : generators) {
        if (g.dim() != n) throw std::invalid_argument("word_ball: generator dimension mismatch");
        if (!models::is_isometry_matrix(g.m)) throw std::invalid_argument("word_ball: generator is not a Lorentz isometry");
    }

    GroupElementSet out;
    std::vector<Mat> gens;
    auto push_gen = [&](const Mat& m) {
        for (const auto& g : gens)
            if (max_norm_diff(g, m) <= kTol) return;
        gens.push_back(m);
    };
    for (const auto& g : generators) {
        push_gen(g.m);
        push_gen(models::inverse(g).m);
    }

    // dedup by max-norm 1e-9, bucketed on the top-left entry to keep the scan local
    std::vector<Mat> words;
    std::unordered_map<long long, std::vector<int>> buckets;
    auto key_of = [](double x) {
        double clamped = std::clamp(x, -1e12, 1e12);
        return static_cast<long long>(std::llround(clamped * 1e6));
    };
    auto find = [&](const Mat& m) -> int {
        long long k = key_of(m(0, 0));
        for (long long kk = k - 1; kk <= k + 1; ++kk) {
            auto it = buckets.find(kk);
            if (it == buckets.end()) continue;
            for (int idx : it->second)
                if (max_norm_diff(words[idx], m) <= kTol) return idx;
        }
        return -1;
    };
    auto insert = [&](const Mat& m) {
        int idx = static_cast<int>(words.size());
        words.push_back(m);
        buckets[key_of(m(0, 0))].push_back(idx);
        return idx;
    };

    insert(Mat::Identity(n + 1, n + 1));
    std::vector<int> frontier{0};
    for (int len = 1; len <= L && !frontier.empty(); ++len) {
        std::vector<int> next;
        for (int idx : frontier) {
            for (const auto& s : gens) {
                Mat p = words[idx] * s;
                if (find(p) >= 0) continue;
                if (words.size() >= element_cap)
                    throw std::length_error("word_ball: element cap exceeded at length " + std::to_string(len));
                next.push_back(insert(p));
            }
        }
        frontier = std::move(next);
    }

    for (const auto& g : gens) out.generators.push_back(Isometry{g});
    for (const auto& w : words) out.words.push_back(Isometry{w});
    return out;
}

// ---------------------------------------------------------------------------
// Seidel's randomized LP in dimension <= 5 with an implicit box |x_i| <= B.
// When a violated constraint must be tight, one variable is eliminated and the
// subproblem keeps the remaining boxes; the eliminated box becomes two linear
// constraints.

namespace {

struct LinCon {
    Vec a;
    double b;
};

LpResult seidel(std::vector<LinCon> cons, const Vec& c, double B, std::mt19937_64& rng) {
    const int d = static_cast<int>(c.size());
    constexpr double kFeas = 1e-9;
    if (d == 1) {
        double lo = -B, hi = B;
        for (const auto& cn : cons) {
            double a = cn.a[0];
            if (a > 1e-13) hi = std::min(hi, cn.b / a);
            else if (a < -1e-13) lo = std::max(lo, cn.b / a);
            else if (cn.b < -kFeas) return {};
        }
        if (lo > hi + kFeas) return {};
        hi = std::max(hi, lo);
        LpResult r;
        r.feasible = true;
        r.x = Vec(1);
        r.x[0] = c[0] >= 0 ? hi : lo;
        r.value = c[0] * r.x[0];
        return r;
    }

    std::shuffle(cons.begin(), cons.end(), rng);
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = c[i] >= 0 ? B : -B;
    for (std::size_t i = 0; i < cons.size(); ++i) {
        const LinCon& cn = cons[i];
        if (cn.a.dot(x) <= cn.b + kFeas) continue;

        int p = 0;
        double best = 0;
        for (int j = 0; j < d; ++j)
            if (std::abs(cn.a[j]) > best) { best = std::abs(cn.a[j]); p = j; }
        if (best <= 1e-13) return {};  // zero row with violated bound

        // substitute x_p = (b - sum_{j != p} a_j x_j) / a_p
        std::vector<LinCon> red;
        red.reserve(i + 2);
        auto push_reduced = [&](const Vec& af, double bf) {
            double f = af[p] / cn.a[p];
            LinCon rc;
            rc.a = Vec(d - 1);
            int k = 0;
            for (int j = 0; j < d; ++j)
                if (j != p) rc.a[k++] = af[j] - f * cn.a[j];
            rc.b = bf - f * cn.b;
            red.push_back(std::move(rc));
        };
        for (std::size_t j = 0; j < i; ++j) push_reduced(cons[j].a, cons[j].b);
        Vec e = Vec::Zero(d);
        e[p] = 1;
        push_reduced(e, B);
        e[p] = -1;
        push_reduced(e, B);

        Vec cr(d - 1);
        int k = 0;
        double fp = c[p] / cn.a[p];
        for (int j = 0; j < d; ++j)
            if (j != p) cr[k++] = c[j] - fp * cn.a[j];

        LpResult sub = seidel(std::move(red), cr, B, rng);
        if (!sub.feasible) return {};
        Vec lx(d);
        k = 0;
        double s = 0;
        for (int j = 0; j < d; ++j)
            if (j != p) { lx[j] = sub.x[k++]; s += cn.a[j] * lx[j]; }
        lx[p] = (cn.b - s) / cn.a[p];
        x = lx;
    }
    LpResult r;
    r.feasible = true;
    r.x = x;
    r.value = c.dot(x);
    return r;
}

}  // namespace

LpResult maximize(const std::vector<HalfSpace>& constraints, const Vec& objective, double box_bound,
                  std::uint64_t seed) {
    const int d = static_cast<int>(objective.size());
    if (d < 1 || d > 5) throw std::invalid_argument("maximize: dimension capped at 5");
    if (!(box_bound > 0)) throw std::invalid_argument("maximize: box_bound must be positive");
    std::vector<LinCon> cons;
    cons.reserve(constraints.size());
    for (const auto& h : constraints) {
        if (static_cast<int>(h.normal.size()) != d)
            throw std::invalid_argument("maximize: constraint dimension mismatch");
        cons.push_back({h.normal, h.offset});
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    return seidel(std::move(cons), objective, box_bound, rng);
}

ChebyshevBall chebyshev_ball(const Polyhedron& poly, std::uint64_t seed) {
    const int n = poly.n;
    if (n < 1 || n > 4) throw std::invalid_argument("chebyshev_ball: dimension capped at 4");
    // variables (w, t); maximize t with unit-normal constraints offset by t
    std::vector<HalfSpace> cons;
    for (const auto& h : poly.halfspaces) {
        double nn = h.normal.norm();
        if (nn <= 1e-15) continue;
        HalfSpace c;
        c.normal = Vec(n + 1);
        c.normal.head(n) = h.normal / nn;
        c.normal[n] = 1.0;
        c.offset = h.offset / nn;
        cons.push_back(std::move(c));
    }
    for (int i = 0; i < n; ++i) {
        for (double s : {1.0, -1.0}) {
            HalfSpace c;
            c.normal = Vec::Zero(n + 1);
            c.normal[i] = s;
            c.normal[n] = 1.0;
            c.offset = 1.0;
            cons.push_back(std::move(c));
        }
    }
    HalfSpace tpos;
    tpos.normal = Vec::Zero(n + 1);
    tpos.normal[n] = -1.0;
    tpos.offset = 0.0;
    cons.push_back(std::move(tpos));

    Vec obj = Vec::Zero(n + 1);
    obj[n] = 1.0;
    LpResult r = maximize(cons, obj, 2.0, seed);
    ChebyshevBall out;
    if (!r.feasible) return out;
    out.feasible = true;
    out.center = r.x.head(n);
    out.radius = r.x[n];
    return out;
}

namespace {

void remove_redundant_halfspaces(Polyhedron& p, std::uint64_t seed) {
    for (std::size_t i = 0; i < p.halfspaces.size();) {
        std::vector<HalfSpace> others;
        others.reserve(p.halfspaces.size() - 1);
        for (std::size_t j = 0; j < p.halfspaces.size(); ++j)
            if (j != i) others.push_back(p.halfspaces[j]);
        LpResult r = maximize(others, p.halfspaces[i].normal, 1.0, seed);
        if (r.feasible && r.value <= p.halfspaces[i].offset + kTol)
            p.halfspaces.erase(p.halfspaces.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
}

}  // namespace

Polyhedron dirichlet_domain(const GroupElementSet& elems, const HyperboloidPoint& a,
                            const Polyhedron* restrict_to, bool remove_redundant,
                            std::uint64_t seed) {
    models::check_hyperboloid_point(a);
    const int n = a.dim();
    Polyhedron out;
    out.n = n;
    for (const auto& g : elems.words) {
        if (g.dim() != n) throw std::invalid_argument("dirichlet_domain: dimension mismatch");
        if (is_identity(g.m)) continue;
        Vec ga = g.m * a.v;
        if (models::distance(a, HyperboloidPoint{ga}) < 1e-9)
            throw std::invalid_argument("dirichlet_domain: a nonidentity element fixes the base point");
        // bisector {x : <x,a> <= <x,ga>} reads (ga-a)_spatial . w <= (ga-a)_0 in Klein
        Vec diff = ga - a.v;
        HalfSpace h;
        h.normal = diff.tail(n);
        h.offset = diff[0];
        double nn = h.normal.norm();
        if (nn <= 1e-15) continue;  // cannot occur for distinct orbit points; defensive
        h.normal /= nn;
        h.offset /= nn;
        out.halfspaces.push_back(std::move(h));
    }
    if (restrict_to != nullptr) {
        if (restrict_to->n != n) throw std::invalid_argument("dirichlet_domain: restriction dimension mismatch");
        for (const auto& h : restrict_to->halfspaces) {
            double nn = h.normal.norm();
            if (nn <= 1e-15) continue;
            out.halfspaces.push_back({h.normal / nn, h.offset / nn});
        }
        out.degenerate = out.degenerate || restrict_to->degenerate;
    }
    if (remove_redundant && n <= 4) remove_redundant_halfspaces(out, seed);
    canonical_sort(out.halfspaces);
    return out;
}

int proper_action_count(const GroupElementSet& elems, const HyperboloidPoint& x, double r) {
    if (!(r > 0)) throw std::invalid_argument("proper_action_count: r must be positive");
    models::check_hyperboloid_point(x);
    int count = 0;
    for (const auto& g : elems.words) {
        HyperboloidPoint gx{g.m * x.v};
        if (models::distance(x, gx) < 2 * r) ++count;
    }
    return count;
}

std::vector<IdealPoint> limit_points(const GroupElementSet& elems, const HyperboloidPoint& x,
                                     double min_norm) {
    if (!(min_norm > 0) || !(min_norm < 1))
        throw std::invalid_argument("limit_points: min_norm must lie in (0,1)");
    models::check_hyperboloid_point(x);
    const int n = x.dim();
    std::vector<Vec> dirs;
    for (const auto& g : elems.words) {
        Vec y = g.m * x.v;
        Vec w = y.tail(n) / y[0];
        double r = w.norm();
        if (r <= 1.0 - min_norm) continue;
        Vec d = w / r;
        bool dup = false;
        for (const auto& e : dirs)
            if ((d - e).norm() < 1e-6) { dup = true; break; }
        if (!dup) dirs.push_back(std::move(d));
    }
    std::vector<IdealPoint> out;
    out.reserve(dirs.size());
    for (const auto& d : dirs) {
        Vec b(n + 1);
        b[0] = 1.0;
        b.tail(n) = d;
        out.push_back(IdealPoint{std::move(b)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Convex hulls in the Klein ball

namespace {

// facets of a full-dimensional point set by hyperplanes through n-point subsets
std::vector<HalfSpace> hull_facets(const std::vector<Vec>& pts, int n) {
    std::vector<HalfSpace> out;
    const int m = static_cast<int>(pts.size());
    if (n == 1) {
        double lo = pts.front()[0], hi = lo;
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        HalfSpace up, down;
        up.normal = Vec::Constant(1, 1.0);
        up.offset = hi;
        down.normal = Vec::Constant(1, -1.0);
        down.offset = -lo;
        return {up, down};
    }

    auto emit = [&](Vec normal, double offset) {
        for (const auto& h : out)
            if ((h.normal - normal).norm() < 1e-7 && std::abs(h.offset - offset) < 1e-7) return;
        out.push_back({std::move(normal), offset});
    };

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
        Mat span(n - 1, n);
        for (int j = 1; j < n; ++j) span.row(j - 1) = (pts[idx[j]] - pts[idx[0]]).transpose();
        Eigen::JacobiSVD<Mat> svd(span, Eigen::ComputeFullV);
        bool independent = n == 1 || svd.singularValues()(n - 2) > 1e-9;
        if (independent) {
            Vec normal = svd.matrixV().col(n - 1);
            double mx = -std::numeric_limits<double>::infinity();
            double mn = std::numeric_limits<double>::infinity();
            for (const auto& p : pts) {
                double s = normal.dot(p);
                mx = std::max(mx, s);
                mn = std::min(mn, s);
            }
            double base = normal.dot(pts[idx[0]]);
            if (mx <= base + 1e-9) emit(normal, mx);
            else if (mn >= base - 1e-9) emit(-normal, -mn);
        }
        // next combination
        int j = n - 1;
        while (j >= 0 && idx[j] == m - n + j) --j;
        if (j < 0) break;
        ++idx[j];
        for (int k = j + 1; k < n; ++k) idx[k] = idx[k - 1] + 1;
    }
    if (out.empty()) throw std::runtime_error("klein_convex_hull: facet enumeration failed");
    return out;
}

}  // namespace

Polyhedron klein_convex_hull(const std::vector<Vec>& points, std::uint64_t seed) {
    if (points.empty()) throw std::invalid_argument("klein_convex_hull: empty input");
    const int n = static_cast<int>(points.front().size());
    if (n < 1 || n > 4) throw std::invalid_argument("klein_convex_hull: ambient dimension capped at 4");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("klein_convex_hull: mixed point dimensions");
        if (p.norm() > 1.0 + kTol)
            throw std::invalid_argument("klein_convex_hull: point outside the closed unit ball");
    }

    Vec centroid = Vec::Zero(n);
    for (const auto& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());
    Mat centered(points.size(), n);
    for (std::size_t i = 0; i < points.size(); ++i) centered.row(i) = (points[i] - centroid).transpose();
    Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullV);
    double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    double rank_tol = 1e-9 * std::max(1.0, smax);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > rank_tol) ++rank;

    Polyhedron out;
    out.n = n;
    if (rank == n) {
        out.halfspaces = hull_facets(points, n);
        canonical_sort(out.halfspaces);
        return out;
    }

    out.degenerate = true;
    const Mat& V = svd.matrixV();
    // pin the affine span with opposing half-space pairs
    for (int j = rank; j < n; ++j) {
        Vec v = V.col(j);
        double c = v.dot(centroid);
        out.halfspaces.push_back({v, c});
        out.halfspaces.push_back({-v, -c});
    }
    if (rank > 0) {
        // hull within the span, expressed in span coordinates then mapped back
        std::vector<Vec> reduced;
        reduced.reserve(points.size());
        for (const auto& p : points) {
            Vec t(rank);
            for (int j = 0; j < rank; ++j) t[j] = V.col(j).dot(p - centroid);
            reduced.push_back(std::move(t));
        }
        for (const auto& f : hull_facets(reduced, rank)) {
            Vec a = Vec::Zero(n);
            for (int j = 0; j < rank; ++j) a += f.normal[j] * V.col(j);
            out.halfspaces.push_back({a, f.offset + a.dot(centroid)});
        }
    }
    canonical_sort(out.halfspaces);
    (void)seed;
    return out;
}

ConeProjection project_cone(const ConeSpec& cone, std::uint64_t seed) {
    if (cone.rays.empty()) throw std::invalid_argument("project_cone: empty ray list");
    const int n = static_cast<int>(cone.rays.front().size()) - 1;
    if (n < 1) throw std::invalid_argument("project_cone: rays need length at least 2");
    const double eps = models::kModelTol;
    ConeProjection out;
    for (const auto& ray : cone.rays) {
        if (static_cast<int>(ray.size()) != n + 1)
            throw std::invalid_argument("project_cone: mixed ray dimensions");
        double scale = ray.norm();
        if (scale <= 0) throw std::invalid_argument("project_cone: zero ray");
        Vec v = ray / scale;  // classification is scale-invariant
        if (v[0] <= 0) throw std::invalid_argument("project_cone: ray needs positive time component");
        double q = models::lorentz_product(v, v);
        if (q < -eps) throw std::invalid_argument("project_cone: ray outside the closed light cone");
        Vec w;
        if (q > eps) {
            w = v.tail(n) / v[0];  // interior ray lands inside the ball
        } else {
            w = v.tail(n);
            double nn = w.norm();
            if (nn <= eps) throw std::invalid_argument("project_cone: degenerate null ray");
            w /= nn;  // boundary ray snaps to the unit sphere
        }
        out.points.push_back(std::move(w));
    }
    out.hull = klein_convex_hull(out.points, seed);
    return out;
}

bool horocusp_check(const GroupElementSet& elems, const Horoball& h,
                    const std::function<bool(const Isometry&)>& stabilizer_predicate) {
    const int n = h.base.dim();
    for (const auto& g : elems.words) {
        if (g.dim() != n) throw std::invalid_argument("horocusp_check: dimension mismatch");
        if (is_identity(g.m)) continue;
        bool fixes;
        if (stabilizer_predicate) {
            fixes = stabilizer_predicate(g);
        } else {
            Vec gb = g.m * h.base.b;
            Vec d = gb.tail(n);
            d /= d.norm();
            fixes = (d - h.base.direction()).norm() < 1e-6;
        }
        if (fixes) continue;
        if (!models::horoballs_disjoint(models::apply_isometry(g, h), h)) return false;
    }
    return true;
}

std::vector<Horoball> shrink_horoballs(const std::vector<Horoball>& horoballs, const Polyhedron& C) {
    const double tol = 1e-12;
    auto antipode_klein = [](const IdealPoint& base, double level) {
        // tangency at direction u, Euclidean radius r: the antipode is (1-2r)u
        // in the Poincare ball, converted to Klein
        double r = 1.0 / (1.0 + std::exp(-level));
        Vec p = (1.0 - 2.0 * r) * base.direction();
        return Vec((2.0 / (1.0 + p.squaredNorm())) * p);
    };
    std::vector<Horoball> out;
    out.reserve(horoballs.size());
    for (const auto& h : horoballs) {
        if (h.base.dim() != C.n) throw std::invalid_argument("shrink_horoballs: dimension mismatch");
        auto ok = [&](double level) { return C.contains(antipode_klein(h.base, level), tol); };
        if (ok(h.level)) {
            out.push_back(h);
            continue;
        }
        double hi = h.level;  // condition fails here
        double step = 1.0;
        double lo = h.level - step;
        int guard = 0;
        while (!ok(lo)) {
            if (++guard > 60)
                throw std::invalid_argument("shrink_horoballs: base direction outside the region closure");
            step *= 2;
            lo = h.level - step;
        }
        for (int it = 0; it < 40 && hi - lo > tol; ++it) {
            double mid = 0.5 * (lo + hi);
            (ok(mid) ? lo : hi) = mid;
        }
        out.push_back({h.base, lo});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Horoball-complement paths in H^2 via the upper half-plane

ComplementPath complement_path(const HyperboloidPoint& x, const HyperboloidPoint& y,
                               const Horoball& h) {
    if (x.dim() != 2 || y.dim() != 2 || h.base.dim() != 2)
        throw std::invalid_argument("complement_path: implemented for H^2 only");
    if (models::busemann(h.base, x) < h.level - 1e-9 || models::busemann(h.base, y) < h.level - 1e-9)
        throw std::invalid_argument("complement_path: endpoint strictly inside the open horoball");

    using Cx = std::complex<double>;
    Vec u = h.base.direction();
    const Cx b(u[0], u[1]);
    const Cx i1(0.0, 1.0);
    // Moebius map disk -> upper half plane sending the horoball base to infinity;
    // the horoball becomes {Im z > c} with c = exp(-level)
    auto fwd = [&](const Vec& poincare) { return i1 * (b + Cx(poincare[0], poincare[1])) / (b - Cx(poincare[0], poincare[1])); };
    auto bwd = [&](const Cx& z) {
        Cx w = b * (z - i1) / (z + i1);
        Vec v(2);
        v << w.real(), w.imag();
        return v;
    };
    auto duhp = [](const Cx& p, const Cx& q) {
        double dx = p.real() - q.real(), dy = p.imag() - q.imag();
        return std::acosh(std::max(1.0, 1.0 + (dx * dx + dy * dy) / (2.0 * p.imag() * q.imag())));
    };

    const Vec px = models::to_poincare(x).u;
    const Vec py = models::to_poincare(y).u;
    const double c = std::exp(-h.level);
    Cx zx = fwd(px), zy = fwd(py);
    zx = Cx(zx.real(), std::min(zx.imag(), c));  // clamp onto the closed complement
    zy = Cx(zy.real(), std::min(zy.imag(), c));

    bool swapped = zx.real() > zy.real();
    if (swapped) std::swap(zx, zy);

    double peak;
    if (std::abs(zy.real() - zx.real()) < 1e-14) {
        peak = std::max(zx.imag(), zy.imag());
    } else {
        // geodesic through zx, zy: semicircle centered on the real axis
        double m = (std::norm(zy) - std::norm(zx)) / (2.0 * (zy.real() - zx.real()));
        double R = std::abs(zx - Cx(m, 0.0));
        peak = (m >= zx.real() && m <= zy.real()) ? R : std::max(zx.imag(), zy.imag());
    }

    ComplementPath out;
    if (peak <= c + 1e-12) {
        out.length = duhp(zx, zy);
        out.detoured = false;
        out.pieces.push_back({"geodesic", px, py, out.length});
        return out;
    }

    // tangent segments from each endpoint to the horosphere line plus the
    // horocyclic arc between the tangency abscissas
    double sx = std::sqrt(std::max(0.0, c * c - zx.imag() * zx.imag()));
    double sy = std::sqrt(std::max(0.0, c * c - zy.imag() * zy.imag()));
    double a1 = zx.real() + sx;
    double a2 = zy.real() - sy;
    if (a2 < a1) a1 = a2 = 0.5 * (a1 + a2);  // grazing contact up to rounding
    Cx t1(a1, c), t2(a2, c);
    double l1 = duhp(zx, t1);
    double arc = (a2 - a1) / c;
    double l2 = duhp(t2, zy);
    out.length = l1 + arc + l2;
    out.detoured = true;
    Vec pt1 = bwd(t1), pt2 = bwd(t2);
    if (!swapped) {
        out.pieces.push_back({"geodesic", px, pt1, l1});
        out.pieces.push_back({"horocyclic", pt1, pt2, arc});
        out.pieces.push_back({"geodesic", pt2, py, l2});
    } else {
        out.pieces.push_back({"geodesic", px, pt2, l2});
        out.pieces.push_back({"horocyclic", pt2, pt1, arc});
        out.pieces.push_back({"geodesic", pt1, py, l1});
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const HalfSpace& h) {
    return {{"normal", jvec(h.normal)}, {"offset", h.offset}};
}

nlohmann::json to_json(const Polyhedron& p) {
    nlohmann::json hs = nlohmann::json::array();
    for (const auto& h : p.halfspaces) hs.push_back(to_json(h));
    return {{"n", p.n}, {"degenerate", p.degenerate}, {"halfspaces", hs}};
}

nlohmann::json to_json(const ConeProjection& c) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : c.points) pts.push_back(jvec(p));
    return {{"points", pts}, {"hull", to_json(c.hull)}};
}

nlohmann::json to_json(const ComplementPath& p) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& pc : p.pieces) {
        pieces.push_back({{"kind", pc.kind},
                          {"from", jvec(pc.from)},
                          {"to", jvec(pc.to)},
                          {"length", pc.length}});
    }
    return {{"length", p.length}, {"detoured", p.detoured}, {"pieces", pieces}};
}

Polyhedron polyhedron_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("halfspaces"))
        throw std::invalid_argument("polyhedron_from_json: expected {n, halfspaces}");
    Polyhedron p;
    p.n = j.at("n").get<int>();
    if (p.n < 1) throw std::invalid_argument("polyhedron_from_json: n must be positive");
    p.degenerate = j.value("degenerate", false);
    for (const auto& hj : j.at("halfspaces")) {
        HalfSpace h;
        h.normal = models::vec_from_json(hj.at("normal"));
        if (static_cast<int>(h.normal.size()) != p.n)
            throw std::invalid_argument("polyhedron_from_json: normal length mismatch");
        if (h.normal.norm() <= 1e-15)
            throw std::invalid_argument("polyhedron_from_json: zero normal");
        h.offset = hj.at("offset").get<double>();
        p.halfspaces.push_back(std::move(h));
    }
    return p;
}

}  // namespace cypair::actions
