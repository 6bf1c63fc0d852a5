#include <cypair/cohom.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace cypair::cohom {

namespace {

bool is_permutation_of_range(const std::vector<int>& p, int m) {
    if (static_cast<int>(p.size()) != m) return false;
    std::vector<bool> seen(m, false);
    for (int v : p) {
        if (v < 0 || v >= m || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace

int FiniteGroupTable::inv(int a) const {
    for (int x = 0; x < order; ++x)
        if (table[a][x] == identity) return x;
    throw std::invalid_argument("group element has no inverse");
}

void validate(const FiniteGroupTable& g) {
    const int m = g.order;
    if (m < 1) throw std::invalid_argument("group order must be positive");
    if (static_cast<int>(g.table.size()) != m)
        throw std::invalid_argument("multiplication table must have one row per element");
    for (const auto& row : g.table) {
        if (static_cast<int>(row.size()) != m)
            throw std::invalid_argument("multiplication table rows must have order entries");
        for (int v : row)
            if (v < 0 || v >= m) throw std::invalid_argument("table entry out of range");
    }
    if (g.identity < 0 || g.identity >= m)
        throw std::invalid_argument("identity index out of range");
    for (int x = 0; x < m; ++x)
        if (g.table[g.identity][x] != x || g.table[x][g.identity] != x)
            throw std::invalid_argument("marked identity is not an identity");

    // rows and columns are permutations, so inverses exist given associativity
    for (int a = 0; a < m; ++a) {
        std::vector<bool> row(m, false), col(m, false);
        for (int b = 0; b < m; ++b) {
            if (row[g.table[a][b]]) throw std::invalid_argument("table row repeats an element");
            row[g.table[a][b]] = true;
            if (col[g.table[b][a]]) throw std::invalid_argument("table column repeats an element");
            col[g.table[b][a]] = true;
        }
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
                    throw std::invalid_argument("multiplication is not associative");

    if (!is_permutation_of_range(g.sigma, m))
        throw std::invalid_argument("sigma must be a permutation of the elements");
    for (int a = 0; a < m; ++a)
        if (g.sigma[g.sigma[a]] != a)
            throw std::invalid_argument("sigma must be involutive");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (g.sigma[g.table[a][b]] != g.table[g.sigma[a]][g.sigma[b]])
                throw std::invalid_argument("sigma must be an automorphism");
}

H1Result h1_z2(const FiniteGroupTable& g) {
    validate(g);
    const int m = g.order;

    H1Result out;
    std::vector<int> cls(m, -1);  // class id per cocycle, -1 for non-cocycles
    for (int z = 0; z < m; ++z)
        if (g.mul(z, g.act(z)) == g.identity) {
            out.cocycles.push_back(z);
            cls[z] = -2;
        }

    int next = 0;
    for (int z : out.cocycles) {
        if (cls[z] != -2) continue;
        out.classes.push_back(z);
        std::vector<int> stack{z};
        cls[z] = next;
        while (!stack.empty()) {
            int w = stack.back();
            stack.pop_back();
            for (int c = 0; c < m; ++c) {
                int w2 = g.mul(g.mul(g.inv(c), w), g.act(c));
                if (cls[w2] == -2) {
                    cls[w2] = next;
                    stack.push_back(w2);
                }
            }
        }
        ++next;
    }
    out.count = next;
    return out;
}

namespace {

// elements of A x| <s> as a*2 + t with t the s-exponent
struct Semidirect {
    const FiniteGroupTable& g;

    int size() const { return 2 * g.order; }
    int id() const { return g.identity * 2; }
    int mul(int x, int y) const {
        int a = x / 2, s = x % 2, b = y / 2, t = y % 2;
        int bb = s ? g.act(b) : b;
        return g.mul(a, bb) * 2 + (s ^ t);
    }
    int inv(int x) const {
        int a = x / 2, s = x % 2;
        int ai = g.inv(a);
        return (s ? g.act(ai) : ai) * 2 + s;
    }
};

std::vector<int> conjugacy_class_ids(const Semidirect& sd, const std::vector<int>& elems) {
    std::vector<int> cls(sd.size(), -1);
    int next = 0;
    for (int x : elems) {
        if (cls[x] != -1) continue;
        for (int u = 0; u < sd.size(); ++u) cls[sd.mul(sd.mul(u, x), sd.inv(u))] = next;
        ++next;
    }
    std::vector<int> out;
    out.reserve(elems.size());
    for (int x : elems) out.push_back(cls[x]);
    return out;
}

}  // namespace

SemidirectClasses semidirect_order2_classes(const FiniteGroupTable& g) {
    H1Result h1 = h1_z2(g);  // validates
    Semidirect sd{g};

    // square-identity elements with the s-component are exactly the cocycles
    std::vector<int> twisted;
    for (int z : h1.cocycles) twisted.push_back(z * 2 + 1);
    std::vector<int> conj = conjugacy_class_ids(sd, twisted);

    SemidirectClasses out;
    out.count = twisted.empty() ? 0 : 1 + *std::max_element(conj.begin(), conj.end());

    std::vector<int> h1_class_of(g.order, -1);
    for (std::size_t i = 0; i < h1.cocycles.size(); ++i) {
        // recover each cocycle's H1 class by matching against representatives
        int z = h1.cocycles[i];
        for (std::size_t k = 0; k < h1.classes.size(); ++k) {
            // sweep the class of representative r
            int r = h1.classes[k];
            for (int c = 0; c < g.order && h1_class_of[z] == -1; ++c)
                if (g.mul(g.mul(g.inv(c), r), g.act(c)) == z) h1_class_of[z] = static_cast<int>(k);
        }
    }

    out.h1_class_to_conj.assign(h1.count, -1);
    out.map_well_defined = true;
    for (std::size_t i = 0; i < h1.cocycles.size(); ++i) {
        int hc = h1_class_of[h1.cocycles[i]];
        if (out.h1_class_to_conj[hc] == -1)
            out.h1_class_to_conj[hc] = conj[i];
        else if (out.h1_class_to_conj[hc] != conj[i])
            out.map_well_defined = false;
    }
    std::set<int> hit(out.h1_class_to_conj.begin(), out.h1_class_to_conj.end());
    out.map_surjective = static_cast<int>(hit.size()) == out.count && hit.count(-1) == 0;

    std::vector<int> plain;
    for (int a = 0; a < g.order; ++a)
        if (a != g.identity && g.mul(a, a) == g.identity) plain.push_back(a * 2);
    std::vector<int> pconj = conjugacy_class_ids(sd, plain);
    out.plain_order2_classes =
        plain.empty() ? 0 : 1 + *std::max_element(pconj.begin(), pconj.end());
    return out;
}

IntMatrix2 int_identity2() { return IntMatrix2(BigInt(1), BigInt(0), BigInt(0), BigInt(1)); }

IntMatrix2 unimodular_inverse(const IntMatrix2& m) {
    if (m.det != 1 && m.det != -1)
        throw std::invalid_argument("matrix inverse requires determinant +1 or -1");
    BigInt s = m.det;
    return IntMatrix2(s * m.d, -s * m.b, -s * m.c, s * m.a);
}

std::vector<IntMatrix2> shear_pair(const BigInt& k) {
    return {IntMatrix2(BigInt(1), k, BigInt(0), BigInt(1)),
            IntMatrix2(BigInt(1), BigInt(0), k, BigInt(1))};
}

namespace {

BigInt max_abs_entry(const IntMatrix2& m) {
    BigInt v = abs(m.a);
    v = std::max(v, BigInt(abs(m.b)));
    v = std::max(v, BigInt(abs(m.c)));
    v = std::max(v, BigInt(abs(m.d)));
    return v;
}

struct WordSearch {
    std::vector<IntMatrix2> letters;  // generators then inverses
    std::vector<IntMatrix2> targets;  // scalar multiples of I to match
    int k = 0;
    BigInt entry_limit;
    long long checked = 0;
    std::vector<int> word;  // letter indices along the current branch

    bool hits_target(const IntMatrix2& m) {
        ++checked;
        for (const auto& t : targets)
            if (m == t) return true;
        return false;
    }

    // depth-first over reduced words, matching only at the final depth; the
    // shorter lengths were covered by earlier iterative-deepening rounds
    bool dfs(const IntMatrix2& m, int last, int remaining) {
        if (entry_limit > 0 && max_abs_entry(m) > entry_limit)
            throw std::overflow_error("word entries exceeded the configured bound");
        if (remaining == 0) return hits_target(m);
        for (int l = 0; l < 2 * k; ++l) {
            if (last >= 0 && l == (last + k) % (2 * k)) continue;  // cancellation
            word.push_back(l);
            if (dfs(m * letters[l], l, remaining - 1)) return true;
            word.pop_back();
        }
        return false;
    }
};

}  // namespace

FreeSearchResult no_relation_search(const std::vector<IntMatrix2>& gens, int max_len,
                                    const std::vector<BigInt>& center,
                                    const BigInt& entry_limit) {
    if (gens.empty()) throw std::invalid_argument("need at least one generator");
    if (max_len < 1) throw std::invalid_argument("word length bound must be at least 1");

    WordSearch ws;
    ws.k = static_cast<int>(gens.size());
    ws.entry_limit = entry_limit;
    for (const auto& g : gens) ws.letters.push_back(g);
    for (const auto& g : gens) ws.letters.push_back(unimodular_inverse(g));

    ws.targets.push_back(int_identity2());
    for (const auto& s : center) {
        if (s == 0) throw std::invalid_argument("center scalars must be nonzero");
        ws.targets.push_back(IntMatrix2(s, BigInt(0), BigInt(0), s));
    }

    FreeSearchResult out;
    for (int len = 1; len <= max_len; ++len) {
        ws.word.clear();
        if (ws.dfs(int_identity2(), -1, len)) {
            out.free_up_to_len = false;
            for (int l : ws.word) out.witness.push_back(l < ws.k ? l + 1 : -(l - ws.k + 1));
            break;
        }
    }
    out.words_checked = ws.checked;
    return out;
}

bool pingpong_witness(const std::vector<std::pair<Rational, Rational>>& samples) {
    for (const auto& [x, y] : samples)
        if (x == 0 && y == 0) throw std::invalid_argument("sample points must be nonzero");

    for (int n : {-3, -2, -1, 1, 2, 3}) {
        for (const auto& [x, y] : samples) {
            if (abs(y) > abs(x)) {
                // first shear to the n-th power sends (x, y) to (x + 2n y, y)
                Rational nx = x + Rational(2 * n) * y;
                if (!(abs(nx) > abs(y))) return false;
            }
            if (abs(x) > abs(y)) {
                Rational ny = Rational(2 * n) * x + y;
                if (!(abs(ny) > abs(x))) return false;
            }
        }
    }
    return true;
}

namespace {

bool integral(const CycloNum& v) {
    return denominator(v.a) == 1 && denominator(v.b) == 1;
}

CycloMatrix2 scale(const CycloNum& s, const CycloMatrix2& m) {
    return CycloMatrix2(s * m.a, s * m.b, s * m.c, s * m.d);
}

}  // namespace

std::vector<bool> distinct_mod_center(
    const std::vector<std::pair<CycloMatrix2, CycloMatrix2>>& pairs) {
    std::vector<bool> out;
    out.reserve(pairs.size());
    for (const auto& [g, h] : pairs) {
        for (const CycloNum& e : {g.a, g.b, g.c, g.d, h.a, h.b, h.c, h.d})
            if (!integral(e))
                throw std::invalid_argument("matrix entries must lie in Z[zeta]");
        bool distinct = true;
        for (int k = 0; k < 3 && distinct; ++k)
            if (g == scale(CycloNum::zeta_pow(k), h)) distinct = false;
        out.push_back(distinct);
    }
    return out;
}

FiniteGroupTable make_cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic order must be positive");
    FiniteGroupTable g;
    g.order = n;
    g.identity = 0;
    g.table.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
    g.sigma.resize(n);
    std::iota(g.sigma.begin(), g.sigma.end(), 0);
    return g;
}

FiniteGroupTable make_dihedral(int n) {
    if (n < 3) throw std::invalid_argument("dihedral parameter must be at least 3");
    FiniteGroupTable g;
    g.order = 2 * n;
    g.identity = 0;
    g.table.assign(2 * n, std::vector<int>(2 * n));
    // element f*n + i is rotation^i reflection^f
    for (int f1 = 0; f1 < 2; ++f1)
        for (int i = 0; i < n; ++i)
            for (int f2 = 0; f2 < 2; ++f2)
                for (int j = 0; j < n; ++j) {
                    int rot = f1 ? (i - j + n) % n : (i + j) % n;
                    g.table[f1 * n + i][f2 * n + j] = (f1 ^ f2) * n + rot;
                }
    g.sigma.resize(2 * n);
    std::iota(g.sigma.begin(), g.sigma.end(), 0);
    return g;
}

FiniteGroupTable make_quaternion8() {
    // units 1, i, j, k with index = unit*2 + sign
    static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_mul[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    // sign_mul[u][v] = 1 when unit_u * unit_v carries a minus: i*i = -1, i*j = k,
    // j*i = -k, etc.
    FiniteGroupTable g;
    g.order = 8;
    g.identity = 0;
    g.table.assign(8, std::vector<int>(8));
    for (int u = 0; u < 4; ++u)
        for (int su = 0; su < 2; ++su)
            for (int v = 0; v < 4; ++v)
                for (int sv = 0; sv < 2; ++sv) {
                    int w = unit_mul[u][v];
                    int sw = su ^ sv ^ sign_mul[u][v];
                    g.table[u * 2 + su][v * 2 + sv] = w * 2 + sw;
                }
    g.sigma.resize(8);
    std::iota(g.sigma.begin(), g.sigma.end(), 0);
    return g;
}

FiniteGroupTable direct_product(const FiniteGroupTable& x, const FiniteGroupTable& y) {
    validate(x);
    validate(y);
    FiniteGroupTable g;
    g.order = x.order * y.order;
    g.identity = x.identity * y.order + y.identity;
    g.table.assign(g.order, std::vector<int>(g.order));
    g.sigma.resize(g.order);
    for (int a1 = 0; a1 < x.order; ++a1)
        for (int b1 = 0; b1 < y.order; ++b1) {
            int e1 = a1 * y.order + b1;
            g.sigma[e1] = x.sigma[a1] * y.order + y.sigma[b1];
            for (int a2 = 0; a2 < x.order; ++a2)
                for (int b2 = 0; b2 < y.order; ++b2)
                    g.table[e1][a2 * y.order + b2] =
                        x.table[a1][a2] * y.order + y.table[b1][b2];
        }
    return g;
}

FiniteGroupTable with_sigma(FiniteGroupTable g, std::vector<int> sigma) {
    g.sigma = std::move(sigma);
    validate(g);
    return g;
}

std::vector<std::vector<int>> involutive_automorphisms(const FiniteGroupTable& g) {
    FiniteGroupTable plain = g;
    plain.sigma.resize(g.order);
    std::iota(plain.sigma.begin(), plain.sigma.end(), 0);
    validate(plain);
    if (g.order > 10)
        throw std::invalid_argument("automorphism enumeration is limited to order <= 10");

    // sigma fixes the identity; permute the rest
    std::vector<int> rest;
    for (int i = 0; i < g.order; ++i)
        if (i != g.identity) rest.push_back(i);

    std::vector<std::vector<int>> out;
    std::vector<int> perm = rest;
    do {
        std::vector<int> sigma(g.order);
        sigma[g.identity] = g.identity;
        for (std::size_t i = 0; i < rest.size(); ++i) sigma[rest[i]] = perm[i];

        bool ok = true;
        for (int a = 0; a < g.order && ok; ++a) ok = sigma[sigma[a]] == a;
        for (int a = 0; a < g.order && ok; ++a)
            for (int b = 0; b < g.order && ok; ++b)
                ok = sigma[g.table[a][b]] == g.table[sigma[a]][sigma[b]];
        if (ok) out.push_back(std::move(sigma));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<FiniteGroupTable> groups_of_order_up_to_8() {
    std::vector<FiniteGroupTable> out;
    for (int n : {1, 2, 3, 4, 5, 6, 7, 8}) out.push_back(make_cyclic(n));
    out.push_back(direct_product(make_cyclic(2), make_cyclic(2)));
    out.push_back(direct_product(make_cyclic(4), make_cyclic(2)));
    out.push_back(direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)));
    out.push_back(make_dihedral(3));
    out.push_back(make_dihedral(4));
    out.push_back(make_quaternion8());
    return out;
}

nlohmann::json to_json(const FiniteGroupTable& g) {
    nlohmann::json flat = nlohmann::json::array();
    for (const auto& row : g.table)
        for (int v : row) flat.push_back(v);
    return {{"order", g.order}, {"table", flat}, {"identity", g.identity}, {"sigma", g.sigma}};
}

FiniteGroupTable finite_group_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table") || !j.contains("sigma"))
        throw std::invalid_argument("group json needs order, table and sigma");
    FiniteGroupTable g;
    g.order = j.at("order").get<int>();
    if (g.order < 1) throw std::invalid_argument("group order must be positive");
    const auto& flat = j.at("table");
    if (!flat.is_array() || static_cast<int>(flat.size()) != g.order * g.order)
        throw std::invalid_argument("table must be a flat array of order^2 entries");
    g.table.assign(g.order, std::vector<int>(g.order));
    for (int i = 0; i < g.order; ++i)
        for (int k = 0; k < g.order; ++k) g.table[i][k] = flat[i * g.order + k].get<int>();
    g.sigma = j.at("sigma").get<std::vector<int>>();
    if (j.contains("identity")) {
        g.identity = j.at("identity").get<int>();
    } else {
        g.identity = -1;
        for (int e = 0; e < g.order && g.identity < 0; ++e) {
            bool id = true;
            for (int x = 0; x < g.order && id; ++x)
                id = g.table[e][x] == x && g.table[x][e] == x;
            if (id) g.identity = e;
        }
        if (g.identity < 0) throw std::invalid_argument("table has no identity element");
    }
    validate(g);
    return g;
}

nlohmann::json to_json(const H1Result& r) {
    return {{"cocycles", r.cocycles}, {"classes", r.classes}, {"count", r.count}};
}

nlohmann::json to_json(const SemidirectClasses& s) {
    return {{"count", s.count},
            {"plain_order2_classes", s.plain_order2_classes},
            {"h1_class_to_conj", s.h1_class_to_conj},
            {"map_well_defined", s.map_well_defined},
            {"map_surjective", s.map_surjective}};
}

nlohmann::json to_json(const FreeSearchResult& r) {
    return {{"free_up_to_len", r.free_up_to_len},
            {"witness", r.witness},
            {"words_checked", r.words_checked}};
}

nlohmann::json to_json(const IntMatrix2& m) {
    return {{"entries", {m.a.str(), m.b.str(), m.c.str(), m.d.str()}}};
}

IntMatrix2 int_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array() ||
        j.at("entries").size() != 4)
        throw std::invalid_argument("matrix json needs an entries array of four values");
    BigInt e[4];
    for (int i = 0; i < 4; ++i) {
        const auto& v = j.at("entries")[i];
        if (v.is_string()) {
            try {
                e[i] = BigInt(v.get<std::string>());
            } catch (const std::runtime_error&) {
                throw std::invalid_argument("matrix entries must be integers");
            }
        } else if (v.is_number_integer()) {
            e[i] = BigInt(v.get<long long>());
        } else {
            throw std::invalid_argument("matrix entries must be integers");
        }
    }
    return IntMatrix2(e[0], e[1], e[2], e[3]);
}

CycloMatrix2 cyclo_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array() ||
        j.at("entries").size() != 4)
        throw std::invalid_argument("matrix json needs an entries array of four values");
    CycloNum e[4];
    for (int i = 0; i < 4; ++i) e[i] = arrangements::cyclo_from_json(j.at("entries")[i]);
    return CycloMatrix2(e[0], e[1], e[2], e[3]);
}

}  // namespace cypair::cohom
