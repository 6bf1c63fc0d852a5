#pragma once

#include <cypair/arrangements.hpp>
#include <cypair/rational.hpp>

#include <json.hpp>

#include <utility>
#include <vector>

// Desk-scale nonabelian cohomology: H^1(Z/2, A) for finite groups with an
// involutive action, conjugacy counting in the associated semidirect product,
// and exact free-group / injectivity certificates for 2x2 matrix groups.
namespace cypair::cohom {

using arrangements::CycloNum;
using cypair::BigInt;
using cypair::Rational;

// finite group as a multiplication table, carrying a marked involutive
// automorphism sigma (the Z/2 action)
struct FiniteGroupTable {
    int order = 0;
    std::vector<std::vector<int>> table;  // table[a][b] = a*b
    int identity = 0;
    std::vector<int> sigma;

    int mul(int a, int b) const { return table[a][b]; }
    int act(int a) const { return sigma[a]; }
    int inv(int a) const;
};

// group axioms, sigma a permutation with sigma(ab) = sigma(a) sigma(b) and
// sigma o sigma = id; throws std::invalid_argument with the broken axiom
void validate(const FiniteGroupTable& g);

struct H1Result {
    std::vector<int> cocycles;  // all z with z * sigma(z) = e, ascending
    std::vector<int> classes;   // least cocycle per equivalence class, ascending
    int count = 0;
};

// cocycles modulo z ~ c^-1 * z * sigma(c); the mirrored convention
// z ~ c * z * sigma(c)^-1 gives the same count
H1Result h1_z2(const FiniteGroupTable& a);

struct SemidirectClasses {
    int count = 0;                      // conjugacy classes of (z, s) with square e
    int plain_order2_classes = 0;       // classes of order-2 elements (a, 1), reported only
    std::vector<int> h1_class_to_conj;  // image of each H1 class, indices into [0, count)
    bool map_well_defined = false;
    bool map_surjective = false;
};

// builds A x| <s> with (a,g)(b,h) = (a g(b), gh), counts conjugacy classes of
// the square-identity elements carrying the s-component, and certifies the
// canonical map from H1 classes onto them
SemidirectClasses semidirect_order2_classes(const FiniteGroupTable& a);

// exact 2x2 matrix over BigInt or CycloNum entries, determinant cached
template <class T>
struct Mat2 {
    T a{}, b{}, c{}, d{};
    T det{};

    Mat2() = default;
    Mat2(T a_, T b_, T c_, T d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        det = a * d - b * c;
    }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return Mat2(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                    x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
    }
    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
};

using IntMatrix2 = Mat2<BigInt>;
using CycloMatrix2 = Mat2<CycloNum>;

IntMatrix2 int_identity2();
// inverse of a matrix with det = +-1; throws std::invalid_argument otherwise
IntMatrix2 unimodular_inverse(const IntMatrix2& m);

// the two elementary shears [[1,k],[0,1]] and [[1,0],[k,1]]
std::vector<IntMatrix2> shear_pair(const BigInt& k);

struct FreeSearchResult {
    bool free_up_to_len = true;
    std::vector<int> witness;  // signed 1-based generator letters, empty when free
    long long words_checked = 0;
};

// exhaustive exact search over reduced words of length <= max_len in the
// generators and their inverses; a word equal to s*I for s in center (or to I
// when center is empty) ends the search with the shortest, lexicographically
// first witness. entry_limit > 0 aborts with std::overflow_error when any
// matrix entry exceeds it in absolute value.
FreeSearchResult no_relation_search(const std::vector<IntMatrix2>& gens, int max_len,
                                    const std::vector<BigInt>& center = {},
                                    const BigInt& entry_limit = BigInt(0));

// sampled two-set criterion for the shear pair with k = 2: powers n in
// {+-1,+-2,+-3} of the first shear move samples with |y| > |x| into |x| > |y|
// and powers of the second do the reverse, by exact rational comparison;
// evidence, not a proof
bool pingpong_witness(const std::vector<std::pair<Rational, Rational>>& samples);

// per pair (g, h): true iff g != zeta^k h for all k in {0,1,2}, exact entries
// in Z[zeta] required
std::vector<bool> distinct_mod_center(
    const std::vector<std::pair<CycloMatrix2, CycloMatrix2>>& pairs);

// desk-scale builders; sigma starts as the identity automorphism
FiniteGroupTable make_cyclic(int n);
FiniteGroupTable make_dihedral(int n);  // order 2n, n >= 3
FiniteGroupTable make_quaternion8();
FiniteGroupTable direct_product(const FiniteGroupTable& x, const FiniteGroupTable& y);
FiniteGroupTable with_sigma(FiniteGroupTable g, std::vector<int> sigma);

// all permutations sigma with sigma o sigma = id that are automorphisms,
// identity included; brute force, order <= 10
std::vector<std::vector<int>> involutive_automorphisms(const FiniteGroupTable& g);

// the fourteen isomorphism classes of groups of order <= 8
std::vector<FiniteGroupTable> groups_of_order_up_to_8();

nlohmann::json to_json(const FiniteGroupTable& g);
FiniteGroupTable finite_group_from_json(const nlohmann::json& j);
nlohmann::json to_json(const H1Result& r);
nlohmann::json to_json(const SemidirectClasses& s);
nlohmann::json to_json(const FreeSearchResult& r);
nlohmann::json to_json(const IntMatrix2& m);
IntMatrix2 int_matrix_from_json(const nlohmann::json& j);
CycloMatrix2 cyclo_matrix_from_json(const nlohmann::json& j);

}  // namespace cypair::cohom
