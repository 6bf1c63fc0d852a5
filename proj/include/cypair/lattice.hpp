#pragma once

#include <cypair/rational.hpp>

#include <json.hpp>

#include <map>
#include <vector>

// Integer lattices of signature (1, k) in the blow-up basis (E0, E1, ..., Ek),
// with exact divisor-class arithmetic. No floating point anywhere here.
namespace cypair::lattice {

struct PicardLattice {
    int k = 0;  // number of blown-up points

    int rank() const { return k + 1; }

    // Diagonal Gram entry in the (E0, ..., Ek) basis: +1, then k times -1.
    int gram_diag(int i) const;
};

struct DivisorClass {
    std::vector<Rational> coords;  // length rank, basis (E0, ..., Ek)

    int rank() const { return static_cast<int>(coords.size()); }

    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator*(const Rational& s) const;
    DivisorClass operator-() const;
    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
};

DivisorClass zero_class(const PicardLattice& lat);
DivisorClass basis_class(const PicardLattice& lat, int i);  // E_i

// Intersection product u^T . gram . v, exact.
Rational intersect(const PicardLattice& lat, const DivisorClass& u, const DivisorClass& v);

// K = -3 E0 + sum_i E_i.
DivisorClass canonical_class(const PicardLattice& lat);

// Strict-transform class d E0 - sum m_i E_i; indices are 1-based point labels.
DivisorClass curve_class(const PicardLattice& lat, int degree, const std::map<int, int>& mults);

// Exact zero class; on a regular surface this is numerical triviality.
bool is_numerically_trivial(const DivisorClass& c);

// (#positive, #negative) diagonal entries of the Gram form.
std::pair<int, int> signature(const PicardLattice& lat);

nlohmann::json to_json(const DivisorClass& c);
DivisorClass divisor_from_json(const nlohmann::json& j);

}  // namespace cypair::lattice
