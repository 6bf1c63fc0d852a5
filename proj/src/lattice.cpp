#include <cypair/lattice.hpp>

#include <stdexcept>

namespace cypair::lattice {

int PicardLattice::gram_diag(int i) const {
    if (i < 0 || i > k) throw std::out_of_range("gram index out of range");
    return i == 0 ? 1 : -1;
}

static void check_rank(const DivisorClass& a, const DivisorClass& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("divisor class rank mismatch");
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
    check_rank(*this, o);
    DivisorClass r = *this;
    for (int i = 0; i < rank(); ++i) r.coords[i] += o.coords[i];
    return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const {
    check_rank(*this, o);
    DivisorClass r = *this;
    for (int i = 0; i < rank(); ++i) r.coords[i] -= o.coords[i];
    return r;
}

DivisorClass DivisorClass::operator*(const Rational& s) const {
    DivisorClass r = *this;
    for (auto& c : r.coords) c *= s;
    return r;
}

DivisorClass DivisorClass::operator-() const {
    DivisorClass r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

DivisorClass zero_class(const PicardLattice& lat) {
    return DivisorClass{std::vector<Rational>(lat.rank(), Rational(0))};
}

DivisorClass basis_class(const PicardLattice& lat, int i) {
    if (i < 0 || i > lat.k) throw std::out_of_range("basis index out of range");
    DivisorClass c = zero_class(lat);
    c.coords[i] = 1;
    return c;
}

Rational intersect(const PicardLattice& lat, const DivisorClass& u, const DivisorClass& v) {
    if (u.rank() != lat.rank() || v.rank() != lat.rank())
        throw std::invalid_argument("divisor class does not belong to this lattice");
    Rational s = u.coords[0] * v.coords[0];
    for (int i = 1; i <= lat.k; ++i) s -= u.coords[i] * v.coords[i];
    return s;
}

DivisorClass canonical_class(const PicardLattice& lat) {
    DivisorClass c = zero_class(lat);
    c.coords[0] = -3;
    for (int i = 1; i <= lat.k; ++i) c.coords[i] = 1;
    return c;
}

DivisorClass curve_class(const PicardLattice& lat, int degree, const std::map<int, int>& mults) {
    if (degree < 0) throw std::invalid_argument("curve degree must be nonnegative");
    DivisorClass c = zero_class(lat);
    c.coords[0] = degree;
    for (const auto& [idx, m] : mults) {
        if (idx < 1 || idx > lat.k) throw std::out_of_range("multiplicity index out of range");
        if (m < 0) throw std::invalid_argument("multiplicity must be nonnegative");
        c.coords[idx] = -m;
    }
    return c;
}

bool is_numerically_trivial(const DivisorClass& c) {
    for (const auto& x : c.coords)
        if (x != 0) return false;
    return true;
}

std::pair<int, int> signature(const PicardLattice& lat) {
    int pos = 0, neg = 0;
    for (int i = 0; i < lat.rank(); ++i) {
        int d = lat.gram_diag(i);
        if (d > 0) ++pos;
        else if (d < 0) ++neg;
    }
    return {pos, neg};
}

nlohmann::json to_json(const DivisorClass& c) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : c.coords) arr.push_back(to_string(x));
    return arr;
}

DivisorClass divisor_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("divisor class JSON must be an array");
    DivisorClass c;
    for (const auto& e : j) {
        if (e.is_string()) c.coords.push_back(parse_rational(e.get<std::string>()));
        else if (e.is_number_integer()) c.coords.push_back(Rational(e.get<long long>()));
        else throw std::invalid_argument("divisor coordinates must be strings or integers");
    }
    return c;
}

}  // namespace cypair::lattice
