#include <doctest.h>

#include <cypair/lattice.hpp>

#include <random>

using namespace cypair;
using namespace cypair::lattice;

TEST_CASE("basis intersection numbers") {
    PicardLattice lat{12};
    auto E0 = basis_class(lat, 0);
    CHECK(intersect(lat, E0, E0) == 1);
    for (int i = 1; i <= 12; ++i) {
        auto Ei = basis_class(lat, i);
        CHECK(intersect(lat, Ei, Ei) == -1);
        CHECK(intersect(lat, E0, Ei) == 0);
        for (int j = i + 1; j <= 12; ++j)
            CHECK(intersect(lat, Ei, basis_class(lat, j)) == 0);
    }
}

TEST_CASE("canonical class self-intersection is 9 - k") {
    for (int k : {0, 10, 12}) {
        PicardLattice lat{k};
        auto K = canonical_class(lat);
        CHECK(intersect(lat, K, K) == Rational(9 - k));
    }
    PicardLattice lat{12};
    auto K = canonical_class(lat);
    CHECK(K.coords[0] == -3);
    for (int i = 1; i <= 12; ++i) CHECK(K.coords[i] == 1);
}

TEST_CASE("strict transform classes") {
    PicardLattice lat{5};
    // conic through all five points
    auto conic = curve_class(lat, 2, {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
    CHECK(conic.coords[0] == 2);
    CHECK(intersect(lat, conic, conic) == Rational(4 - 5));
    // line through points 1 and 2
    auto line = curve_class(lat, 1, {{1, 1}, {2, 1}});
    CHECK(intersect(lat, line, line) == -1);
    CHECK(intersect(lat, conic, line) == Rational(2 - 2));  // meet away from base points: 2*1 - 1 - 1
    // a nodal point counts with multiplicity 2
    auto nodal = curve_class(lat, 3, {{1, 2}});
    CHECK(nodal.coords[1] == -2);
    CHECK(intersect(lat, nodal, nodal) == Rational(9 - 4));
}

TEST_CASE("cubic through k simple points cancels the canonical class") {
    for (int k = 0; k <= 20; ++k) {
        PicardLattice lat{k};
        std::map<int, int> all;
        for (int i = 1; i <= k; ++i) all[i] = 1;
        auto cubic = curve_class(lat, 3, all);
        auto sum = cubic + canonical_class(lat);
        CHECK(is_numerically_trivial(sum));
    }
}

TEST_CASE("numerical triviality is exact") {
    PicardLattice lat{12};
    CHECK(is_numerically_trivial(zero_class(lat)));
    CHECK_FALSE(is_numerically_trivial(canonical_class(lat)));
    // thirds cancel exactly
    auto K = canonical_class(lat);
    auto third = curve_class(lat, 1, {}) * Rational(1, 3);
    auto r = K + third * Rational(9) - curve_class(lat, 0, {{1, 1}}) * Rational(-1);
    // -3E0 + sum Ei + 3E0 - E1 != 0
    CHECK_FALSE(is_numerically_trivial(r));
    auto back = r - r;
    CHECK(is_numerically_trivial(back));
}

TEST_CASE("bilinearity and symmetry on random rational classes") {
    PicardLattice lat{7};
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-30, 30);
    std::uniform_int_distribution<int> den(1, 12);
    auto rnd = [&]() {
        DivisorClass c = zero_class(lat);
        for (auto& x : c.coords) x = Rational(num(rng), den(rng));
        return c;
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto u = rnd(), v = rnd(), w = rnd();
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK(intersect(lat, u, v) == intersect(lat, v, u));
        CHECK(intersect(lat, u * a + v * b, w) == a * intersect(lat, u, w) + b * intersect(lat, v, w));
    }
}

TEST_CASE("signature is (1, k)") {
    for (int k = 0; k <= 20; ++k) {
        PicardLattice lat{k};
        auto [pos, neg] = signature(lat);
        CHECK(pos == 1);
        CHECK(neg == k);
    }
}

TEST_CASE("input validation") {
    PicardLattice lat{3};
    CHECK_THROWS_AS(basis_class(lat, 4), std::out_of_range);
    CHECK_THROWS_AS(basis_class(lat, -1), std::out_of_range);
    CHECK_THROWS_AS(curve_class(lat, -2, {}), std::invalid_argument);
    CHECK_THROWS_AS(curve_class(lat, 1, {{0, 1}}), std::out_of_range);
    CHECK_THROWS_AS(curve_class(lat, 1, {{4, 1}}), std::out_of_range);
    CHECK_THROWS_AS(curve_class(lat, 1, {{1, -1}}), std::invalid_argument);
    PicardLattice other{5};
    CHECK_THROWS_AS(intersect(lat, zero_class(lat), zero_class(other)), std::invalid_argument);
    CHECK_THROWS_AS(zero_class(lat) + zero_class(other), std::invalid_argument);
}

TEST_CASE("json round trip keeps exact rationals") {
    PicardLattice lat{4};
    DivisorClass c = zero_class(lat);
    c.coords[0] = Rational(-3);
    c.coords[1] = Rational(1, 3);
    c.coords[2] = Rational(7, 2);
    c.coords[3] = Rational(0);
    c.coords[4] = Rational(-22, 7);
    auto j = to_json(c);
    CHECK(j.is_array());
    CHECK(j[0].get<std::string>() == "-3");
    CHECK(j[1].get<std::string>() == "1/3");
    auto back = divisor_from_json(j);
    CHECK(back == c);

    auto mixed = divisor_from_json(nlohmann::json::parse(R"(["1/2", 3, "-4"])"));
    CHECK(mixed.coords[0] == Rational(1, 2));
    CHECK(mixed.coords[1] == 3);
    CHECK(mixed.coords[2] == -4);

    CHECK_THROWS_AS(divisor_from_json(nlohmann::json::parse(R"({"a": 1})")), std::invalid_argument);
    CHECK_THROWS_AS(divisor_from_json(nlohmann::json::parse(R"(["1/0"])")), std::invalid_argument);
    CHECK_THROWS_AS(divisor_from_json(nlohmann::json::parse(R"([1.5])")), std::invalid_argument);
}
