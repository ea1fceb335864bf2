#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "classrank/families.hpp"

#include <random>

using namespace classrank;

namespace {

PolyQ from_longs(std::initializer_list<long> cs) {
    std::vector<Rat> v;
    for (long c : cs) v.emplace_back(c);
    return PolyQ(std::move(v));
}

} // namespace

TEST_CASE("toy family") {
    auto f3 = toy_family(3);
    CHECK(f3.genus == 1);
    CHECK(f3.h == from_longs({1, 0, 0, -1}));
    CHECK(verify_certificate(f3.certificates.at(0)));
    CHECK(f3.x_of_t(Int(2)) == 5);

    auto f5 = toy_family(5);
    CHECK(f5.genus == 2);
    CHECK(verify_certificate(f5.certificates.at(0)));

    CHECK_THROWS_AS(toy_family(4), std::invalid_argument);
    CHECK_THROWS_AS(toy_family(1), std::invalid_argument);
}

TEST_CASE("yamamoto family") {
    auto fam = yamamoto_family(3, Rat(2));
    CHECK(fam.h == from_longs({4, 0, 0, -5, 0, 0, 1}));
    CHECK(fam.genus == 2);
    CHECK(fam.certificates.size() == 2);
    for (const auto& c : fam.certificates) CHECK(verify_certificate(c));
    CHECK(fam.weierstrass_root == Rat(1));
    CHECK(fam.claimed_rank_bound == 2);
    CHECK(fam.claim_provenance == "paper");

    // m = 2, lambda = 3: h = x^4 - 10x^2 + 9
    auto f2 = yamamoto_family(2, Rat(3));
    CHECK(f2.h == from_longs({9, 0, -10, 0, 1}));

    CHECK_THROWS_AS(yamamoto_family(3, Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(yamamoto_family(3, Rat(0)), std::invalid_argument);
}

TEST_CASE("yamamoto odd model family") {
    auto odd = odd_model_family(yamamoto_family(3, Rat(2)));
    CHECK(odd.h == from_longs({1, 6, 15, 15, 0, -9}));
    CHECK(odd.genus == 2);
    CHECK(odd.certificates.size() == 2);
    for (const auto& c : odd.certificates) CHECK(verify_certificate(c));
    // toy is already odd: unchanged
    auto t = odd_model_family(toy_family(3));
    CHECK(t.h == toy_family(3).h);
}

TEST_CASE("superelliptic family") {
    // gcd(r, m) = 1 violations are rejected
    SuperellipticData bad{3, Rat(-1), {Rat(0), Rat(1), Rat(2)}};
    CHECK_THROWS_AS(superelliptic_family(bad), std::invalid_argument);

    SuperellipticData ok{3, Rat(-1), {Rat(0), Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)}};
    auto fam = superelliptic_family(ok);
    CHECK(fam.claimed_rank_bound == 6); // (Z/3)^(r-1), r = 7
    CHECK(fam.exponent == 3);
    CHECK(fam.h.degree() == 7);
    CHECK(fam.map_degree_x == 3);
    CHECK(fam.map_degree_y == 7);

    SuperellipticData hyp{2, Rat(1), {Rat(0), Rat(1), Rat(4)}};
    auto fam2 = superelliptic_family(hyp);
    CHECK(fam2.claimed_rank_bound == 2);
    CHECK(fam2.exponent == 2);
    CHECK(fam2.genus == 1);

    SuperellipticData dup{3, Rat(1), {Rat(0), Rat(0)}};
    CHECK_THROWS_AS(superelliptic_family(dup), std::invalid_argument);
}

TEST_CASE("mth_root_series contract") {
    // perfect cube
    PolyQ g = from_longs({1, 1});
    CHECK(mth_root_series(g * g * g, 3, 7, Rat(1)) == g);
    // binomial series of sqrt(1+x)
    PolyQ f = mth_root_series(from_longs({1, 1}), 2, 2, Rat(1));
    CHECK(f == PolyQ(std::vector<Rat>{Rat(1), Rat(1, 2), Rat(-1, 8)}));
    // branch constant enforcement
    CHECK_THROWS_AS(mth_root_series(from_longs({1, 1}), 2, 2, Rat(-2)), std::invalid_argument);
    CHECK_THROWS_AS(mth_root_series(from_longs({0, 1}), 2, 2, Rat(0)), std::invalid_argument);
    // negative branch is honored
    PolyQ fn = mth_root_series(from_longs({1, 1}), 2, 2, Rat(-1));
    CHECK(fn == PolyQ(std::vector<Rat>{Rat(-1), Rat(-1, 2), Rat(1, 8)}));

    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        long m = 2 + static_cast<long>(rng() % 4);
        std::vector<Rat> cs{Rat(1)};
        for (int j = 0; j < 5; ++j) cs.emplace_back(static_cast<long>(rng() % 9) - 4);
        PolyQ h(cs);
        long trunc = static_cast<long>(rng() % 7);
        PolyQ root = mth_root_series(h, m, trunc, Rat(1));
        CHECK(root.degree() <= trunc);
        PolyQ err = pow(root, static_cast<unsigned long>(m)) - h;
        CHECK(static_cast<long>(x_order(err, 1000)) >= trunc + 1);
    }
}

TEST_CASE("map degrees by elimination") {
    // x on a genus-2 odd model is the degree-2 hyperelliptic map
    PolyQ h5 = from_longs({1, 0, 0, 0, 0, 1});
    CHECK(map_degree(2, h5, {{PolyQ::x()}, PolyQ(Rat(1))}) == 2);
    // y on y^3 = quintic has degree 5
    CHECK(map_degree(3, h5, {{PolyQ(), PolyQ(Rat(1))}, PolyQ(Rat(1))}) == 5);
    // y on y^2 = quintic: degree 5 as well
    CHECK(map_degree(2, h5, {{PolyQ(), PolyQ(Rat(1))}, PolyQ(Rat(1))}) == 5);
    // 1/x has the same degree as x
    CHECK(map_degree(2, h5, {{PolyQ(Rat(1))}, PolyQ::x()}) == 2);
}

TEST_CASE("levin family (3, 5)") {
    auto fam = levin_family(3, 5);
    CHECK(fam.r == 7);
    CHECK(fam.a.size() == 7);
    CHECK(fam.a[0] == 2);
    CHECK(fam.h.degree() == 7);
    CHECK(fam.f.degree() <= 7 / 3 - 1);
    // ord_x(f^3 - h) >= floor(r/m) = 2 >= r - d
    PolyQ err = pow(fam.f, 3) - fam.h;
    CHECK(x_order(err, 100) >= 2);
    CHECK(fam.psi_degree == 5);
    CHECK(fam.delta0 % 2 == 0); // 2 divides many root differences
    CHECK(fam.genus == 6);
    // claimed bound: ceil(3 + 5/2 - 3) = 3
    CHECK(fam.claimed_rank_bound == 3);

    CHECK_THROWS_AS(levin_family(3, 4), std::invalid_argument); // d <= (m-1)^2
    // m = 2, d = 2 > 1 is allowed and r = 3
    auto f22 = levin_family(2, 2);
    CHECK(f22.r == 3);
    CHECK(f22.psi_degree == 2);
}

TEST_CASE("levin maximality: r + 1 violates a constraint") {
    for (auto [m, d] : std::vector<std::pair<long, long>>{{3, 5}, {2, 2}, {2, 3}, {4, 10}}) {
        auto fam = levin_family(m, d);
        long r1 = fam.r + 1;
        bool ok = (r1 - r1 / m <= d) && (std::gcd(r1, m) == 1);
        CHECK(!ok);
        CHECK(fam.r - fam.r / m <= d);
        CHECK(std::gcd(fam.r, m) == 1);
        CHECK(Rat(fam.r) >= Rat(d) + Rat(d, m - 1) - Rat(m) + Rat(1));
    }
}

TEST_CASE("levin defining polynomials have degree d") {
    auto fam = levin_family(3, 5);
    for (long t : {1L, 2L, 7L}) {
        PolyQ P = levin_defining_poly(fam, Int(t));
        CHECK(P.degree() == 5);
        // integral and primitive
        Int g = 0;
        for (const Rat& c : P.c) {
            CHECK(den(c) == 1);
            g = gcd(g, num(c));
        }
        CHECK(g == 1);
    }
}

TEST_CASE("levin discriminant growth stays near the predicted exponent") {
    auto fam = levin_family(3, 5);
    double slope = levin_disc_slope(fam, 30);
    CHECK(slope <= static_cast<double>((fam.m + 1) * fam.d - 1) + 0.5);
}
