#ifndef CLASSRANK_FAMILIES_HPP
#define CLASSRANK_FAMILIES_HPP

#include "classrank/jacobian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace classrank {

enum class FamilyKind { toy, yamamoto, superelliptic, levin, user };

std::string family_kind_str(FamilyKind k);
FamilyKind family_kind_from_str(const std::string& s);

// Function gamma = A(x) + B(x) y evaluated at specialization fibers.
struct WitnessFn {
    PolyQ a, b;
};

// A parametrized curve y^exponent = h(x) with torsion certificates and a
// linear specialization map x_t = x0 + x1 t.
struct CurveFamily {
    FamilyKind kind = FamilyKind::user;
    std::string name;
    long m = 0;        // torsion order targeted
    int exponent = 2;  // 2 for hyperelliptic kinds, m for superelliptic
    PolyQ h;
    int genus = 0;
    std::vector<TorsionCertificate> certificates;
    std::vector<WitnessFn> witnesses;
    Rat x_of_t_const, x_of_t_coeff; // x_t = const + coeff * t
    int claimed_rank_bound = 0;
    std::string claim_provenance; // "paper" for cited bounds, "tool" otherwise
    std::optional<Rat> weierstrass_root;
    // superelliptic extras
    std::vector<Rat> super_roots;
    Rat super_a0;
    long map_degree_x = 0, map_degree_y = 0; // coordinate map degrees, when recorded

    Rat x_of_t(const Int& t) const { return x_of_t_const + x_of_t_coeff * Rat(t); }
};

// y^2 = 1 - x^m for odd m >= 3; certificate (c=1, w=x, e=-1);
// fibers x_t = 2t + 1
CurveFamily toy_family(long m);

// y^2 = (x^m - 1)(x^m - lambda^2); Weierstrass point at x = 1;
// two certificates c = x^m -+ lambda; fibers x_t = t
CurveFamily yamamoto_family(long m, const Rat& lambda);

struct SuperellipticData {
    long m = 0;
    Rat a0;
    std::vector<Rat> roots; // a_1..a_r, pairwise distinct, gcd(r, m) = 1
};

// y^m = a0 prod (x - a_i); the classes of (a_i, 0) - infinity generate
// (Z/m)^(r-1)
CurveFamily superelliptic_family(const SuperellipticData& data);

// hyperelliptic family moved to its odd-degree model at the recorded
// Weierstrass root, certificates transported
CurveFamily odd_model_family(const CurveFamily& fam);

// Truncated m-th root of h with prescribed branch constant:
// returns f with f(0) = branch and ord_x(f^m - h) >= truncation + 1.
PolyQ mth_root_series(const PolyQ& h, long m, long truncation, const Rat& branch);

// map P(x, y)/den(x) with P = sum num[i](x) y^i
struct CurveMap {
    std::vector<PolyQ> num; // y-coefficients
    PolyQ den;
};

// Degree of a rational map on y^exponent = h(x), via elimination:
// deg_x of Res_y(y^exponent - h, num - s * den) over Q(s), with the
// s-independent base factor divided out. Throws on degenerate data.
long map_degree(int exponent, const PolyQ& h, const CurveMap& map);

struct LevinFamily {
    long m = 0, d = 0, r = 0;
    std::vector<Int> a;   // a_1..a_r
    PolyQ h;              // -(x - a_1^m) prod_{i>=2} (x + a_i^m)
    PolyQ f;              // truncated m-th root of h
    Int b;                // common denominator of f
    CurveMap psi;         // b(y - f) / x^(r-d)
    long psi_degree = 0;  // = d, certified by map_degree
    Int delta0;           // product of primes dividing disc(h)
    Int c0;               // congruence representative for the phi shift
    int genus = 0;
    int claimed_rank_bound = 0; // ceil(floor((d+1)/2) + d/(m-1) - m)
};

// Degree-d construction for d > (m-1)^2; a_list defaults to the first r
// primes, c0 to zero (both are caller-supplied data in general).
LevinFamily levin_family(long m, long d,
                         const std::optional<std::vector<Int>>& a_list = std::nullopt,
                         const Int& c0 = Int(0));

// defining polynomial of the fiber psi = c0 + delta0 * t (degree d in x,
// primitive integral); degenerate fibers return a polynomial of lower
// degree or with repeated roots and are flagged by the caller
PolyQ levin_defining_poly(const LevinFamily& fam, const Int& t);

// least-squares slope of log |disc| against log t over non-degenerate
// sample fibers t = 1..tmax
double levin_disc_slope(const LevinFamily& fam, long tmax);

} // namespace classrank

#endif
