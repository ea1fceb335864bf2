#ifndef CLASSRANK_QUADFIELD_HPP
#define CLASSRANK_QUADFIELD_HPP

#include "classrank/integers.hpp"

#include <vector>

namespace classrank {

// Quadratic field Q(sqrt(d0)), d0 squarefree, with its fundamental
// discriminant. D determines the field up to isomorphism.
struct QuadField {
    Int d0; // squarefree radicand, not 0 or 1
    Int D;  // d0 if d0 = 1 mod 4, else 4*d0

    bool is_real() const { return d0 > 0; }
    bool is_imaginary() const { return d0 < 0; }
    int unit_rank() const { return d0 > 0 ? 1 : 0; }
    // number of roots of unity
    int torsion_units() const { return d0 == -1 ? 4 : (d0 == -3 ? 6 : 2); }

    bool operator==(const QuadField& o) const { return d0 == o.d0; }
};

// Rejects non-squarefree and degenerate radicands.
QuadField make_field(const Int& d0, std::uint64_t budget = default_factor_budget());

// Element a + b*sqrt(d0), coordinates over the Q-basis (1, sqrt(d0)).
struct QuadElt {
    QuadField K;
    Rat a, b;

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    QuadElt conj() const { return {K, a, -b}; }
    Rat norm() const { return a * a - Rat(K.d0) * b * b; }
    Rat trace() const { return 2 * a; }

    QuadElt operator+(const QuadElt& o) const;
    QuadElt operator-(const QuadElt& o) const;
    QuadElt operator*(const QuadElt& o) const;
    QuadElt operator-() const { return {K, -a, -b}; }
    QuadElt inverse() const;
    bool operator==(const QuadElt& o) const { return K == o.K && a == o.a && b == o.b; }
};

QuadElt make_elt(const QuadField& K, const Rat& a, const Rat& b);
QuadElt pow_elt(QuadElt base, long e);

enum class SplitType { split, inert, ramified };

// One prime of the maximal order in the factorization of a principal
// ideal. Split primes above the same p are told apart by the residue of
// the module generator: P = (p, w - root) with w = (D + sqrt(D))/2.
struct PrimeIdealFactor {
    Int p;
    SplitType type = SplitType::inert;
    Int root;      // root of the minimal polynomial of w mod p (split/ramified)
    long exponent = 0;
    int residue_degree = 1;
};

// Complete factorization of the principal fractional ideal (g), g != 0.
// Only primes with nonzero exponent are listed, ordered by (p, root).
std::vector<PrimeIdealFactor> ideal_factorization(
    const QuadElt& g, std::uint64_t budget = default_factor_budget());

// true iff every finite-place valuation of g is divisible by m
bool selmer_member(const QuadElt& g, long m,
                   std::uint64_t budget = default_factor_budget());

// All solutions of d^p = g in K, p prime. Empty when g is not a p-th power.
std::vector<QuadElt> pth_roots(const QuadElt& g, long p);

bool is_pth_power(const QuadElt& g, long p);

// Degree [K(g^(1/m)) : K]. Equals m exactly when g avoids every p-th
// power for p | m and, when 4 | m, avoids -4*K^4.
long kummer_degree(const QuadElt& g, long m);

// true iff K is not contained in the m-th cyclotomic field; the quadratic
// subfields of Q(mu_m) are exactly those with conductor |D| dividing m
bool linearly_disjoint_from_cyclotomic(const QuadField& K, long m);

struct FundamentalUnit {
    QuadElt eps; // > 1 in the embedding sending sqrt(d0) to the positive root
    int norm_sign = 1;
};

// Fundamental unit of the maximal order, real fields only.
FundamentalUnit fundamental_unit(const QuadField& K);

// helpers shared with the class-group side -------------------------------

// minimal polynomial x^2 - Dx + (D^2-D)/4 of w = (D + sqrt(D))/2
Int omega_norm(const Int& D);

// coordinates of g over (1, w)
std::pair<Rat, Rat> omega_coords(const QuadElt& g);

// roots of the minimal polynomial of w mod p (one per prime above p;
// empty for inert p)
std::vector<Int> omega_roots_mod_p(const Int& D, const Int& p);

// square root mod an odd prime, nullopt for non-residues (Tonelli-Shanks)
std::optional<Int> sqrt_mod_p(const Int& a, const Int& p);

} // namespace classrank

#endif
