#ifndef CLASSRANK_GF_HPP
#define CLASSRANK_GF_HPP

#include "classrank/integers.hpp"

#include <vector>

namespace classrank {

// Small finite field F_{p^k}, p an odd prime. Elements are encoded as
// integers in [0, p^k): the base-p digits are the coefficients of the
// residue polynomial. The modulus for k > 1 is the monic irreducible
// whose coefficient tuple is least in base-p-integer order, so towers
// are identical across runs and platforms.
class GF {
public:
    using Elt = long;

    explicit GF(long p, int k = 1);

    long p() const { return p_; }
    int k() const { return k_; }
    long q() const { return q_; }
    const std::vector<long>& modulus() const { return mod_; }

    Elt zero() const { return 0; }
    Elt one() const { return 1; }

    Elt add(Elt a, Elt b) const;
    Elt sub(Elt a, Elt b) const;
    Elt neg(Elt a) const;
    Elt mul(Elt a, Elt b) const;
    Elt inv(Elt a) const;
    Elt pow(Elt a, Int e) const;

    Elt from_int(const Int& n) const; // image of an integer (prime subfield)
    Elt from_rat(const Rat& r) const; // throws when the denominator vanishes

    bool is_square(Elt a) const; // Euler criterion; true for 0

private:
    long p_;
    int k_;
    long q_;
    std::vector<long> mod_; // monic of degree k, little-endian, k+1 entries
};

// Dense polynomial over GF, little-endian coefficients, trimmed.
using PolyF = std::vector<GF::Elt>;

inline long pf_deg(const PolyF& a) { return static_cast<long>(a.size()) - 1; }
inline bool pf_is_zero(const PolyF& a) { return a.empty(); }
void pf_trim(PolyF& a);

PolyF pf_from_const(const GF& F, GF::Elt c);

PolyF pf_add(const GF& F, const PolyF& a, const PolyF& b);
PolyF pf_sub(const GF& F, const PolyF& a, const PolyF& b);
PolyF pf_neg(const GF& F, const PolyF& a);
PolyF pf_mul(const GF& F, const PolyF& a, const PolyF& b);
PolyF pf_scale(const GF& F, const PolyF& a, GF::Elt s);
std::pair<PolyF, PolyF> pf_divrem(const GF& F, const PolyF& a, const PolyF& b);
PolyF pf_mod(const GF& F, const PolyF& a, const PolyF& b);
PolyF pf_divexact(const GF& F, const PolyF& a, const PolyF& b);
PolyF pf_monic(const GF& F, const PolyF& a);
PolyF pf_gcd(const GF& F, PolyF a, PolyF b); // monic
// g = gcd (monic), with s*a + t*b = g
struct PfXgcd {
    PolyF g, s, t;
};
PfXgcd pf_xgcd(const GF& F, const PolyF& a, const PolyF& b);
GF::Elt pf_eval(const GF& F, const PolyF& a, GF::Elt x);
PolyF pf_derivative(const GF& F, const PolyF& a);
bool pf_equal(const PolyF& a, const PolyF& b);

} // namespace classrank

#endif
