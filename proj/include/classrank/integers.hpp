#ifndef CLASSRANK_INTEGERS_HPP
#define CLASSRANK_INTEGERS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace classrank {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when an integer factorization (or another enumerative search)
// exceeds its configured work budget. Callers see the failure instead of
// a stalled process.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Default factorization budget: number of Pollard-rho iterations allowed
// per composite before giving up. Overridable via CLASSRANK_BUDGET.
std::uint64_t default_factor_budget();

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// floor of the k-th root of n >= 0
inline Int iroot(const Int& n, unsigned long k) {
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

// Exact k-th root of n (sign-aware); nullopt when n is not a perfect power.
std::optional<Int> exact_root(const Int& n, unsigned long k);

inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int pow_int(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// a^e mod m, e >= 0
inline Int powmod(const Int& a, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

std::optional<Int> invmod(const Int& a, const Int& m);

// prime power factor of |n|
struct PrimePower {
    Int p;
    unsigned e = 0;
};

using Factorization = std::vector<PrimePower>;

// Factors |n| by trial division up to a small bound followed by budgeted
// Pollard rho (Brent variant). Throws budget_error when it runs out of
// iterations; a unit input yields the empty factorization.
Factorization factor(const Int& n, std::uint64_t budget = default_factor_budget());

Int unfactor(const Factorization& f);

// n = s * f^2 with s squarefree and sign(s) = sign(n)
std::pair<Int, Int> squarefree_part(const Int& n,
                                    std::uint64_t budget = default_factor_budget());

bool is_squarefree(const Int& n, std::uint64_t budget = default_factor_budget());

std::vector<long> primes_upto(long bound);

// p-adic valuation of a nonzero integer
unsigned valuation(Int n, const Int& p);

// rationals -------------------------------------------------------------

inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int num(const Rat& q) { return q.get_num(); }
inline Int den(const Rat& q) { return q.get_den(); }

Rat rat_pow(const Rat& q, long e);

// Exact rational k-th root (sign-aware), nullopt if none exists.
std::optional<Rat> rat_root(const Rat& q, unsigned long k);

// signed p-adic valuation of a nonzero rational
long rat_valuation(const Rat& q, const Int& p);

// Parses "a/b" or "a"; throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

std::string rat_str(const Rat& q);

} // namespace classrank

#endif
