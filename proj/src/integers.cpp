#include "classrank/integers.hpp"

#include <algorithm>
#include <cstdlib>

namespace classrank {

std::uint64_t default_factor_budget() {
    static const std::uint64_t budget = [] {
        if (const char* env = std::getenv("CLASSRANK_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{20'000'000};
    }();
    return budget;
}

std::optional<Int> exact_root(const Int& n, unsigned long k) {
    if (k == 0) throw std::invalid_argument("exact_root: k must be positive");
    if (n < 0 && k % 2 == 0) return std::nullopt;
    Int a = abs(n);
    Int r;
    int exactp = mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
    if (!exactp) return std::nullopt;
    return n < 0 ? Int(-r) : r;
}

std::optional<Int> invmod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
    return r;
}

namespace {

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial
// factor of odd composite n, or nullopt when the iteration budget is hit.
std::optional<Int> pollard_brent(const Int& n, std::uint64_t& budget, unsigned long seed) {
    if (n % 2 == 0) return Int(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    while (budget > 0) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 3) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1 && budget > 0) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                Int lim = std::min(m, Int(r - k));
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                    if (budget > 0) --budget;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
                if (budget > 0) --budget; else break;
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        // retry with a fresh parameter choice
        seed += 0x9e3779b9u;
    }
    return std::nullopt;
}

void factor_rec(const Int& n, Factorization& out, std::uint64_t& budget) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    // perfect powers first: rho struggles on p^k
    for (unsigned long k = 2; Int(1) << k <= n; ++k) {
        if (auto r = exact_root(n, k)) {
            Factorization sub;
            factor_rec(*r, sub, budget);
            for (auto& pp : sub) pp.e *= static_cast<unsigned>(k);
            out.insert(out.end(), sub.begin(), sub.end());
            return;
        }
        if (k > 64) break;
    }
    auto d = pollard_brent(n, budget, 1);
    if (!d) throw budget_error("factorization exceeded budget for n with " +
                               std::to_string(mpz_sizeinbase(n.get_mpz_t(), 10)) + " digits");
    factor_rec(*d, out, budget);
    factor_rec(n / *d, out, budget);
}

} // namespace

Factorization factor(const Int& n, std::uint64_t budget) {
    if (n == 0) throw std::invalid_argument("factor: zero input");
    Int a = abs(n);
    Factorization out;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        unsigned e = 0;
        while (a % p == 0) { a /= p; ++e; }
        if (e) out.push_back({Int(p), e});
    }
    for (long p = 41; p < 10000 && a > 1; p += 2) {
        if (Int(p) * p > a) break;
        unsigned e = 0;
        while (a % p == 0) { a /= p; ++e; }
        if (e) out.push_back({Int(p), e});
    }
    if (a > 1) factor_rec(a, out, budget);
    // merge duplicates from the recursive splits
    std::sort(out.begin(), out.end(),
              [](const PrimePower& x, const PrimePower& y) { return x.p < y.p; });
    Factorization merged;
    for (auto& pp : out) {
        if (!merged.empty() && merged.back().p == pp.p)
            merged.back().e += pp.e;
        else
            merged.push_back(pp);
    }
    return merged;
}

Int unfactor(const Factorization& f) {
    Int n = 1;
    for (auto& pp : f) n *= pow_int(pp.p, pp.e);
    return n;
}

std::pair<Int, Int> squarefree_part(const Int& n, std::uint64_t budget) {
    if (n == 0) throw std::invalid_argument("squarefree_part: zero input");
    Int s = n < 0 ? -1 : 1, f = 1;
    for (auto& pp : factor(n, budget)) {
        if (pp.e % 2) s *= pp.p;
        f *= pow_int(pp.p, pp.e / 2);
    }
    return {s, f};
}

bool is_squarefree(const Int& n, std::uint64_t budget) {
    if (n == 0) return false;
    for (auto& pp : factor(n, budget))
        if (pp.e > 1) return false;
    return true;
}

std::vector<long> primes_upto(long bound) {
    std::vector<long> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
    for (long i = 2; i <= bound; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long j = 2 * i; j <= bound; j += i) sieve[j] = false;
    }
    return out;
}

unsigned valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation: zero input");
    unsigned v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0 && e < 0) throw std::invalid_argument("rat_pow: zero to negative power");
    Rat base = e < 0 ? Rat(den(q), num(q)) : q;
    base.canonicalize();
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
    r.canonicalize();
    return r;
}

std::optional<Rat> rat_root(const Rat& q, unsigned long k) {
    auto n = exact_root(num(q), k);
    if (!n) return std::nullopt;
    auto d = exact_root(den(q), k);
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

long rat_valuation(const Rat& q, const Int& p) {
    if (q == 0) throw std::invalid_argument("rat_valuation: zero input");
    long v = static_cast<long>(valuation(num(q), p));
    return v - static_cast<long>(valuation(den(q), p));
}

Rat parse_rat(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

} // namespace classrank
