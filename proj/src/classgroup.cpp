#include "classrank/classgroup.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace classrank {

QuadForm principal_form(const Int& D) {
    Int b0 = mod_floor(D, 2);
    return {Int(1), b0, (b0 * b0 - D) / 4};
}

bool is_fundamental_discriminant(const Int& D, std::uint64_t budget) {
    if (D == 0 || D == 1) return false;
    Int r = mod_floor(D, 4);
    if (r == 1) return is_squarefree(D, budget);
    if (r != 0) return false;
    Int d0 = D / 4;
    Int r4 = mod_floor(d0, 4);
    if (r4 == 1) return false; // then D/4 would already be a discriminant
    return is_squarefree(d0, budget);
}

static void check_usable_disc(const Int& D) {
    if (D == 0 || is_square(D))
        throw std::invalid_argument("form discriminant must be nonzero and non-square");
}

bool is_reduced(const QuadForm& f) {
    Int D = f.disc();
    check_usable_disc(D);
    if (D < 0) {
        if (f.a <= 0) return false;
        Int ab = abs(f.b);
        if (!(ab <= f.a && f.a <= f.c)) return false;
        if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
        return true;
    }
    Int s = isqrt(D);
    Int t = 2 * abs(f.a);
    return f.b >= 1 && f.b <= s && s < t + f.b && t <= s + f.b;
}

namespace {

// normalize b into the window (lo, lo + 2|a|]
Int window_residue(const Int& b, const Int& abs2a, const Int& lo) {
    return lo + 1 + mod_floor(b - lo - 1, abs2a);
}

QuadForm normalize_definite(QuadForm f) {
    // b in (-a, a]
    Int b = window_residue(f.b, 2 * f.a, -f.a);
    return {f.a, b, (b * b - f.disc()) / (4 * f.a)};
}

QuadForm normalize_indefinite(const QuadForm& f, const Int& s) {
    Int aa = abs(f.a);
    Int lo = aa > s ? Int(-aa) : Int(s - 2 * aa);
    Int b = window_residue(f.b, 2 * aa, lo);
    return {f.a, b, (b * b - f.disc()) / (4 * f.a)};
}

} // namespace

QuadForm rho(const QuadForm& f) {
    Int D = f.disc();
    check_usable_disc(D);
    if (f.c == 0) throw std::invalid_argument("rho: degenerate form");
    QuadForm g{f.c, -f.b, f.a};
    if (D < 0) {
        if (g.a <= 0) throw std::invalid_argument("rho: form not positive definite");
        g = normalize_definite(g);
    } else {
        g = normalize_indefinite(g, isqrt(D));
    }
    g.c = (g.b * g.b - D) / (4 * g.a);
    return g;
}

QuadForm reduce(QuadForm f) {
    Int D = f.disc();
    check_usable_disc(D);
    if (D < 0) {
        if (f.a <= 0) throw std::invalid_argument("reduce: form not positive definite");
        f = normalize_definite(f);
        while (f.a > f.c) {
            f = QuadForm{f.c, -f.b, f.a};
            f = normalize_definite(f);
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
    Int s = isqrt(D);
    f = normalize_indefinite(f, s);
    long guard = 0;
    while (!is_reduced(f)) {
        f = rho(f);
        if (++guard > 10'000'000) throw budget_error("indefinite reduction did not terminate");
    }
    return f;
}

std::vector<QuadForm> reduction_cycle(const QuadForm& f) {
    QuadForm start = reduce(f);
    std::vector<QuadForm> cycle{start};
    QuadForm cur = rho(start);
    while (!(cur == start)) {
        cycle.push_back(cur);
        cur = rho(cur);
        if (cycle.size() > 50'000'000) throw budget_error("reduction cycle too long");
    }
    return cycle;
}

QuadForm canonical_form(const QuadForm& f) {
    if (f.disc() < 0) return reduce(f);
    auto cyc = reduction_cycle(f);
    return *std::min_element(cyc.begin(), cyc.end());
}

QuadForm compose(const QuadForm& f, const QuadForm& g) {
    Int D = f.disc();
    if (g.disc() != D) throw std::invalid_argument("compose: discriminants differ");
    check_usable_disc(D);

    QuadForm f1 = reduce(f), f2 = reduce(g);
    // the module arithmetic below wants positive norms; indefinite cycles
    // alternate the sign of a, so one rho step fixes a negative lead
    if (f1.a < 0) f1 = rho(f1);
    if (f2.a < 0) f2 = rho(f2);
    assert(f1.a > 0 && f2.a > 0);

    // ideal attached to (a, b, c): a Z + (mu + w) Z with mu = (-b - D)/2
    Int mu1 = (-f1.b - D) / 2, mu2 = (-f2.b - D) / 2;
    Int Nw = omega_norm(D);

    // generators of the product module over (1, w)
    struct Row { Int x, y; };
    Row rows[4] = {
        {f1.a * f2.a, Int(0)},
        {f1.a * mu2, f1.a},
        {f2.a * mu1, f2.a},
        {mu1 * mu2 - Nw, mu1 + mu2 + D},
    };

    // two-column HNF: first clear the w-column by gcd elimination
    Int C = 0, Bx = 0;
    for (auto& r : rows) {
        if (r.y == 0) continue;
        Int u, v, gg;
        mpz_gcdext(gg.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), C.get_mpz_t(), r.y.get_mpz_t());
        Int nBx = u * Bx + v * r.x;
        // keep the reduced row (y component zero) for the x-gcd
        Int rx = (C / gg) * r.x - (r.y / gg) * Bx;
        r.x = rx;
        r.y = 0;
        C = gg;
        Bx = nBx;
    }
    Int A = 0;
    for (auto& r : rows) A = gcd(A, r.x);
    A = abs(A);
    assert(A > 0 && C > 0);

    // primitive part: content C divides both A and Bx
    assert(A % C == 0);
    Int a3 = A / C;
    Int mu3 = mod_floor(Bx / C, a3);
    assert(mod_floor(Bx, C) == 0);

    Int b3 = -2 * mu3 - D;
    Int num = b3 * b3 - D;
    assert(mod_floor(num, 4 * a3) == 0);
    return reduce(QuadForm{a3, b3, num / (4 * a3)});
}

QuadForm pow_form(const QuadForm& f, Int e) {
    Int D = f.disc();
    QuadForm base = e < 0 ? reduce(f.opposite()) : reduce(f);
    if (e < 0) e = -e;
    QuadForm r = reduce(principal_form(D));
    while (e > 0) {
        if (mod_floor(e, 2) == 1) r = compose(r, base);
        base = compose(base, base);
        e /= 2;
    }
    return r;
}

bool equivalent(const QuadForm& f, const QuadForm& g) {
    if (f.disc() != g.disc()) throw std::invalid_argument("equivalent: discriminants differ");
    Int D = f.disc();
    if (D < 0) return reduce(f) == reduce(g);
    QuadForm target = reduce(g);
    for (const auto& h : reduction_cycle(f))
        if (h == target) return true;
    return false;
}

std::vector<QuadForm> class_representatives(const Int& D, const Int& enum_budget) {
    if (abs(D) > enum_budget) throw budget_error("discriminant exceeds enumeration budget");
    if (!is_fundamental_discriminant(D))
        throw std::invalid_argument("class_representatives: discriminant not fundamental");

    std::vector<QuadForm> out;
    if (D < 0) {
        Int amax = isqrt(abs(D) / 3);
        for (Int a = 1; a <= amax; ++a) {
            for (Int b = -a + 1; b <= a; ++b) {
                if (mod_floor(b, 2) != mod_floor(D, 2)) continue;
                Int num = b * b - D;
                if (mod_floor(num, 4 * a) != 0) continue;
                Int c = num / (4 * a);
                if (c < a) continue;
                if (a == c && b < 0) continue; // b = -a is already outside the range
                out.push_back({a, b, c});
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // indefinite: enumerate all reduced forms, then keep one per rho-cycle
    Int s = isqrt(D);
    std::set<QuadForm> reduced;
    Int b0 = mod_floor(D, 2) == 0 ? 2 : 1;
    for (Int b = b0; b <= s; b += 2) {
        Int M = (D - b * b) / 4;
        for (Int d = 1; d * d <= M; ++d) {
            if (mod_floor(M, d) != 0) continue;
            for (const Int& aa : {Int(d), Int(M / d)}) {
                if (!(s < 2 * aa + b && 2 * aa <= s + b)) continue;
                for (int sign : {1, -1}) {
                    Int a = sign * aa;
                    reduced.insert({a, b, -M / a});
                }
                if (d * d == M) break;
            }
        }
    }

    std::set<QuadForm> seen;
    for (const auto& f : reduced) {
        if (seen.count(f)) continue;
        auto cyc = reduction_cycle(f);
        for (const auto& g : cyc) seen.insert(g);
        out.push_back(*std::min_element(cyc.begin(), cyc.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct SylowBasis {
    std::vector<QuadForm> gens;
    std::vector<unsigned> exps; // descending prime exponents (partition)
};

// generator extraction inside the p-Sylow subgroup by greedy maximal
// image order, with the span kept materialized
SylowBasis sylow_basis(const std::vector<QuadForm>& sylow, const Int& p,
                       const QuadForm& identity) {
    SylowBasis out;
    std::set<QuadForm> span{identity};
    while (span.size() < sylow.size()) {
        QuadForm best = identity;
        unsigned best_ord = 0;
        for (const auto& y : sylow) {
            QuadForm cur = y;
            unsigned j = 0;
            while (!span.count(cur)) {
                cur = canonical_form(pow_form(cur, p));
                ++j;
            }
            if (j > best_ord) {
                best_ord = j;
                best = y;
            }
        }
        assert(best_ord > 0);
        // span <- span * <best>
        std::set<QuadForm> next = span;
        QuadForm acc = best;
        Int img_order = pow_int(p, best_ord);
        for (Int k = 1; k < img_order; ++k) {
            for (const auto& s : span) next.insert(canonical_form(compose(s, acc)));
            if (k + 1 < img_order) acc = canonical_form(compose(acc, best));
        }
        assert(Int(next.size()) == Int(span.size()) * img_order);
        span = std::move(next);
        out.gens.push_back(best);
        out.exps.push_back(best_ord);
    }
    return out;
}

} // namespace

ClassGroupStructure class_group(const Int& D, const Int& enum_budget) {
    auto reps = class_representatives(D, enum_budget);
    ClassGroupStructure S;
    S.D = D;
    S.narrow = D > 0;
    S.h = static_cast<long>(reps.size());
    if (S.h == 1) return S;

    const QuadForm identity = canonical_form(principal_form(D));
    Factorization hf = factor(S.h);

    // per-prime partitions (descending exponent vectors) and generators
    std::vector<std::pair<Int, SylowBasis>> parts;
    for (const auto& pp : hf) {
        const Int& p = pp.p;
        Int cofactor = S.h / pow_int(p, pp.e);

        std::set<QuadForm> sylow_set;
        for (const auto& f : reps) sylow_set.insert(canonical_form(pow_form(f, cofactor)));
        std::vector<QuadForm> sylow(sylow_set.begin(), sylow_set.end());
        assert(Int(sylow.size()) == pow_int(p, pp.e));

        auto basis = sylow_basis(sylow, p, identity);
        // cross-check against order statistics: #{x : x^(p^i) = 1}
        std::vector<QuadForm> cur = sylow;
        unsigned prev_s = 0;
        for (unsigned i = 1; i <= pp.e; ++i) {
            size_t n = 0;
            for (auto& x : cur) {
                x = canonical_form(pow_form(x, p));
                if (x == identity) ++n;
            }
            // n = p^{s_i}; factors with exponent >= i number s_i - s_{i-1}
            unsigned s_i = 0;
            {
                size_t t = n;
                while (t > 1) { assert(t % mpz_get_ui(p.get_mpz_t()) == 0); t /= mpz_get_ui(p.get_mpz_t()); ++s_i; }
            }
            unsigned expect = 0;
            for (unsigned e : basis.exps)
                if (e >= i) ++expect;
            assert(s_i - prev_s == expect);
            (void)expect;
            prev_s = s_i;
            if (n == cur.size()) break;
        }
        parts.emplace_back(p, std::move(basis));
    }

    size_t k = 0;
    for (auto& [p, basis] : parts) k = std::max(k, basis.exps.size());

    // combine Sylow pieces: j-th largest invariant factor collects the
    // j-th largest exponent from every prime
    std::vector<Int> factors_desc(k, Int(1));
    std::vector<QuadForm> gens_desc(k, identity);
    for (auto& [p, basis] : parts) {
        for (size_t j = 0; j < basis.exps.size(); ++j) {
            factors_desc[j] *= pow_int(p, basis.exps[j]);
            gens_desc[j] = canonical_form(compose(gens_desc[j], basis.gens[j]));
        }
    }
    S.invariant_factors.assign(factors_desc.rbegin(), factors_desc.rend());
    S.generators.assign(gens_desc.rbegin(), gens_desc.rend());

    Int prod = 1;
    for (auto& d : S.invariant_factors) prod *= d;
    assert(prod == S.h);
    return S;
}

int m_rank(const ClassGroupStructure& S, long m) {
    if (m <= 1) throw std::invalid_argument("m_rank: m must exceed 1");
    int r = 0;
    for (const auto& d : S.invariant_factors)
        if (mod_floor(d, Int(m)) == 0) ++r;
    return r;
}

Int order_of_class(const QuadForm& f, const ClassGroupStructure& S) {
    const QuadForm identity = canonical_form(principal_form(S.D));
    if (!(canonical_form(pow_form(f, S.h)) == identity))
        throw std::invalid_argument("order_of_class: class number does not annihilate input");
    Int o = S.h;
    for (const auto& pp : factor(S.h)) {
        for (unsigned i = 0; i < pp.e; ++i) {
            Int cand = o / pp.p;
            if (canonical_form(pow_form(f, cand)) == identity)
                o = cand;
            else
                break;
        }
    }
    return o;
}

QuadForm prime_ideal_form(const Int& D, const Int& p, const Int& root) {
    Int b = 2 * root - D;
    Int num = b * b - D;
    if (mod_floor(num, 4 * p) != 0)
        throw std::invalid_argument("prime_ideal_form: root does not define an ideal");
    return {p, b, num / (4 * p)};
}

QuadForm class_of_ideal(const std::vector<PrimeIdealFactor>& factors, const QuadField& K) {
    const Int& D = K.D;
    QuadForm acc = reduce(principal_form(D));
    for (const auto& f : factors) {
        if (f.type == SplitType::inert) continue; // inert primes are principal
        QuadForm pf = prime_ideal_form(D, f.p, f.root);
        acc = compose(acc, pow_form(pf, Int(f.exponent)));
    }
    return reduce(acc);
}

long class_number_kernel(long D) {
    if (D >= 0) throw std::invalid_argument("class_number_kernel: wants D < 0");
    long n = 0;
    long absD = -D;
    for (long a = 1; 3 * a * a <= absD; ++a) {
        long foura = 4 * a;
        for (long b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue; // parity b = D mod 2
            long num = b * b + absD;
            if (num % foura != 0) continue;
            long c = num / foura;
            if (c < a) continue;
            if (a == c && b < 0) continue;
            ++n;
        }
    }
    return n;
}

std::vector<std::pair<long, long>> class_number_sweep(long Dmin, long Dmax, Exec exec) {
    if (Dmin > Dmax || Dmax >= 0)
        throw std::invalid_argument("class_number_sweep: wants Dmin <= Dmax < 0");
    std::vector<long> ds;
    for (long D = Dmax; D >= Dmin; --D)
        if (is_fundamental_discriminant(Int(D))) ds.push_back(D);

    std::vector<std::pair<long, long>> out(ds.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (size_t i = 0; i < ds.size(); ++i) out[i] = {ds[i], class_number_kernel(ds[i])};
    } else {
        for (size_t i = 0; i < ds.size(); ++i) out[i] = {ds[i], class_number_kernel(ds[i])};
    }
    return out;
}

} // namespace classrank
