#include "classrank/quadfield.hpp"

#include <algorithm>
#include <cassert>

namespace classrank {

QuadField make_field(const Int& d0, std::uint64_t budget) {
    if (d0 == 0 || d0 == 1) throw std::invalid_argument("make_field: degenerate radicand");
    if (!is_squarefree(d0, budget)) throw std::invalid_argument("make_field: radicand not squarefree");
    QuadField K;
    K.d0 = d0;
    K.D = mod_floor(d0, 4) == 1 ? d0 : 4 * d0;
    return K;
}

QuadElt make_elt(const QuadField& K, const Rat& a, const Rat& b) {
    return {K, a, b};
}

static void check_same_field(const QuadElt& x, const QuadElt& y) {
    if (!(x.K == y.K)) throw std::invalid_argument("elements from different fields");
}

QuadElt QuadElt::operator+(const QuadElt& o) const {
    check_same_field(*this, o);
    return {K, a + o.a, b + o.b};
}

QuadElt QuadElt::operator-(const QuadElt& o) const {
    check_same_field(*this, o);
    return {K, a - o.a, b - o.b};
}

QuadElt QuadElt::operator*(const QuadElt& o) const {
    check_same_field(*this, o);
    return {K, a * o.a + Rat(K.d0) * b * o.b, a * o.b + b * o.a};
}

QuadElt QuadElt::inverse() const {
    Rat n = norm();
    if (n == 0) throw std::invalid_argument("inverse of zero");
    return {K, a / n, -b / n};
}

QuadElt pow_elt(QuadElt base, long e) {
    bool inv = e < 0;
    unsigned long k = static_cast<unsigned long>(inv ? -e : e);
    QuadElt r = make_elt(base.K, Rat(1), Rat(0));
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return inv ? r.inverse() : r;
}

Int omega_norm(const Int& D) { return (D * D - D) / 4; }

std::pair<Rat, Rat> omega_coords(const QuadElt& g) {
    // w = (D + sqrt(D))/2; for D = 4*d0 this is 2*d0 + sqrt(d0),
    // for D = d0 it is (d0 + sqrt(d0))/2
    const Int& d0 = g.K.d0;
    if (g.K.D == 4 * d0) return {g.a - 2 * Rat(d0) * g.b, g.b};
    return {g.a - Rat(d0) * g.b, 2 * g.b};
}

std::optional<Int> sqrt_mod_p(const Int& a_in, const Int& p) {
    Int a = mod_floor(a_in, p);
    if (a == 0) return Int(0);
    if (p == 2) return a; // 0 or 1, both fixed by squaring
    if (kronecker(a, p) != 1) return std::nullopt;
    // p = 3 mod 4 shortcut
    if (mod_floor(p, 4) == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    Int z = 2;
    while (kronecker(z, p) != -1) ++z;
    Int m(s), c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        unsigned i = 0;
        while (tt != 1) { tt = tt * tt % p; ++i; }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::vector<Int> omega_roots_mod_p(const Int& D, const Int& p) {
    // roots of x^2 - Dx + (D^2 - D)/4 mod p
    std::vector<Int> roots;
    if (p == 2) {
        Int n = omega_norm(D);
        for (Int r : {Int(0), Int(1)})
            if (mod_floor(r * r - D * r + n, 2) == 0) roots.push_back(r);
        // split 2 has both residues, ramified 2 exactly one, inert none
        int chi = kronecker(D, Int(2));
        assert(static_cast<int>(roots.size()) == (chi == -1 ? 0 : chi + 1));
        (void)chi;
        return roots;
    }
    int chi = kronecker(D, p);
    if (chi == -1) return roots;
    if (chi == 0) {
        Int inv2 = *invmod(Int(2), p);
        roots.push_back(mod_floor(D * inv2, p));
        return roots;
    }
    auto s = sqrt_mod_p(D, p);
    assert(s);
    Int inv2 = *invmod(Int(2), p);
    Int r1 = mod_floor((D + *s) * inv2, p), r2 = mod_floor((D - *s) * inv2, p);
    roots.push_back(std::min(r1, r2));
    roots.push_back(std::max(r1, r2));
    return roots;
}

namespace {

// Hensel lift of a simple root of f(x) = x^2 - Dx + omega_norm(D) from
// mod p to mod p^k.
Int hensel_lift_root(const Int& D, const Int& p, Int r, unsigned k) {
    Int n = omega_norm(D);
    Int mod = p;
    unsigned prec = 1;
    while (prec < k) {
        unsigned next = std::min(2 * prec, k);
        Int newmod = pow_int(p, next);
        Int f = mod_floor(r * r - D * r + n, newmod);
        Int fp = mod_floor(2 * r - D, newmod);
        auto inv = invmod(fp, newmod);
        assert(inv); // simple root: f'(r) is a unit mod p
        r = mod_floor(r - f * *inv, newmod);
        mod = newmod;
        prec = next;
    }
    return r;
}

} // namespace

std::vector<PrimeIdealFactor> ideal_factorization(const QuadElt& g, std::uint64_t budget) {
    if (g.is_zero()) throw std::invalid_argument("ideal_factorization: zero element");
    const Int& D = g.K.D;

    auto [A, B] = omega_coords(g);
    Int q = lcm(den(A), den(B));
    Int Ai = num(A) * (q / den(A));
    Int Bi = num(B) * (q / den(B));
    // norm of the integral multiple q*g in the (1, w) basis
    Int Nd = Ai * Ai + Ai * Bi * D + Bi * Bi * omega_norm(D);
    assert(Nd != 0);

    // primes to inspect: divisors of N(q*g) and of q
    Factorization nf = factor(Nd, budget);
    Factorization qf = q == 1 ? Factorization{} : factor(q, budget);
    std::vector<Int> ps;
    for (auto& pp : nf) ps.push_back(pp.p);
    for (auto& pp : qf) ps.push_back(pp.p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    std::vector<PrimeIdealFactor> out;
    for (const Int& p : ps) {
        unsigned vN = Nd % p == 0 ? valuation(Nd, p) : 0;
        long vq = q % p == 0 ? static_cast<long>(valuation(q, p)) : 0;
        int chi = kronecker(D, p);
        if (chi == -1) {
            assert(vN % 2 == 0);
            long e = static_cast<long>(vN / 2) - vq;
            if (e != 0) out.push_back({p, SplitType::inert, Int(0), e, 2});
        } else if (chi == 0) {
            auto roots = omega_roots_mod_p(D, p);
            assert(roots.size() == 1);
            long e = static_cast<long>(vN) - 2 * vq;
            if (e != 0) out.push_back({p, SplitType::ramified, roots[0], e, 1});
        } else {
            auto roots = omega_roots_mod_p(D, p);
            assert(roots.size() == 2);
            // valuation at (p, w - r) equals v_p(A + B*R) for the p-adic
            // lift R of r, computed mod p^(vN+1)
            long v1 = 0;
            if (vN > 0) {
                Int R = hensel_lift_root(D, p, roots[0], vN + 1);
                Int M = pow_int(p, vN + 1);
                Int w = mod_floor(Ai + Bi * R, M);
                assert(w != 0); // v at one prime cannot exceed vN
                v1 = static_cast<long>(valuation(w, p));
            }
            long v2 = static_cast<long>(vN) - v1;
            long e1 = v1 - vq, e2 = v2 - vq;
            if (e1 != 0) out.push_back({p, SplitType::split, roots[0], e1, 1});
            if (e2 != 0) out.push_back({p, SplitType::split, roots[1], e2, 1});
        }
    }
    return out;
}

bool selmer_member(const QuadElt& g, long m, std::uint64_t budget) {
    if (g.is_zero()) throw std::invalid_argument("selmer_member: zero element");
    if (m <= 1) throw std::invalid_argument("selmer_member: m must exceed 1");
    for (const auto& f : ideal_factorization(g, budget))
        if (f.exponent % m != 0) return false;
    return true;
}

namespace {

// roots of unity of K of order dividing p (always +-1 for p = 2;
// the cube roots of unity live in Q(sqrt(-3)) only)
std::vector<QuadElt> unity_roots(const QuadField& K, long p) {
    std::vector<QuadElt> out{make_elt(K, Rat(1), Rat(0))};
    if (p == 2) {
        out.push_back(make_elt(K, Rat(-1), Rat(0)));
    } else if (p == 3 && K.d0 == -3) {
        out.push_back(make_elt(K, Rat(-1, 2), Rat(1, 2)));
        out.push_back(make_elt(K, Rat(-1, 2), Rat(-1, 2)));
    }
    return out;
}

void push_unique(std::vector<QuadElt>& v, const QuadElt& x) {
    for (const auto& y : v)
        if (y == x) return;
    v.push_back(x);
}

// roots with zero sqrt(d0)-coordinate, i.e. delta rational or a rational
// multiple of sqrt(d0)
void rational_axis_roots(const QuadElt& g, long p, std::vector<QuadElt>& out) {
    if (!g.is_rational()) return;
    if (auto r = rat_root(g.a, static_cast<unsigned long>(p)))
        push_unique(out, make_elt(g.K, *r, Rat(0)));
    if (p == 2) {
        if (auto r = rat_root(g.a / Rat(g.K.d0), 2)) {
            push_unique(out, make_elt(g.K, Rat(0), *r));
        }
    }
}

// trace polynomial data: delta^p = alpha_p(t,n)*delta + beta_p(t,n) where
// t = Tr(delta), n = N(delta); evaluated at numeric t
std::pair<Rat, Rat> trace_power(const Rat& t, const Rat& n, long p) {
    Rat alpha(1), beta(0);
    for (long k = 1; k < p; ++k) {
        Rat na = t * alpha + beta;
        Rat nb = -n * alpha;
        alpha = na;
        beta = nb;
    }
    return {alpha, beta};
}

// check a trace candidate; appends the root on success
void try_trace(const QuadElt& g, long p, const Rat& n, const Rat& t, std::vector<QuadElt>& out) {
    auto [alpha, beta] = trace_power(t, n, p);
    if (alpha == 0) return;
    Rat yd = g.b / alpha;
    Rat xd = t / 2;
    if (xd * xd - Rat(g.K.d0) * yd * yd != n) return;
    QuadElt delta = make_elt(g.K, xd, yd);
    if (pow_elt(delta, p) == g) push_unique(out, delta);
}

void real_roots_by_trace(const QuadElt& g, long p, const Rat& n, std::vector<QuadElt>& out) {
    // denominators of Tr(delta) divide 2q for q clearing g
    Int q = lcm(den(g.a), den(g.b));
    Int L = 2 * q;

    // any root has |Tr(delta) - (2|a|)^(1/p)| <= (2 - 2^(1/p)) sqrt|n|,
    // maximized by balanced conjugates, so windows of halfwidth
    // sqrt|n| + 3 around +-(2|a|)^(1/p) cover everything; the central
    // window handles a vanishing rational part
    Int nmag = abs(num(n)) / den(n) + 1;
    Int halfw = (isqrt(nmag) + 3) * L;
    std::vector<std::pair<Int, Int>> windows;
    windows.emplace_back(-2 * halfw, 2 * halfw);
    Rat two_a = 2 * g.a;
    if (two_a != 0) {
        Int approx_num = abs(num(two_a)) * pow_int(L, static_cast<unsigned long>(p));
        Int T0 = iroot(approx_num / den(two_a), static_cast<unsigned long>(p));
        windows.emplace_back(T0 - halfw, T0 + halfw);
        windows.emplace_back(-T0 - halfw, -T0 + halfw);
    }

    Int total = 0;
    for (auto& [lo, hi] : windows) total += hi - lo + 1;
    if (total > 20'000'000) throw budget_error("pth-root trace search too wide");

    for (auto& [lo, hi] : windows)
        for (Int T = lo; T <= hi; ++T) try_trace(g, p, n, make_rat(T, L), out);
}

void imaginary_roots_by_lattice(const QuadElt& g, long p, const Rat& n, std::vector<QuadElt>& out) {
    if (n <= 0) return; // norms are positive definite here
    // delta = (s + t*sqrt(d0)) / (2q) with integer s, t
    Int q = lcm(den(g.a), den(g.b));
    Int L = 2 * q;
    Int ad = abs(g.K.d0);
    // s^2 + |d0| t^2 = n L^2
    Rat bound = n * Rat(L * L);
    Int NB = num(bound) / den(bound);
    Int tmax = isqrt(NB / ad) + 1;
    if (tmax > 10'000'000) throw budget_error("pth-root lattice search too wide");
    for (Int t = -tmax; t <= tmax; ++t) {
        Rat s2 = n * Rat(L * L) - Rat(ad * t * t);
        if (s2 < 0) continue;
        if (den(s2) != 1 || !is_square(num(s2))) continue;
        Int s = isqrt(num(s2));
        for (int sign : {1, -1}) {
            QuadElt delta = make_elt(g.K, make_rat(sign * s, L), make_rat(t, L));
            if (pow_elt(delta, p) == g) push_unique(out, delta);
            if (s == 0) break;
        }
    }
}

} // namespace

std::vector<QuadElt> pth_roots(const QuadElt& g, long p) {
    if (g.is_zero()) throw std::invalid_argument("pth_roots: zero element");
    if (p < 2) throw std::invalid_argument("pth_roots: p must be a prime > 1");
    std::vector<QuadElt> out;

    rational_axis_roots(g, p, out);

    Rat Ng = g.norm();
    std::vector<Rat> norm_candidates;
    if (p == 2) {
        if (Ng >= 0) {
            if (auto r = rat_root(Ng, 2)) {
                norm_candidates.push_back(*r);
                if (*r != 0) norm_candidates.push_back(-*r);
            }
        }
    } else {
        if (auto r = rat_root(Ng, static_cast<unsigned long>(p))) norm_candidates.push_back(*r);
    }

    if (!g.is_rational()) {
        for (const Rat& n : norm_candidates) {
            if (g.K.is_imaginary())
                imaginary_roots_by_lattice(g, p, n, out);
            else
                real_roots_by_trace(g, p, n, out);
        }
    }

    // close under the p-th roots of unity of K
    std::vector<QuadElt> closed;
    for (const auto& d : out)
        for (const auto& z : unity_roots(g.K, p)) push_unique(closed, d * z);
    return closed;
}

bool is_pth_power(const QuadElt& g, long p) { return !pth_roots(g, p).empty(); }

namespace {

bool in_power_class(const QuadElt& g, long e) {
    if (e == 1) return true;
    long p = 2;
    while (e % p != 0) ++p;
    for (const auto& d : pth_roots(g, p))
        if (in_power_class(d, e / p)) return true;
    return false;
}

} // namespace

long kummer_degree(const QuadElt& g, long m) {
    if (g.is_zero()) throw std::invalid_argument("kummer_degree: zero element");
    if (m <= 1) throw std::invalid_argument("kummer_degree: m must exceed 1");
    long e_max = 1;
    for (long e = m; e >= 1; --e) {
        if (m % e != 0) continue;
        if (in_power_class(g, e)) { e_max = e; break; }
    }
    long deg = m / e_max;
    if (deg % 4 == 0) {
        // Kummer degeneracy: g in -4 K^4 halves the degree
        QuadElt reduced = g * make_elt(g.K, Rat(-1, 4), Rat(0));
        if (in_power_class(reduced, 4)) deg /= 2;
    }
    return deg;
}

bool linearly_disjoint_from_cyclotomic(const QuadField& K, long m) {
    if (m <= 1) throw std::invalid_argument("m must exceed 1");
    Int aD = abs(K.D);
    return mod_floor(Int(m), aD) != 0;
}

FundamentalUnit fundamental_unit(const QuadField& K) {
    if (!K.is_real()) throw std::invalid_argument("fundamental_unit: field is imaginary");
    const Int& d = K.d0;

    // continued fraction of sqrt(d): period ends when Q returns to 1,
    // the last convergent solves X^2 - d Y^2 = +-1
    Int a0 = isqrt(d);
    Int P = 0, Q = 1, a = a0;
    Int A_prev = 1, A_cur = a0, B_prev = 0, B_cur = 1;
    Int X, Y;
    int nsign = 1;
    for (long i = 1;; ++i) {
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (Q == 1) {
            // period length i: the previous convergent is the unit
            X = A_cur;
            Y = B_cur;
            nsign = (i % 2 == 0) ? 1 : -1; // X^2 - dY^2 = (-1)^i
            break;
        }
        a = (a0 + P) / Q;
        Int A_next = a * A_cur + A_prev;
        Int B_next = a * B_cur + B_prev;
        A_prev = A_cur; A_cur = A_next;
        B_prev = B_cur; B_cur = B_next;
        if (i > 10'000'000) throw budget_error("continued fraction period too long");
    }
    assert(X * X - d * Y * Y == nsign);

    QuadElt eps0 = make_elt(K, Rat(X), Rat(Y));

    if (mod_floor(d, 4) == 1) {
        // the maximal order can have a smaller unit with eps^3 = eps0;
        // its trace satisfies t^3 - 3nt - 2X = 0 with n = N(eps)
        for (int n : {1, -1}) {
            if (nsign != (n == 1 ? 1 : -1)) continue; // N(eps)^3 = N(eps0)
            std::vector<Int> cands;
            Int T0 = iroot(2 * X, 3);
            for (Int t = T0 - 2; t <= T0 + 3; ++t) cands.push_back(t);
            for (Int t = -3; t <= 3; ++t) cands.push_back(t);
            for (const Int& t : cands) {
                if (t * t * t - 3 * n * t - 2 * X != 0) continue;
                Int alpha = t * t - n;
                if (alpha == 0 || (2 * Y) % alpha != 0) continue;
                Int v2 = 2 * Y / alpha; // 2*y-coordinate
                if (mod_floor(t - v2, Int(2)) != 0) continue;
                QuadElt eps = make_elt(K, make_rat(t, 2), make_rat(v2, 2));
                if (pow_elt(eps, 3) == eps0 && abs(num(eps.norm())) == 1 && den(eps.norm()) == 1) {
                    int ns = eps.norm() == 1 ? 1 : -1;
                    return {eps, ns};
                }
            }
        }
    }
    return {eps0, nsign};
}

} // namespace classrank
