#include "classrank/jacobian.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace classrank {

HyperCurveQ make_curve(PolyQ h) {
    long d = h.degree();
    if (d < 3) throw std::invalid_argument("curve degree must be at least 3 (genus >= 1)");
    if (!is_squarefree_poly(h)) throw std::invalid_argument("curve polynomial must be squarefree");
    HyperCurveQ C;
    C.genus = static_cast<int>((d - 1) / 2);
    C.odd_model = d % 2 == 1;
    C.h = std::move(h);
    return C;
}

CurveFq reduce_curve(const HyperCurveQ& C, long p, int k) {
    GF F(p, k);
    PolyF h(C.h.c.size(), 0);
    for (size_t i = 0; i < C.h.c.size(); ++i) h[i] = F.from_rat(C.h.c[i]);
    pf_trim(h);
    if (pf_deg(h) != C.h.degree())
        throw std::invalid_argument("bad prime: leading coefficient vanishes");
    // squarefreeness is a prime-field question (the coefficients live there)
    GF Fp(p, 1);
    if (pf_deg(pf_gcd(Fp, h, pf_derivative(Fp, h))) != 0)
        throw std::invalid_argument("bad prime: curve is singular mod p");
    return CurveFq{F, h, C.genus, C.odd_model};
}

MumfordDiv identity_divisor() { return {PolyF{1}, PolyF{}}; }

bool is_identity(const MumfordDiv& d) { return pf_deg(d.u) == 0 && pf_is_zero(d.v); }

bool mumford_valid(const MumfordDiv& d, const CurveFq& C) {
    if (pf_is_zero(d.u) || d.u.back() != 1) return false;
    if (!pf_is_zero(d.v) && pf_deg(d.v) >= pf_deg(d.u)) return false;
    PolyF vv = pf_mul(C.F, d.v, d.v);
    return pf_is_zero(pf_mod(C.F, pf_sub(C.F, vv, C.h), d.u));
}

namespace {

void require_odd(const CurveFq& C) {
    if (!C.odd_model)
        throw std::invalid_argument("Cantor arithmetic needs an odd-degree model");
}

// reduction loop: replace (u, v) by an equivalent pair of smaller degree
MumfordDiv cantor_reduce(PolyF u, PolyF v, const CurveFq& C) {
    const GF& F = C.F;
    while (pf_deg(u) > C.genus) {
        PolyF num = pf_sub(F, C.h, pf_mul(F, v, v));
        PolyF u2 = pf_divexact(F, num, u);
        u2 = pf_monic(F, u2);
        PolyF v2 = pf_mod(F, pf_neg(F, v), u2);
        u = std::move(u2);
        v = std::move(v2);
    }
    u = pf_monic(F, u);
    v = pf_mod(F, v, u);
    return {u, v};
}

} // namespace

MumfordDiv cantor_add(const MumfordDiv& a, const MumfordDiv& b, const CurveFq& C) {
    require_odd(C);
    const GF& F = C.F;
    // composition (Cantor): d = gcd(u1, u2, v1 + v2) = s1 u1 + s2 u2 + s3 (v1+v2)
    auto g1 = pf_xgcd(F, a.u, b.u);
    PolyF vsum = pf_add(F, a.v, b.v);
    auto g2 = pf_xgcd(F, g1.g, vsum);
    PolyF d = g2.g;
    PolyF s1 = pf_mul(F, g2.s, g1.s);
    PolyF s2 = pf_mul(F, g2.s, g1.t);
    PolyF s3 = g2.t;

    PolyF u = pf_divexact(F, pf_mul(F, a.u, b.u), pf_mul(F, d, d));
    // v = (s1 u1 v2 + s2 u2 v1 + s3 (v1 v2 + h)) / d mod u
    PolyF t1 = pf_mul(F, pf_mul(F, s1, a.u), b.v);
    PolyF t2 = pf_mul(F, pf_mul(F, s2, b.u), a.v);
    PolyF t3 = pf_mul(F, s3, pf_add(F, pf_mul(F, a.v, b.v), C.h));
    PolyF v = pf_divexact(F, pf_add(F, pf_add(F, t1, t2), t3), d);
    v = pf_mod(F, v, u);
    return cantor_reduce(std::move(u), std::move(v), C);
}

MumfordDiv cantor_neg(const MumfordDiv& a, const CurveFq& C) {
    require_odd(C);
    return {a.u, pf_mod(C.F, pf_neg(C.F, a.v), a.u)};
}

MumfordDiv scalar_mul(Int n, const MumfordDiv& a, const CurveFq& C) {
    require_odd(C);
    MumfordDiv base = a;
    if (n < 0) {
        base = cantor_neg(base, C);
        n = -n;
    }
    MumfordDiv r = identity_divisor();
    while (n > 0) {
        if (mod_floor(n, 2) == 1) r = cantor_add(r, base, C);
        base = cantor_add(base, base, C);
        n /= 2;
    }
    return r;
}

MumfordDiv point_divisor(GF::Elt x0, GF::Elt y0, const CurveFq& C) {
    const GF& F = C.F;
    if (F.mul(y0, y0) != pf_eval(F, C.h, x0))
        throw std::invalid_argument("point is not on the curve");
    PolyF u{F.neg(x0), 1};
    PolyF v = y0 == 0 ? PolyF{} : PolyF{y0};
    return {u, v};
}

bool verify_certificate(const TorsionCertificate& cert) {
    if (cert.m <= 1 || cert.e == 0) return false;
    if (cert.h.degree() < 3 || !is_squarefree_poly(cert.h)) return false;
    PolyQ rhs = pow(cert.w, static_cast<unsigned long>(cert.m)).scaled(cert.e);
    if (!(cert.h - cert.c * cert.c == rhs)) return false;
    // support condition: the branches y = c and y = -c meet only off w
    if (cert.w.degree() >= 1 && gcd_poly(cert.w, cert.c).degree() != 0) return false;
    return true;
}

MumfordDiv divisor_from_certificate(const TorsionCertificate& cert, long p, int k) {
    if (!verify_certificate(cert))
        throw std::invalid_argument("certificate identity does not verify");
    HyperCurveQ C = make_curve(cert.h);
    if (!C.odd_model)
        throw std::invalid_argument("certificate curve has an even-degree model; use to_odd_model");
    auto goods = good_primes(C.h, p);
    if (std::find(goods.begin(), goods.end(), p) == goods.end())
        throw std::invalid_argument("bad prime for this certificate");
    for (const Rat& coef : cert.c.c)
        if (mod_floor(den(coef), Int(p)) == 0) throw std::invalid_argument("bad prime: denominator in c");
    for (const Rat& coef : cert.w.c)
        if (mod_floor(den(coef), Int(p)) == 0) throw std::invalid_argument("bad prime: denominator in w");
    if (mod_floor(den(cert.e), Int(p)) == 0) throw std::invalid_argument("bad prime: denominator in e");

    CurveFq R = reduce_curve(C, p, k);
    const GF& F = R.F;
    PolyF w(cert.w.c.size(), 0);
    for (size_t i = 0; i < cert.w.c.size(); ++i) w[i] = F.from_rat(cert.w.c[i]);
    pf_trim(w);
    if (pf_deg(w) <= 0) return identity_divisor();
    PolyF u = pf_monic(F, w);
    PolyF c(cert.c.c.size(), 0);
    for (size_t i = 0; i < cert.c.c.size(); ++i) c[i] = F.from_rat(cert.c.c[i]);
    pf_trim(c);
    PolyF v = pf_mod(F, c, u);
    PolyF check = pf_mod(F, pf_sub(F, pf_mul(F, v, v), R.h), u);
    if (!pf_is_zero(check))
        throw std::invalid_argument("certificate and prime are incompatible: v^2 != h mod u");
    return cantor_reduce(std::move(u), std::move(v), R);
}

TorsionCertificate transport_certificate(const TorsionCertificate& cert, const Rat& a) {
    if (!verify_certificate(cert)) throw std::invalid_argument("certificate does not verify");
    long dh = cert.h.degree();
    if (dh % 2 != 0) throw std::invalid_argument("transport targets even-degree models");
    long g = (dh - 2) / 2;
    if (!(cert.h.eval(a) == 0)) throw std::invalid_argument("a is not a root of h");

    PolyQ th = taylor_shift(cert.h, a);
    if (!(th[0] == 0) || th[1] == 0) throw std::invalid_argument("a must be a simple root");
    PolyQ H = reversed(th, static_cast<size_t>(dh));

    if (cert.c.degree() > g + 1)
        throw std::invalid_argument("transport needs deg c <= g + 1");
    PolyQ tc = taylor_shift(cert.c, a);
    PolyQ Cnew = reversed(tc, static_cast<size_t>(g + 1));

    long dw = cert.w.degree();
    long r = dh - cert.m * dw;
    if (r < 0 || r % cert.m != 0)
        throw std::invalid_argument("transport needs m | deg h - m deg w");
    PolyQ tw = taylor_shift(cert.w, a);
    PolyQ Wnew = reversed(tw, static_cast<size_t>(dw)).shifted(static_cast<size_t>(r / cert.m));

    TorsionCertificate out{H, Cnew, Wnew, cert.e, cert.m};
    if (!verify_certificate(out))
        throw std::invalid_argument("transported certificate failed verification");
    return out;
}

bool divisor_order_divides(const MumfordDiv& d, long m, const CurveFq& C) {
    return is_identity(scalar_mul(Int(m), d, C));
}

bool divisor_has_exact_order(const MumfordDiv& d, long m, const CurveFq& C) {
    if (!divisor_order_divides(d, m, C)) return false;
    for (const auto& pp : factor(Int(m)))
        if (is_identity(scalar_mul(Int(m) / pp.p, d, C))) return false;
    return true;
}

bool independence_check(const std::vector<MumfordDiv>& divs, long m, const CurveFq& C) {
    require_odd(C);
    if (m <= 1) throw std::invalid_argument("independence_check: m must exceed 1");
    if (C.F.p() % 2 == 0 || (2 * m) % C.F.p() == 0)
        throw std::invalid_argument("independence_check: p must be coprime to 2m");
    for (const auto& d : divs)
        if (!divisor_order_divides(d, m, C))
            throw std::invalid_argument("independence_check: input is not m-torsion");

    std::set<MumfordDiv> combos{identity_divisor()};
    for (const auto& d : divs) {
        std::set<MumfordDiv> next;
        for (const auto& s : combos) {
            MumfordDiv acc = s;
            for (long k = 0; k < m; ++k) {
                next.insert(acc);
                if (k + 1 < m) acc = cantor_add(acc, d, C);
            }
        }
        combos = std::move(next);
    }
    Int expect = pow_int(Int(m), static_cast<unsigned long>(divs.size()));
    return Int(static_cast<long>(combos.size())) == expect;
}

long count_points(const HyperCurveQ& C, long p, int k, Exec exec, long budget) {
    CurveFq R = reduce_curve(C, p, k);
    const GF& F = R.F;
    long q = F.q();
    if (q > budget) throw budget_error("point count exceeds field budget");

    // squares table: q bits of F_q marked by squaring every element
    std::vector<unsigned char> sq(static_cast<size_t>(q), 0);
    for (long y = 0; y < q; ++y) sq[static_cast<size_t>(F.mul(y, y))] = 1;

    long affine = 0;
    if (exec == Exec::parallel) {
#pragma omp parallel for reduction(+ : affine) schedule(static)
        for (long x = 0; x < q; ++x) {
            GF::Elt z = pf_eval(F, R.h, x);
            affine += z == 0 ? 1 : (sq[static_cast<size_t>(z)] ? 2 : 0);
        }
    } else {
        for (long x = 0; x < q; ++x) {
            GF::Elt z = pf_eval(F, R.h, x);
            affine += z == 0 ? 1 : (sq[static_cast<size_t>(z)] ? 2 : 0);
        }
    }

    long infinity;
    if (R.odd_model) {
        infinity = 1;
    } else {
        GF::Elt lc = R.h.back();
        infinity = sq[static_cast<size_t>(lc)] ? 2 : 0;
    }
    return affine + infinity;
}

ZetaData zeta(const HyperCurveQ& C, long p, Exec exec, long budget) {
    int g = C.genus;
    ZetaData Z;
    Z.p = p;
    for (int k = 1; k <= g; ++k) Z.counts.push_back(count_points(C, p, k, exec, budget));

    // Newton's identities: L(T) = prod (1 - a_i T), power sums
    // P_k = p^k + 1 - N_k, and k c_k = -sum_{i<k} c_i P_{k-i} - P_k
    std::vector<Int> c(2 * g + 1, Int(0));
    c[0] = 1;
    std::vector<Int> P(g + 1, Int(0));
    for (int k = 1; k <= g; ++k) P[k] = pow_int(Int(p), k) + 1 - Z.counts[k - 1];
    for (int k = 1; k <= g; ++k) {
        Int acc = 0;
        for (int i = 1; i <= k; ++i) acc += P[i] * c[k - i];
        assert(mod_floor(-acc, Int(k)) == 0);
        c[k] = -acc / k;
    }
    // functional equation fills the upper half
    for (int i = 0; i < g; ++i) c[2 * g - i] = pow_int(Int(p), g - i) * c[i];
    Z.l_coeffs = c;
    Z.jacobian_order = 0;
    for (const auto& ci : c) Z.jacobian_order += ci;
    return Z;
}

std::vector<MumfordDiv> enumerate_jacobian(const CurveFq& C, long budget) {
    require_odd(C);
    const GF& F = C.F;
    long q = F.q();
    Int work = 0;
    for (int d = 1; d <= C.genus; ++d) work += pow_int(Int(q), 2 * d);
    if (work > budget) throw budget_error("jacobian enumeration exceeds budget");

    std::vector<MumfordDiv> out{identity_divisor()};
    for (int d = 1; d <= C.genus; ++d) {
        long nu = 1;
        for (int i = 0; i < d; ++i) nu *= q;
        for (long iu = 0; iu < nu; ++iu) {
            PolyF u(static_cast<size_t>(d) + 1, 0);
            long t = iu;
            for (int i = 0; i < d; ++i) { u[static_cast<size_t>(i)] = t % q; t /= q; }
            u[static_cast<size_t>(d)] = 1;
            for (long iv = 0; iv < nu; ++iv) {
                PolyF v(static_cast<size_t>(d), 0);
                long s = iv;
                for (int i = 0; i < d; ++i) { v[static_cast<size_t>(i)] = s % q; s /= q; }
                pf_trim(v);
                PolyF rem = pf_mod(F, pf_sub(F, pf_mul(F, v, v), C.h), u);
                if (pf_is_zero(rem)) out.push_back({u, v});
            }
        }
    }
    return out;
}

long torsion_profile(const CurveFq& C, long m, Exec exec, long budget) {
    require_odd(C);
    if (m <= 1) throw std::invalid_argument("torsion_profile: m must exceed 1");
    const GF& F = C.F;
    long q = F.q();
    Int work = 0;
    for (int d = 1; d <= C.genus; ++d) work += pow_int(Int(q), 2 * d);
    if (work > budget) throw budget_error("jacobian enumeration exceeds budget");

    const bool par = exec == Exec::parallel;
    long count = 1; // the identity is m-torsion
    for (int d = 1; d <= C.genus; ++d) {
        long nu = 1;
        for (int i = 0; i < d; ++i) nu *= q;
        long level = 0;
#pragma omp parallel for reduction(+ : level) schedule(dynamic, 16) if (par)
        for (long iu = 0; iu < nu; ++iu) {
            PolyF u(static_cast<size_t>(d) + 1, 0);
            long t = iu;
            for (int i = 0; i < d; ++i) { u[static_cast<size_t>(i)] = t % q; t /= q; }
            u[static_cast<size_t>(d)] = 1;
            for (long iv = 0; iv < nu; ++iv) {
                PolyF v(static_cast<size_t>(d), 0);
                long s = iv;
                for (int i = 0; i < d; ++i) { v[static_cast<size_t>(i)] = s % q; s /= q; }
                pf_trim(v);
                PolyF rem = pf_mod(F, pf_sub(F, pf_mul(F, v, v), C.h), u);
                if (!pf_is_zero(rem)) continue;
                if (divisor_order_divides({u, v}, m, C)) ++level;
            }
        }
        count += level;
    }
    return count;
}

OddModel to_odd_model(const HyperCurveQ& C, const std::optional<Rat>& a) {
    if (!a) {
        if (!C.odd_model)
            throw std::invalid_argument("even model needs a finite Weierstrass point");
        return {C, std::nullopt};
    }
    if (!(C.h.eval(*a) == 0)) throw std::invalid_argument("a is not a root of h");
    PolyQ t = taylor_shift(C.h, *a);
    if (t[1] == 0) throw std::invalid_argument("a is a multiple root of h");
    size_t n = static_cast<size_t>(C.h.degree());
    PolyQ H = reversed(t, n);
    assert(H.degree() == static_cast<long>(n) - 1);
    HyperCurveQ out = make_curve(H);
    assert(out.genus == C.genus || C.odd_model);
    return {out, a};
}

std::vector<long> good_primes(const PolyQ& h, long bound) {
    if (h.is_zero()) throw std::invalid_argument("good_primes: zero polynomial");
    PolyQ hint = primitive_part(h);
    Int bad = 2 * abs(num(hint.lc()));
    if (hint.degree() >= 1) {
        Rat disc = discriminant(hint);
        assert(den(disc) == 1);
        if (disc != 0) bad *= abs(num(disc));
    }
    for (const Rat& coef : h.c) bad *= den(coef);
    std::vector<long> out;
    for (long p : primes_upto(bound))
        if (mod_floor(bad, Int(p)) != 0) out.push_back(p);
    return out;
}

std::vector<std::pair<GF::Elt, GF::Elt>> affine_points(const CurveFq& C) {
    std::vector<std::pair<GF::Elt, GF::Elt>> pts;
    const GF& F = C.F;
    for (long x = 0; x < F.q(); ++x) {
        GF::Elt z = pf_eval(F, C.h, x);
        for (long y = 0; y < F.q(); ++y)
            if (F.mul(y, y) == z) pts.emplace_back(x, y);
    }
    return pts;
}

std::string divisor_str(const MumfordDiv& d) {
    std::ostringstream os;
    os << "(u=[";
    for (size_t i = 0; i < d.u.size(); ++i) os << (i ? "," : "") << d.u[i];
    os << "], v=[";
    for (size_t i = 0; i < d.v.size(); ++i) os << (i ? "," : "") << d.v[i];
    os << "])";
    return os.str();
}

} // namespace classrank
