#include "classrank/gf.hpp"

#include <cassert>

namespace classrank {

namespace {

// digit decode/encode between element indices and coefficient vectors
void decode(long v, long p, int k, long* out) {
    for (int i = 0; i < k; ++i) {
        out[i] = v % p;
        v /= p;
    }
}

long encode(const long* digits, long p, int k) {
    long v = 0;
    for (int i = k; i-- > 0;) v = v * p + digits[i];
    return v;
}

// multiply two degree-< k residues mod the modulus, digits in/out
void mulmod_digits(const long* a, const long* b, long p, int k,
                   const std::vector<long>& modulus, long* out) {
    long prod[32] = {0};
    for (int i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // reduce: x^k = -(mod_[0] + ... + mod_[k-1] x^(k-1))
    for (int d = 2 * k - 2; d >= k; --d) {
        long t = prod[d];
        if (t == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i) {
            long sub = (t * modulus[i]) % p;
            prod[d - k + i] = ((prod[d - k + i] - sub) % p + p) % p;
        }
    }
    for (int i = 0; i < k; ++i) out[i] = prod[i];
}

} // namespace

namespace {

PolyF pf_powmod_impl(const GF& F, PolyF base, Int e, const PolyF& m);

// irreducibility over F_p: x^(p^k) = x mod f, and for every prime r | k
// the polynomial x^(p^(k/r)) - x is coprime to f
bool irreducible_mod_p(const GF& Fp, const PolyF& f, long p, int k) {
    PolyF x{0, 1};
    std::vector<PolyF> frob(k + 1); // frob[j] = x^(p^j) mod f
    frob[0] = x;
    for (int j = 1; j <= k; ++j) frob[j] = pf_powmod_impl(Fp, frob[j - 1], Int(p), f);
    if (!pf_equal(frob[k], pf_mod(Fp, x, f))) return false;
    for (int r = 2; r <= k; ++r) {
        if (k % r != 0 || !is_prime(Int(r))) continue;
        PolyF diff = pf_sub(Fp, frob[k / r], x);
        if (pf_is_zero(diff)) return false;
        if (pf_deg(pf_gcd(Fp, diff, f)) != 0) return false;
    }
    return true;
}

PolyF pf_powmod_impl(const GF& F, PolyF base, Int e, const PolyF& m) {
    PolyF r = pf_mod(F, PolyF{1}, m);
    base = pf_mod(F, base, m);
    while (e > 0) {
        if (mod_floor(e, 2) == 1) r = pf_mod(F, pf_mul(F, r, base), m);
        base = pf_mod(F, pf_mul(F, base, base), m);
        e /= 2;
    }
    return r;
}

} // namespace

GF::GF(long p, int k) : p_(p), k_(k) {
    if (p < 3 || !is_prime(Int(p))) throw std::invalid_argument("GF: p must be an odd prime");
    if (k < 1 || k > 16) throw std::invalid_argument("GF: extension degree out of range");
    q_ = 1;
    for (int i = 0; i < k; ++i) {
        if (q_ > 100'000'000 / p) throw std::invalid_argument("GF: field too large");
        q_ *= p;
    }
    if (k == 1) {
        mod_ = {0, 1};
        return;
    }
    GF Fp(p, 1);
    for (long v = 0; v < q_; ++v) {
        long digits[32];
        decode(v, p, k, digits);
        PolyF cand(digits, digits + k);
        cand.push_back(1);
        if (irreducible_mod_p(Fp, cand, p, k)) {
            mod_.assign(cand.begin(), cand.end());
            return;
        }
    }
    throw std::logic_error("GF: no irreducible modulus found");
}

GF::Elt GF::add(Elt a, Elt b) const {
    if (k_ == 1) return (a + b) % p_;
    long da[32], db[32];
    decode(a, p_, k_, da);
    decode(b, p_, k_, db);
    for (int i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
    return encode(da, p_, k_);
}

GF::Elt GF::sub(Elt a, Elt b) const {
    if (k_ == 1) return ((a - b) % p_ + p_) % p_;
    long da[32], db[32];
    decode(a, p_, k_, da);
    decode(b, p_, k_, db);
    for (int i = 0; i < k_; ++i) da[i] = ((da[i] - db[i]) % p_ + p_) % p_;
    return encode(da, p_, k_);
}

GF::Elt GF::neg(Elt a) const { return sub(0, a); }

GF::Elt GF::mul(Elt a, Elt b) const {
    if (k_ == 1) return (a * b) % p_;
    long da[32], db[32], out[32];
    decode(a, p_, k_, da);
    decode(b, p_, k_, db);
    mulmod_digits(da, db, p_, k_, mod_, out);
    return encode(out, p_, k_);
}

GF::Elt GF::pow(Elt a, Int e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    Elt r = 1, base = a;
    while (e > 0) {
        if (mod_floor(e, 2) == 1) r = mul(r, base);
        base = mul(base, base);
        e /= 2;
    }
    return r;
}

GF::Elt GF::inv(Elt a) const {
    if (a == 0) throw std::invalid_argument("GF: division by zero");
    return pow(a, Int(q_ - 2));
}

GF::Elt GF::from_int(const Int& n) const {
    return static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(p_)));
}

GF::Elt GF::from_rat(const Rat& r) const {
    long d = from_int(den(r));
    if (d == 0) throw std::invalid_argument("GF: denominator vanishes at p");
    return mul(from_int(num(r)), inv(d));
}

bool GF::is_square(Elt a) const {
    if (a == 0) return true;
    return pow(a, Int((q_ - 1) / 2)) == 1;
}

// polynomial layer -------------------------------------------------------

void pf_trim(PolyF& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyF pf_from_const(const GF& F, GF::Elt c) {
    (void)F;
    PolyF r{c};
    pf_trim(r);
    return r;
}

PolyF pf_add(const GF& F, const PolyF& a, const PolyF& b) {
    PolyF r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        GF::Elt x = i < a.size() ? a[i] : 0;
        GF::Elt y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    pf_trim(r);
    return r;
}

PolyF pf_neg(const GF& F, const PolyF& a) {
    PolyF r = a;
    for (auto& x : r) x = F.neg(x);
    return r;
}

PolyF pf_sub(const GF& F, const PolyF& a, const PolyF& b) { return pf_add(F, a, pf_neg(F, b)); }

PolyF pf_mul(const GF& F, const PolyF& a, const PolyF& b) {
    if (a.empty() || b.empty()) return {};
    PolyF r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    pf_trim(r);
    return r;
}

PolyF pf_scale(const GF& F, const PolyF& a, GF::Elt s) {
    PolyF r = a;
    for (auto& x : r) x = F.mul(x, s);
    pf_trim(r);
    return r;
}

std::pair<PolyF, PolyF> pf_divrem(const GF& F, const PolyF& a, const PolyF& b) {
    if (b.empty()) throw std::invalid_argument("PolyF division by zero");
    PolyF q, r = a;
    GF::Elt ilc = F.inv(b.back());
    while (!r.empty() && r.size() >= b.size()) {
        size_t k = r.size() - b.size();
        GF::Elt f = F.mul(r.back(), ilc);
        if (q.size() < k + 1) q.resize(k + 1, 0);
        q[k] = F.add(q[k], f);
        for (size_t i = 0; i < b.size(); ++i)
            r[i + k] = F.sub(r[i + k], F.mul(f, b[i]));
        pf_trim(r);
    }
    pf_trim(q);
    return {q, r};
}

PolyF pf_mod(const GF& F, const PolyF& a, const PolyF& b) { return pf_divrem(F, a, b).second; }

PolyF pf_divexact(const GF& F, const PolyF& a, const PolyF& b) {
    auto [q, r] = pf_divrem(F, a, b);
    if (!r.empty()) throw std::invalid_argument("PolyF: inexact division");
    return q;
}

PolyF pf_monic(const GF& F, const PolyF& a) {
    if (a.empty()) return a;
    return pf_scale(F, a, F.inv(a.back()));
}

PolyF pf_gcd(const GF& F, PolyF a, PolyF b) {
    while (!b.empty()) {
        PolyF r = pf_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return pf_monic(F, a);
}

PfXgcd pf_xgcd(const GF& F, const PolyF& a, const PolyF& b) {
    PolyF r0 = a, r1 = b;
    PolyF s0 = pf_from_const(F, 1), s1;
    PolyF t0, t1 = pf_from_const(F, 1);
    while (!r1.empty()) {
        auto [q, r2] = pf_divrem(F, r0, r1);
        PolyF s2 = pf_sub(F, s0, pf_mul(F, q, s1));
        PolyF t2 = pf_sub(F, t0, pf_mul(F, q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    GF::Elt ilc = F.inv(r0.back());
    return {pf_scale(F, r0, ilc), pf_scale(F, s0, ilc), pf_scale(F, t0, ilc)};
}

GF::Elt pf_eval(const GF& F, const PolyF& a, GF::Elt x) {
    GF::Elt r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

PolyF pf_derivative(const GF& F, const PolyF& a) {
    PolyF r;
    for (size_t i = 1; i < a.size(); ++i)
        r.push_back(F.mul(a[i], F.from_int(Int(static_cast<long>(i)))));
    pf_trim(r);
    return r;
}

bool pf_equal(const PolyF& a, const PolyF& b) { return a == b; }

} // namespace classrank
