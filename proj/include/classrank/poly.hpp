#ifndef CLASSRANK_POLY_HPP
#define CLASSRANK_POLY_HPP

#include "classrank/integers.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace classrank {

// Dense univariate polynomial over a commutative ring T with exact
// arithmetic (Rat in practice; Poly<Rat> for bivariate work).
// Coefficients are stored little-endian: c[i] is the coefficient of x^i.
template <typename T>
struct Poly {
    std::vector<T> c;

    Poly() = default;
    explicit Poly(T constant) : c{std::move(constant)} { trim(); }
    explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(T(1)); }

    void trim() {
        while (!c.empty() && c.back() == T(0)) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    // degree of the zero polynomial is -1 by convention
    long degree() const { return static_cast<long>(c.size()) - 1; }

    const T& operator[](size_t i) const {
        static const T zero_elem{};
        return i < c.size() ? c[i] : zero_elem;
    }

    T& coeff(size_t i) {
        if (i >= c.size()) c.resize(i + 1, T(0));
        return c[i];
    }

    const T& lc() const {
        if (c.empty()) throw std::invalid_argument("lc of zero polynomial");
        return c.back();
    }

    bool operator==(const Poly& o) const { return c == o.c; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c) a = -a;
        return r;
    }

    Poly operator+(const Poly& o) const {
        Poly r;
        r.c.resize(std::max(c.size(), o.c.size()), T(0));
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = (*this)[i] + o[i];
        r.trim();
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        Poly r;
        r.c.assign(c.size() + o.c.size() - 1, T(0));
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == T(0)) continue;
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        }
        r.trim();
        return r;
    }

    Poly scaled(const T& s) const {
        Poly r = *this;
        for (auto& a : r.c) a = a * s;
        r.trim();
        return r;
    }

    T eval(const T& x) const {
        T r(0);
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }

    Poly shifted(size_t k) const { // multiply by x^k
        if (is_zero()) return Poly();
        Poly r;
        r.c.assign(k, T(0));
        r.c.insert(r.c.end(), c.begin(), c.end());
        return r;
    }

    Poly truncated(size_t n) const { // mod x^n
        Poly r;
        r.c.assign(c.begin(), c.begin() + std::min(c.size(), n));
        r.trim();
        return r;
    }
};

// element-level helpers resolved per coefficient type ----------------------

inline Rat divexact_elem(const Rat& a, const Rat& b) {
    if (b == 0) throw std::invalid_argument("division by zero");
    return a / b;
}

inline Rat elem_pow(const Rat& b, unsigned long e) {
    return rat_pow(b, static_cast<long>(e));
}

template <typename T>
Poly<T> divexact(const Poly<T>& a, const Poly<T>& b);

template <typename T>
Poly<T> divexact_elem(const Poly<T>& a, const Poly<T>& b) {
    return divexact(a, b);
}

template <typename T>
Poly<T> pow(const Poly<T>& b, unsigned long e) {
    Poly<T> r = Poly<T>::one(), base = b;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

template <typename T>
Poly<T> elem_pow(const Poly<T>& b, unsigned long e) {
    return pow(b, e);
}

template <typename T>
Poly<T> derivative(const Poly<T>& p) {
    Poly<T> r;
    for (size_t i = 1; i < p.c.size(); ++i) r.c.push_back(p.c[i] * T(static_cast<long>(i)));
    r.trim();
    return r;
}

// division with remainder; requires an invertible leading coefficient,
// so use over a field only
template <typename T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    Poly<T> q, r = a;
    const T inv_lc = T(1) / b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        size_t k = static_cast<size_t>(r.degree() - b.degree());
        T f = r.lc() * inv_lc;
        q.coeff(k) = q[k] + f;
        for (size_t i = 0; i < b.c.size(); ++i) r.coeff(i + k) = r[i + k] - f * b.c[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

// Exact division in T[x] for an integral domain T; throws if inexact.
// This is what Bareiss elimination relies on.
template <typename T>
Poly<T> divexact(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (a.is_zero()) return Poly<T>();
    Poly<T> q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        size_t k = static_cast<size_t>(r.degree() - b.degree());
        T f = divexact_elem(r.lc(), b.lc());
        q.coeff(k) = q[k] + f;
        for (size_t i = 0; i < b.c.size(); ++i) r.coeff(i + k) = r[i + k] - f * b.c[i];
        r.trim();
    }
    if (!r.is_zero()) throw std::invalid_argument("divexact: inexact polynomial division");
    q.trim();
    return q;
}

template <typename T>
Poly<T> gcd_poly(Poly<T> a, Poly<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    // monic normalization makes the gcd canonical
    T inv = T(1) / a.lc();
    return a.scaled(inv);
}

template <typename T>
bool is_squarefree_poly(const Poly<T>& p) {
    if (p.degree() <= 0) return !p.is_zero();
    return gcd_poly(p, derivative(p)).degree() == 0;
}

// resultant over a field via the Euclidean remainder sequence
template <typename T>
T resultant(Poly<T> a, Poly<T> b) {
    if (a.is_zero() || b.is_zero()) return T(0);
    T res(1);
    bool negate = false;
    while (b.degree() > 0) {
        auto [q, r] = divrem(a, b);
        (void)q;
        long da = a.degree(), db = b.degree();
        if (r.is_zero()) return T(0);
        long dr = r.degree();
        if ((da % 2) && (db % 2)) negate = !negate;
        res = res * elem_pow(b.lc(), static_cast<unsigned long>(da - dr));
        a = b;
        b = r;
    }
    res = res * elem_pow(b.lc(), static_cast<unsigned long>(a.degree()));
    return negate ? -res : res;
}

template <typename T>
T discriminant(const Poly<T>& p) {
    if (p.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    if (p.degree() == 1) return T(1);
    T r = resultant(p, derivative(p));
    r = divexact_elem(r, p.lc());
    long n = p.degree();
    return ((n * (n - 1) / 2) % 2) ? -r : r;
}

// p(x + a) via Horner
template <typename T>
Poly<T> taylor_shift(const Poly<T>& p, const T& a) {
    Poly<T> r;
    Poly<T> lin(std::vector<T>{a, T(1)});
    for (size_t i = p.c.size(); i-- > 0;) {
        r = r * lin;
        r.coeff(0) = r[0] + p.c[i];
        r.trim();
    }
    return r;
}

template <typename T>
Poly<T> reversed(const Poly<T>& p, size_t n) { // x^n * p(1/x)
    Poly<T> r;
    r.c.assign(n + 1, T(0));
    for (size_t i = 0; i < p.c.size(); ++i) {
        if (i > n) throw std::invalid_argument("reversed: degree exceeds n");
        r.c[n - i] = p.c[i];
    }
    r.trim();
    return r;
}

// inverse of f as a power series mod x^n (f(0) != 0), by Newton doubling
template <typename T>
Poly<T> series_inverse(const Poly<T>& f, size_t n) {
    if (f.is_zero() || f[0] == T(0))
        throw std::invalid_argument("series_inverse: zero constant term");
    Poly<T> g(T(1) / f[0]);
    size_t prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        Poly<T> t = (f.truncated(prec) * g).truncated(prec);
        Poly<T> two_minus = Poly<T>(T(2)) - t;
        g = (g * two_minus).truncated(prec);
    }
    return g.truncated(n);
}

// m-th root of h as a power series mod x^n, with prescribed root of the
// constant term: r0^m = h(0). Newton iteration f <- f - (f^m - h)/(m f^(m-1)).
template <typename T>
Poly<T> series_nth_root(const Poly<T>& h, unsigned long m, const T& r0, size_t n) {
    if (h.is_zero() || h[0] == T(0))
        throw std::invalid_argument("series_nth_root: zero constant term");
    if (elem_pow(r0, m) != h[0])
        throw std::invalid_argument("series_nth_root: branch constant mismatch");
    Poly<T> f(r0);
    size_t prec = 1;
    while (prec < n) {
        prec = std::min(2 * prec, n);
        Poly<T> fm1 = pow(f, m - 1).truncated(prec);
        Poly<T> denom = fm1.scaled(T(static_cast<long>(m)));
        Poly<T> fm = (fm1 * f).truncated(prec);
        Poly<T> delta = ((fm - h.truncated(prec)) * series_inverse(denom, prec)).truncated(prec);
        f = (f - delta).truncated(prec);
    }
    return f.truncated(n);
}

// order of vanishing at x = 0; returns n for the zero polynomial
template <typename T>
size_t x_order(const Poly<T>& p, size_t n) {
    for (size_t i = 0; i < p.c.size(); ++i)
        if (!(p.c[i] == T(0))) return i;
    return n;
}

using PolyQ = Poly<Rat>;

// positive rational g such that p/g has coprime integer coefficients
Rat content(const PolyQ& p);

// integer-coefficient multiple of p with coprime coefficients and positive lead
PolyQ primitive_part(const PolyQ& p);

PolyQ parse_poly(const std::vector<std::string>& coeffs);
std::vector<std::string> poly_strs(const PolyQ& p);
std::string poly_pretty(const PolyQ& p, const std::string& var = "x");

} // namespace classrank

#endif
