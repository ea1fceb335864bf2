#include "classrank/families.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <set>

namespace classrank {

std::string family_kind_str(FamilyKind k) {
    switch (k) {
        case FamilyKind::toy: return "toy";
        case FamilyKind::yamamoto: return "yamamoto";
        case FamilyKind::superelliptic: return "superelliptic";
        case FamilyKind::levin: return "levin";
        case FamilyKind::user: return "user";
    }
    return "user";
}

FamilyKind family_kind_from_str(const std::string& s) {
    if (s == "toy") return FamilyKind::toy;
    if (s == "yamamoto") return FamilyKind::yamamoto;
    if (s == "superelliptic") return FamilyKind::superelliptic;
    if (s == "levin") return FamilyKind::levin;
    if (s == "user") return FamilyKind::user;
    throw std::invalid_argument("unknown family kind: " + s);
}

CurveFamily toy_family(long m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("toy family needs odd m >= 3");
    CurveFamily fam;
    fam.kind = FamilyKind::toy;
    fam.name = "toy-m" + std::to_string(m);
    fam.m = m;
    fam.exponent = 2;
    PolyQ h;
    h.coeff(0) = 1;
    h.coeff(static_cast<size_t>(m)) = -1;
    h.trim();
    fam.h = h;
    fam.genus = static_cast<int>((m - 1) / 2);
    fam.certificates.push_back({h, PolyQ(Rat(1)), PolyQ::x(), Rat(-1), m});
    // gamma = 1 - y
    fam.witnesses.push_back({PolyQ(Rat(1)), PolyQ(Rat(-1))});
    fam.x_of_t_const = 1;
    fam.x_of_t_coeff = 2;
    fam.claimed_rank_bound = 1;
    fam.claim_provenance = "tool";
    if (!verify_certificate(fam.certificates[0]))
        throw std::logic_error("toy certificate failed verification");
    return fam;
}

CurveFamily yamamoto_family(long m, const Rat& lambda) {
    if (m <= 1) throw std::invalid_argument("yamamoto family needs m > 1");
    if (lambda == 0 || lambda == 1 || lambda == -1)
        throw std::invalid_argument("yamamoto family needs lambda outside {0, 1, -1}");
    // h = (x^m - 1)(x^m - lambda^2) = x^(2m) - (1 + lambda^2) x^m + lambda^2
    PolyQ h;
    h.coeff(0) = lambda * lambda;
    h.coeff(static_cast<size_t>(m)) = -(1 + lambda * lambda);
    h.coeff(static_cast<size_t>(2 * m)) = 1;
    h.trim();
    if (!is_squarefree_poly(h))
        throw std::invalid_argument("yamamoto family: degenerate lambda, model not squarefree");

    CurveFamily fam;
    fam.kind = FamilyKind::yamamoto;
    fam.name = "yamamoto-m" + std::to_string(m);
    fam.m = m;
    fam.exponent = 2;
    fam.h = h;
    fam.genus = static_cast<int>(m - 1);
    fam.weierstrass_root = Rat(1); // h(1) = 0, simple because lambda^2 != 1

    // h - (x^m -+ lambda)^2 = -(lambda -+ 1)^2 x^m
    for (int sign : {-1, 1}) {
        PolyQ c;
        c.coeff(0) = Rat(sign) * lambda;
        c.coeff(static_cast<size_t>(m)) = 1;
        c.trim();
        Rat shift = lambda + Rat(sign);
        Rat factor = -shift * shift;
        TorsionCertificate cert{h, c, PolyQ::x(), factor, m};
        if (!verify_certificate(cert))
            throw std::logic_error("yamamoto certificate failed verification");
        fam.certificates.push_back(cert);
        // gamma = (y - c)/shift: the scaling clears -e = shift^2 from the
        // norm, N(gamma) = x^m at fibers, which condition (i) wants
        Rat inv = Rat(1) / shift;
        fam.witnesses.push_back({c.scaled(-inv), PolyQ(inv)});
    }
    fam.x_of_t_const = 0;
    fam.x_of_t_coeff = 1;
    fam.claimed_rank_bound = 2;
    fam.claim_provenance = "paper";
    return fam;
}

CurveFamily superelliptic_family(const SuperellipticData& data) {
    long r = static_cast<long>(data.roots.size());
    if (data.m <= 1 || r < 1) throw std::invalid_argument("superelliptic family needs m > 1, r >= 1");
    if (data.a0 == 0) throw std::invalid_argument("superelliptic family needs a0 != 0");
    if (std::gcd(r, data.m) != 1)
        throw std::invalid_argument("superelliptic family needs gcd(r, m) = 1");
    for (size_t i = 0; i < data.roots.size(); ++i)
        for (size_t j = i + 1; j < data.roots.size(); ++j)
            if (data.roots[i] == data.roots[j])
                throw std::invalid_argument("superelliptic family needs distinct roots");

    CurveFamily fam;
    fam.kind = FamilyKind::superelliptic;
    fam.name = "superelliptic-m" + std::to_string(data.m) + "-r" + std::to_string(r);
    fam.m = data.m;
    fam.exponent = static_cast<int>(data.m);
    PolyQ h(data.a0);
    for (const Rat& ai : data.roots) h = h * (PolyQ::x() - PolyQ(ai));
    fam.h = h;
    // genus of y^m = h with gcd(deg h, m) = 1
    fam.genus = static_cast<int>(((data.m - 1) * (r - 1)) / 2);
    fam.super_roots = data.roots;
    fam.super_a0 = data.a0;
    // div(x - a_i) = m P_i - m inf; the witnesses are x - a_i
    for (const Rat& ai : data.roots)
        fam.witnesses.push_back({PolyQ::x() - PolyQ(ai), PolyQ()});
    fam.x_of_t_const = 0;
    fam.x_of_t_coeff = 1;
    fam.claimed_rank_bound = static_cast<int>(r - 1);
    fam.claim_provenance = "paper";
    // the coordinate maps: x has degree m, y has degree r
    fam.map_degree_x = map_degree(fam.exponent, fam.h, {{PolyQ::x()}, PolyQ(Rat(1))});
    fam.map_degree_y = map_degree(fam.exponent, fam.h, {{PolyQ(), PolyQ(Rat(1))}, PolyQ(Rat(1))});
    if (fam.map_degree_x != data.m || fam.map_degree_y != r)
        throw std::logic_error("superelliptic family: unexpected coordinate map degrees");
    return fam;
}

CurveFamily odd_model_family(const CurveFamily& fam) {
    if (fam.exponent != 2) throw std::invalid_argument("odd model applies to hyperelliptic families");
    if (fam.h.degree() % 2 == 1) return fam;
    if (!fam.weierstrass_root)
        throw std::invalid_argument("no rational Weierstrass point recorded");
    CurveFamily out = fam;
    out.name = fam.name + "-odd";
    auto odd = to_odd_model(make_curve(fam.h), fam.weierstrass_root);
    out.h = odd.curve.h;
    out.genus = odd.curve.genus;
    out.weierstrass_root = std::nullopt;
    out.certificates.clear();
    for (const auto& cert : fam.certificates)
        out.certificates.push_back(transport_certificate(cert, *fam.weierstrass_root));
    // fibers and witnesses are expressed in the new coordinate directly;
    // when -e is a rational square s^2, (y - c)/s has norm w(x)^m at the
    // fibers, the normalization condition (i) wants
    out.witnesses.clear();
    for (const auto& cert : out.certificates) {
        auto s = rat_root(-cert.e, 2);
        Rat inv = s && *s != 0 ? Rat(1) / *s : Rat(1);
        out.witnesses.push_back({cert.c.scaled(-inv), PolyQ(inv)});
    }
    return out;
}

PolyQ mth_root_series(const PolyQ& h, long m, long truncation, const Rat& branch) {
    if (m <= 1) throw std::invalid_argument("mth_root_series: m must exceed 1");
    if (h.is_zero() || h[0] == 0)
        throw std::invalid_argument("mth_root_series: h(0) must be nonzero");
    if (rat_pow(branch, m) != h[0])
        throw std::invalid_argument("mth_root_series: branch constant does not match h(0)");
    if (truncation < 0) throw std::invalid_argument("mth_root_series: negative truncation");
    PolyQ f = series_nth_root(h, static_cast<unsigned long>(m), branch,
                              static_cast<size_t>(truncation) + 1);
    return f;
}

namespace {

using PP = Poly<PolyQ>; // polynomials in y with Q[x] coefficients

// Bareiss fraction-free determinant over Q[x]
PolyQ det_bareiss(std::vector<std::vector<PolyQ>> M) {
    size_t n = M.size();
    if (n == 0) return PolyQ(Rat(1));
    PolyQ prev(Rat(1));
    int sign = 1;
    for (size_t i = 0; i + 1 < n; ++i) {
        if (M[i][i].is_zero()) {
            size_t swap_row = i + 1;
            while (swap_row < n && M[swap_row][i].is_zero()) ++swap_row;
            if (swap_row == n) return PolyQ();
            std::swap(M[i], M[swap_row]);
            sign = -sign;
        }
        for (size_t r = i + 1; r < n; ++r) {
            for (size_t c = i + 1; c < n; ++c) {
                PolyQ num = M[i][i] * M[r][c] - M[r][i] * M[i][c];
                M[r][c] = divexact(num, prev);
            }
            M[r][i] = PolyQ();
        }
        prev = M[i][i];
    }
    PolyQ det = M[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// resultant in y of F, G in Q[x][y] via the Sylvester determinant
PolyQ resultant_y(const PP& F, const PP& G) {
    long n = F.degree(), m = G.degree();
    if (n < 0 || m < 0) return PolyQ();
    if (n == 0) return pow(F[0], static_cast<unsigned long>(std::max(m, 0L)));
    if (m == 0) return pow(G[0], static_cast<unsigned long>(n));
    size_t size = static_cast<size_t>(n + m);
    std::vector<std::vector<PolyQ>> M(size, std::vector<PolyQ>(size, PolyQ()));
    for (long row = 0; row < m; ++row)
        for (long j = 0; j <= n; ++j)
            M[static_cast<size_t>(row)][static_cast<size_t>(row + j)] = F[static_cast<size_t>(n - j)];
    for (long row = 0; row < n; ++row)
        for (long j = 0; j <= m; ++j)
            M[static_cast<size_t>(m + row)][static_cast<size_t>(row + j)] = G[static_cast<size_t>(m - j)];
    return det_bareiss(std::move(M));
}

} // namespace

long map_degree(int exponent, const PolyQ& h, const CurveMap& map) {
    if (exponent < 2) throw std::invalid_argument("map_degree: exponent must be >= 2");
    if (map.den.is_zero()) throw std::invalid_argument("map_degree: zero denominator");
    if (map.num.empty()) throw std::invalid_argument("map_degree: empty numerator");
    if (static_cast<long>(map.num.size()) > exponent)
        throw std::invalid_argument("map_degree: numerator y-degree must be below the exponent");

    // F = y^exponent - h
    PP F;
    F.c.assign(static_cast<size_t>(exponent) + 1, PolyQ());
    F.c[0] = -h;
    F.c[static_cast<size_t>(exponent)] = PolyQ(Rat(1));
    F.trim();

    // Res_y(F, num - s den) has s-degree at most exponent: interpolate
    // at s = 0..exponent
    long S = exponent;
    std::vector<PolyQ> samples;
    for (long j = 0; j <= S; ++j) {
        PP G;
        G.c.assign(map.num.size(), PolyQ());
        for (size_t i = 0; i < map.num.size(); ++i) G.c[i] = map.num[i];
        G.c[0] = G.c[0] - map.den.scaled(Rat(j));
        G.trim();
        if (G.is_zero()) throw std::invalid_argument("map_degree: degenerate pencil member");
        samples.push_back(resultant_y(F, G));
    }

    // Lagrange interpolation in s recovers the coefficients C_i(x)
    std::vector<PolyQ> coeffs(static_cast<size_t>(S) + 1, PolyQ());
    for (long j = 0; j <= S; ++j) {
        // basis polynomial prod_{k != j} (s - k)/(j - k) expanded over s
        std::vector<Rat> basis{Rat(1)};
        Rat denom(1);
        for (long k = 0; k <= S; ++k) {
            if (k == j) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i];
                next[i] -= Rat(k) * basis[i];
            }
            basis = std::move(next);
            denom *= Rat(j - k);
        }
        for (size_t i = 0; i < basis.size(); ++i)
            coeffs[i] = coeffs[i] + samples[static_cast<size_t>(j)].scaled(basis[i] / denom);
    }

    bool all_zero = true;
    for (const auto& c : coeffs) all_zero = all_zero && c.is_zero();
    if (all_zero) throw std::invalid_argument("map_degree: identically vanishing resultant");

    // base locus: the x-factor common to every s-coefficient is fiber-
    // independent and must not count toward the degree
    PolyQ base;
    for (const auto& c : coeffs) {
        if (c.is_zero()) continue;
        base = base.is_zero() ? c : gcd_poly(base, c);
    }
    long deg = -1;
    for (const auto& c : coeffs) deg = std::max(deg, c.degree());
    long corrected = deg - base.degree();
    if (corrected <= 0) throw std::invalid_argument("map_degree: degenerate elimination");
    return corrected;
}

LevinFamily levin_family(long m, long d, const std::optional<std::vector<Int>>& a_list,
                         const Int& c0) {
    if (m <= 1 || d <= 1) throw std::invalid_argument("levin_family: m, d must exceed 1");
    if (d <= (m - 1) * (m - 1))
        throw std::invalid_argument("levin_family: needs d > (m-1)^2");

    // largest r with r - floor(r/m) <= d and gcd(r, m) = 1
    long r = -1;
    for (long cand = (m * d) / (m - 1) + m + 2; cand >= 1; --cand) {
        if (cand - cand / m <= d && std::gcd(cand, m) == 1) {
            r = cand;
            break;
        }
    }
    assert(r >= 1);
    // r >= d + d/(m-1) - m + 1, exactly
    assert(Rat(r) >= Rat(d) + Rat(d, m - 1) - Rat(m) + Rat(1));

    LevinFamily fam;
    fam.m = m;
    fam.d = d;
    fam.r = r;
    if (a_list) {
        if (static_cast<long>(a_list->size()) != r)
            throw std::invalid_argument("levin_family: need exactly r = " + std::to_string(r) +
                                        " integers");
        fam.a = *a_list;
    } else {
        for (long p = 2; static_cast<long>(fam.a.size()) < r; ++p)
            if (is_prime(Int(p))) fam.a.push_back(Int(p));
    }
    for (const Int& ai : fam.a)
        if (ai == 0) throw std::invalid_argument("levin_family: zero parameter");

    // h = -(x - a_1^m) prod_{i >= 2} (x + a_i^m)
    PolyQ h(Rat(-1));
    h = h * (PolyQ::x() - PolyQ(Rat(pow_int(fam.a[0], static_cast<unsigned long>(m)))));
    for (long i = 1; i < r; ++i)
        h = h * (PolyQ::x() + PolyQ(Rat(pow_int(fam.a[static_cast<size_t>(i)],
                                                static_cast<unsigned long>(m)))));
    if (!is_squarefree_poly(h))
        throw std::invalid_argument("levin_family: parameters give a non-squarefree model");
    fam.h = h;
    fam.genus = static_cast<int>(((m - 1) * (r - 1)) / 2);

    // branch constant prod a_i, truncation floor(r/m) - 1
    Rat branch(1);
    for (const Int& ai : fam.a) branch *= Rat(ai);
    fam.f = mth_root_series(h, m, r / m - 1, branch);
    PolyQ err = pow(fam.f, static_cast<unsigned long>(m)) - h;
    assert(static_cast<long>(x_order(err, 10'000)) >= r / m);
    assert(r / m >= r - d);

    Int bden = 1;
    for (const Rat& c : fam.f.c) bden = lcm(bden, den(c));
    fam.b = bden;

    // psi = b(y - f)/x^(r-d)
    fam.psi.num = {fam.f.scaled(Rat(-bden)), PolyQ(Rat(bden))};
    fam.psi.den = pow(PolyQ::x(), static_cast<unsigned long>(r - d));
    fam.psi_degree = map_degree(static_cast<int>(m), h, fam.psi);
    if (fam.psi_degree != d) throw std::logic_error("levin_family: psi degree mismatch");

    // delta0 = product of primes dividing disc(h); h splits over Q, so
    // the discriminant factors through the pairwise root differences
    std::vector<Int> roots; // actual roots of h
    roots.push_back(pow_int(fam.a[0], static_cast<unsigned long>(m)));
    for (long i = 1; i < r; ++i)
        roots.push_back(-pow_int(fam.a[static_cast<size_t>(i)], static_cast<unsigned long>(m)));
    std::set<Int> prime_set;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            for (const auto& pp : factor(abs(roots[i] - roots[j])))
                prime_set.insert(pp.p);
    fam.delta0 = 1;
    for (const Int& p : prime_set) fam.delta0 *= p;
    fam.c0 = c0;

    // ceil(floor((d+1)/2) + d/(m-1) - m)
    Rat bound = Rat((d + 1) / 2) + Rat(d, m - 1) - Rat(m);
    Int ceil_b = num(bound) / den(bound) + (mod_floor(num(bound), den(bound)) != 0 && bound > 0 ? 1 : 0);
    fam.claimed_rank_bound = static_cast<int>(std::max(0L, static_cast<long>(ceil_b.get_si())));
    return fam;
}

PolyQ levin_defining_poly(const LevinFamily& fam, const Int& t) {
    // eliminate y from y^m = h, b(y - f) = (c0 + delta0 t) x^(r-d):
    // substituting y = (A/b) with A = b f + u x^(r-d) gives
    // A^m - b^m h = 0, divisible by x^(r-d)
    Rat u = Rat(fam.c0 + fam.delta0 * t);
    PolyQ A = fam.f.scaled(Rat(fam.b)) +
              pow(PolyQ::x(), static_cast<unsigned long>(fam.r - fam.d)).scaled(u);
    PolyQ full = pow(A, static_cast<unsigned long>(fam.m)) -
                 fam.h.scaled(rat_pow(Rat(fam.b), fam.m));
    // strip the base factor
    size_t base = static_cast<size_t>(fam.r - fam.d);
    assert(x_order(full, base + 1) >= base);
    PolyQ shifted;
    shifted.c.assign(full.c.begin() + static_cast<long>(base), full.c.end());
    shifted.trim();
    if (shifted.is_zero()) return shifted;
    return primitive_part(shifted);
}

double levin_disc_slope(const LevinFamily& fam, long tmax) {
    std::vector<double> xs, ys;
    for (long t = 1; t <= tmax; ++t) {
        PolyQ P = levin_defining_poly(fam, Int(t));
        if (P.degree() != fam.d) continue; // degenerate fiber
        Rat disc = discriminant(P);
        if (disc == 0) continue;
        // log |disc| via mpz size
        Int n = abs(num(disc));
        signed long exp2;
        double man = mpz_get_d_2exp(&exp2, n.get_mpz_t());
        double logd = std::log(man) + static_cast<double>(exp2) * std::log(2.0);
        xs.push_back(std::log(static_cast<double>(t)));
        ys.push_back(logd);
    }
    if (xs.size() < 3) throw std::invalid_argument("levin_disc_slope: too few usable fibers");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double n = static_cast<double>(xs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace classrank
