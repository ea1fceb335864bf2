#ifndef CLASSRANK_JACOBIAN_HPP
#define CLASSRANK_JACOBIAN_HPP

#include "classrank/exec.hpp"
#include "classrank/gf.hpp"
#include "classrank/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace classrank {

// Hyperelliptic model y^2 = h(x) over Q, h squarefree of degree >= 3.
struct HyperCurveQ {
    PolyQ h;
    int genus = 0;        // floor((deg h - 1)/2)
    bool odd_model = false;
};

HyperCurveQ make_curve(PolyQ h);

// the same curve with coefficients reduced mod p (or into F_{p^k})
struct CurveFq {
    GF F;
    PolyF h;
    int genus = 0;
    bool odd_model = false;
};

CurveFq reduce_curve(const HyperCurveQ& C, long p, int k = 1);

// Semi-reduced divisor class in Mumford form: u monic, deg v < deg u,
// u | v^2 - h. Reduced when deg u <= genus.
struct MumfordDiv {
    PolyF u, v;

    bool operator==(const MumfordDiv& o) const { return u == o.u && v == o.v; }
    bool operator<(const MumfordDiv& o) const { return u != o.u ? u < o.u : v < o.v; }
};

MumfordDiv identity_divisor();
bool is_identity(const MumfordDiv& d);
bool mumford_valid(const MumfordDiv& d, const CurveFq& C);

// Cantor composition and reduction; odd-degree models only.
MumfordDiv cantor_add(const MumfordDiv& a, const MumfordDiv& b, const CurveFq& C);
MumfordDiv cantor_neg(const MumfordDiv& a, const CurveFq& C);
MumfordDiv scalar_mul(Int n, const MumfordDiv& a, const CurveFq& C);

// divisor of an affine point (x0, y0) on the curve
MumfordDiv point_divisor(GF::Elt x0, GF::Elt y0, const CurveFq& C);

// Polynomial identity h - c^2 = e * w^m witnessing an m-torsion class.
struct TorsionCertificate {
    PolyQ h, c, w;
    Rat e;
    long m = 0;
};

// exact identity plus the support condition gcd(w, c) = 1 on a
// squarefree model
bool verify_certificate(const TorsionCertificate& cert);

// The class (u = monic image of w, v = c mod u) over F_{p^k}, reduced.
// Throws when p is bad for the certificate data or the Mumford
// consistency check v^2 = h (mod u) fails.
MumfordDiv divisor_from_certificate(const TorsionCertificate& cert, long p, int k = 1);

// certificate transported through x -> a + 1/X, y -> Y/X^(g+1)
TorsionCertificate transport_certificate(const TorsionCertificate& cert, const Rat& a);

bool divisor_order_divides(const MumfordDiv& d, long m, const CurveFq& C);
bool divisor_has_exact_order(const MumfordDiv& d, long m, const CurveFq& C);

// true iff the m^s combinations of the given m-torsion divisors are
// pairwise distinct; requires p coprime to 2m
bool independence_check(const std::vector<MumfordDiv>& divs, long m, const CurveFq& C);

// #C(F_{p^k}) counted projectively: one point at infinity on odd models,
// 1 + chi(lc h) on even models
long count_points(const HyperCurveQ& C, long p, int k, Exec exec = Exec::parallel,
                  long budget = 10'000'000);

struct ZetaData {
    long p = 0;
    std::vector<long> counts;   // N_1 .. N_g
    std::vector<Int> l_coeffs;  // L(T) coefficients, degree 2g
    Int jacobian_order;         // L(1)
};

ZetaData zeta(const HyperCurveQ& C, long p, Exec exec = Exec::parallel,
              long budget = 10'000'000);

// all reduced Mumford divisors over F_p (the full group on odd models)
std::vector<MumfordDiv> enumerate_jacobian(const CurveFq& C, long budget = 10'000'000);

// order of the m-torsion subgroup of J(F_p), by exhaustive enumeration
long torsion_profile(const CurveFq& C, long m, Exec exec = Exec::parallel,
                     long budget = 10'000'000);

// odd-degree model via x = a + 1/X, y = Y/X^(g+1), for a simple rational
// root a of h; pass nullopt for a curve that is already odd-degree
struct OddModel {
    HyperCurveQ curve;
    std::optional<Rat> a; // the root sent to infinity; nullopt = identity map
};

OddModel to_odd_model(const HyperCurveQ& C, const std::optional<Rat>& a);

// primes p <= bound with p coprime to 2 * lc * disc * denominators of h
std::vector<long> good_primes(const PolyQ& h, long bound);
inline std::vector<long> good_primes(const HyperCurveQ& C, long bound) {
    return good_primes(C.h, bound);
}

// affine points of the reduced curve
std::vector<std::pair<GF::Elt, GF::Elt>> affine_points(const CurveFq& C);

std::string divisor_str(const MumfordDiv& d);

} // namespace classrank

#endif
