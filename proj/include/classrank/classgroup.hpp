#ifndef CLASSRANK_CLASSGROUP_HPP
#define CLASSRANK_CLASSGROUP_HPP

#include "classrank/exec.hpp"
#include "classrank/quadfield.hpp"

#include <vector>

namespace classrank {

// Integral binary quadratic form a x^2 + b xy + c y^2.
struct QuadForm {
    Int a, b, c;

    Int disc() const { return b * b - 4 * a * c; }
    QuadForm opposite() const { return {a, -b, c}; }

    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QuadForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

QuadForm principal_form(const Int& D);

bool is_fundamental_discriminant(const Int& D,
                                 std::uint64_t budget = default_factor_budget());

bool is_reduced(const QuadForm& f);

// Gauss reduction. Definite forms land on the unique reduced
// representative; indefinite forms land on their reduction cycle.
QuadForm reduce(QuadForm f);

// one step along the reduction cycle (indefinite forms)
QuadForm rho(const QuadForm& f);

// all reduced forms in the proper equivalence class of f (indefinite)
std::vector<QuadForm> reduction_cycle(const QuadForm& f);

// Composition of proper equivalence classes: forms are converted to
// ideals, multiplied as Z-modules in the (1, w) basis, and the primitive
// product is converted back and reduced.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm pow_form(const QuadForm& f, Int e);

bool equivalent(const QuadForm& f, const QuadForm& g);

// canonical class representative: the reduced form (D < 0) or the
// lexicographically least form on the reduction cycle (D > 0)
QuadForm canonical_form(const QuadForm& f);

struct ClassGroupStructure {
    Int D;
    Int h;                             // class number
    std::vector<Int> invariant_factors; // d1 | d2 | ... | dk, product h
    std::vector<QuadForm> generators;   // generators[i] has image order
                                        // invariant_factors[i] in the
                                        // quotient by the previous ones
    bool narrow = false;                // real fields carry the narrow group
};

// Full invariant-factor decomposition of the form class group for a
// fundamental discriminant. For D > 0 this is the narrow class group.
ClassGroupStructure class_group(const Int& D, const Int& enum_budget = Int(100'000'000));

// number of invariant factors divisible by m
int m_rank(const ClassGroupStructure& S, long m);

// order of the class of f in its class group
Int order_of_class(const QuadForm& f, const ClassGroupStructure& S);

// Reduced form representing the class of a product of prime ideals.
QuadForm class_of_ideal(const std::vector<PrimeIdealFactor>& factors, const QuadField& K);

// form attached to a single prime ideal (p, w - root)
QuadForm prime_ideal_form(const Int& D, const Int& p, const Int& root);

// all reduced forms (D < 0) or one representative per cycle (D > 0)
std::vector<QuadForm> class_representatives(const Int& D, const Int& enum_budget = Int(100'000'000));

// Class-number kernel over machine integers (valid well beyond the
// enumeration budget); the parallel sweep distributes discriminants
// across threads. Returns (D, h) pairs for fundamental D in [Dmin, Dmax].
long class_number_kernel(long D);
std::vector<std::pair<long, long>> class_number_sweep(long Dmin, long Dmax,
                                                      Exec exec = Exec::parallel);

} // namespace classrank

#endif
