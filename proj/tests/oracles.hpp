#ifndef CLASSRANK_TEST_ORACLES_HPP
#define CLASSRANK_TEST_ORACLES_HPP

// Independent oracles used by the test suites. Everything here is
// deliberately self-contained: no reduction theory, no composition
// formulas, no code shared with the library paths under test.

#include "classrank/integers.hpp"

#include <vector>

namespace classrank::oracles {

// Class number of the maximal order of discriminant D < 0 by Minkowski
// ideal enumeration: every class contains a primitive ideal of norm at
// most (2/pi) sqrt(|D|); ideals are grouped by pairwise equivalence,
// where I ~ J iff I * conj(J) is principal, decided by solving a norm
// equation exhaustively. Module products use 2-column integer HNF.
long class_number_minkowski(long D);

// Class number via the finite character sum h = w/(2|D|) |sum chi(k) k|.
long class_number_analytic(long D);

// all primitive ideals (a, r) with w-root r and norm a <= bound
struct IdealRep {
    long norm;
    long root;
};
std::vector<IdealRep> primitive_ideals_upto(long D, long bound);

} // namespace classrank::oracles

#endif
