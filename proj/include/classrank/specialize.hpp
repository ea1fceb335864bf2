#ifndef CLASSRANK_SPECIALIZE_HPP
#define CLASSRANK_SPECIALIZE_HPP

#include "classrank/classgroup.hpp"
#include "classrank/families.hpp"

#include <optional>
#include <string>
#include <vector>

namespace classrank {

// One specialization fiber of a family: the parameter, the quadratic
// field it lands in, the Selmer witnesses, and the certified/measured
// class-rank data.
struct SpecRecord {
    long t = 0;
    Rat x_val;
    bool degenerate = false; // fiber value zero or a rational square
    Int d0, D;               // field radicand and fundamental discriminant
    std::vector<QuadElt> gammas;
    std::vector<bool> pass_i, pass_ii; // per-witness condition flags
    bool cond_i = false, cond_ii = false, cond_iii = false;
    int selmer_witnesses = 0; // witnesses passing (i) and (ii)
    int certified_bound = 0;
    std::optional<int> measured_rank;
    bool narrow_rank = false; // real fields carry the narrow group rank
    std::string error;        // nonempty when a budget or math error hit
};

struct SearchBudgets {
    std::uint64_t factor_budget = default_factor_budget();
    Int classgroup_budget = Int(100'000'000);
    Int measure_budget = Int(10'000'000); // measured_rank only below this |D|
};

// fiber evaluation only; conditions unchecked
SpecRecord specialize_fiber(const CurveFamily& fam, long t,
                            std::uint64_t factor_budget = default_factor_budget());

// fills cond_i / cond_ii / cond_iii and the witness tallies
void check_conditions(SpecRecord& rec, const CurveFamily& fam,
                      std::uint64_t factor_budget = default_factor_budget());

// s - unit_rank(K), floored at zero; zero when cond_iii fails
int certified_bound_of(const SpecRecord& rec);

// the ideal class with (gamma) = a^m, and its exact order in Cl(K)
std::pair<QuadForm, Int> selmer_to_class(const QuadElt& gamma, long m,
                                         const SearchBudgets& budgets = {});

// full sweep over t in [t_lo, t_hi]; per-record failures are captured in
// SpecRecord::error and never abort the sweep; output is ordered by t
std::vector<SpecRecord> run_search(const CurveFamily& fam, long t_lo, long t_hi,
                                   const SearchBudgets& budgets = {},
                                   Exec exec = Exec::parallel);

struct TallyReport {
    Int X;
    int target_rank = 0;
    long count = 0;    // distinct fundamental discriminants certified
    int genus = 0;
    double reference_curve = 0.0; // X^(1/(2g+1)) / log X
    std::vector<std::pair<int, long>> histogram; // decade -> distinct fields
};

// deduplicated count of fields with |D| <= X and certified bound at
// least target_rank
TallyReport tally(const std::vector<SpecRecord>& records, const Int& X, int target_rank,
                  int genus);

} // namespace classrank

#endif
