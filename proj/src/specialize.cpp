#include "classrank/specialize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace classrank {

SpecRecord specialize_fiber(const CurveFamily& fam, long t, std::uint64_t factor_budget) {
    if (fam.exponent != 2)
        throw std::invalid_argument("specialization pipeline handles quadratic fibers only");
    SpecRecord rec;
    rec.t = t;
    rec.x_val = fam.x_of_t(Int(t));
    Rat value = fam.h.eval(rec.x_val);
    if (value == 0) {
        rec.degenerate = true;
        return rec;
    }
    // K = Q(sqrt(value)); with value = n/d the radicand is sf(n * d)
    Int nd = num(value) * den(value);
    auto [s, f0] = squarefree_part(nd, factor_budget);
    if (s == 1) {
        rec.degenerate = true; // the fiber collapses to Q
        return rec;
    }
    QuadField K = make_field(s, factor_budget);
    rec.d0 = s;
    rec.D = K.D;
    Rat ycoeff = make_rat(f0, den(value)); // y = ycoeff * sqrt(s)
    for (const auto& w : fam.witnesses) {
        Rat A = w.a.eval(rec.x_val);
        Rat B = w.b.eval(rec.x_val);
        rec.gammas.push_back(make_elt(K, A, B * ycoeff));
    }
    return rec;
}

void check_conditions(SpecRecord& rec, const CurveFamily& fam, std::uint64_t factor_budget) {
    if (rec.degenerate) return;
    long m = fam.m;
    QuadField K = make_field(rec.d0, factor_budget);
    rec.pass_i.clear();
    rec.pass_ii.clear();
    for (const auto& g : rec.gammas) {
        if (g.is_zero()) {
            rec.pass_i.push_back(false);
            rec.pass_ii.push_back(false);
            continue;
        }
        rec.pass_i.push_back(selmer_member(g, m, factor_budget));
        rec.pass_ii.push_back(kummer_degree(g, m) == m);
    }
    rec.cond_i = std::all_of(rec.pass_i.begin(), rec.pass_i.end(), [](bool b) { return b; });
    rec.cond_ii = std::all_of(rec.pass_ii.begin(), rec.pass_ii.end(), [](bool b) { return b; });
    rec.cond_iii = linearly_disjoint_from_cyclotomic(K, m);
    rec.selmer_witnesses = 0;
    for (size_t i = 0; i < rec.gammas.size(); ++i)
        if (rec.pass_i[i] && rec.pass_ii[i]) ++rec.selmer_witnesses;
    rec.certified_bound = certified_bound_of(rec);
}

int certified_bound_of(const SpecRecord& rec) {
    if (rec.degenerate || !rec.cond_iii) return 0;
    QuadField K;
    K.d0 = rec.d0;
    K.D = rec.D;
    int bound = rec.selmer_witnesses - K.unit_rank();
    return std::max(0, bound);
}

std::pair<QuadForm, Int> selmer_to_class(const QuadElt& gamma, long m,
                                         const SearchBudgets& budgets) {
    if (!selmer_member(gamma, m, budgets.factor_budget))
        throw std::invalid_argument("selmer_to_class: element is not a Selmer member");
    auto factors = ideal_factorization(gamma, budgets.factor_budget);
    for (auto& f : factors) {
        assert(f.exponent % m == 0);
        f.exponent /= m;
    }
    QuadForm cls = class_of_ideal(factors, gamma.K);
    auto S = class_group(gamma.K.D, budgets.classgroup_budget);
    return {cls, order_of_class(cls, S)};
}

namespace {

void fill_measurement(SpecRecord& rec, long m, const SearchBudgets& budgets) {
    if (rec.degenerate || abs(rec.D) > budgets.measure_budget) return;
    auto S = class_group(rec.D, budgets.classgroup_budget);
    rec.measured_rank = m_rank(S, m);
    rec.narrow_rank = S.narrow;
}

SpecRecord one_fiber(const CurveFamily& fam, long t, const SearchBudgets& budgets) {
    SpecRecord rec;
    try {
        rec = specialize_fiber(fam, t, budgets.factor_budget);
        check_conditions(rec, fam, budgets.factor_budget);
        fill_measurement(rec, fam.m, budgets);
    } catch (const std::exception& e) {
        rec.t = t;
        rec.error = e.what();
    }
    return rec;
}

} // namespace

std::vector<SpecRecord> run_search(const CurveFamily& fam, long t_lo, long t_hi,
                                   const SearchBudgets& budgets, Exec exec) {
    if (t_lo > t_hi) return {};
    size_t n = static_cast<size_t>(t_hi - t_lo + 1);
    std::vector<SpecRecord> out(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (size_t i = 0; i < n; ++i)
            out[i] = one_fiber(fam, t_lo + static_cast<long>(i), budgets);
    } else {
        for (size_t i = 0; i < n; ++i)
            out[i] = one_fiber(fam, t_lo + static_cast<long>(i), budgets);
    }
    return out;
}

TallyReport tally(const std::vector<SpecRecord>& records, const Int& X, int target_rank,
                  int genus) {
    TallyReport rep;
    rep.X = X;
    rep.target_rank = target_rank;
    rep.genus = genus;

    std::set<Int> seen;
    std::map<int, std::set<Int>> decades;
    for (const auto& rec : records) {
        if (rec.degenerate || !rec.error.empty()) continue;
        if (rec.certified_bound < target_rank) continue;
        Int aD = abs(rec.D);
        if (aD > X) continue;
        seen.insert(rec.D);
        int decade = static_cast<int>(mpz_sizeinbase(aD.get_mpz_t(), 10)) - 1;
        decades[decade].insert(rec.D);
    }
    rep.count = static_cast<long>(seen.size());
    for (const auto& [dec, ds] : decades)
        rep.histogram.emplace_back(dec, static_cast<long>(ds.size()));

    double Xd = mpz_get_d(num(Rat(X)).get_mpz_t());
    if (Xd > 1.0)
        rep.reference_curve = std::pow(Xd, 1.0 / (2.0 * genus + 1.0)) / std::log(Xd);
    return rep;
}

} // namespace classrank
