// classrank: class groups of quadratic fields, hyperelliptic torsion
// certificates, and specialization searches for fields with large
// class-group m-rank.

#include "classrank/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace classrank;

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

CurveFamily family_from_flags(const std::string& kind, long m, const std::string& lambda,
                              const std::string& a0, const std::vector<std::string>& roots,
                              bool odd_model, const std::string& family_file) {
    CurveFamily fam;
    if (!family_file.empty()) {
        std::ifstream in(family_file);
        if (!in) throw std::runtime_error("cannot open family file: " + family_file);
        Json j = Json::parse(in);
        fam = family_from_json(j);
    } else if (kind == "toy") {
        fam = toy_family(m);
    } else if (kind == "yamamoto") {
        if (lambda.empty()) throw CLI::ValidationError("--lambda is required for yamamoto");
        fam = yamamoto_family(m, parse_rat(lambda));
    } else if (kind == "superelliptic") {
        SuperellipticData data;
        data.m = m;
        data.a0 = a0.empty() ? Rat(1) : parse_rat(a0);
        for (const auto& r : roots) data.roots.push_back(parse_rat(r));
        fam = superelliptic_family(data);
    } else {
        throw CLI::ValidationError("unknown family kind: " + kind);
    }
    if (odd_model) fam = odd_model_family(fam);
    return fam;
}

int cmd_classgroup(const std::string& D_str, const std::vector<long>& ms,
                   const std::string& budget_str) {
    Int D(D_str);
    Int budget(budget_str);
    ClassGroupStructure S;
    try {
        S = class_group(D, budget);
    } catch (const std::invalid_argument& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 1;
    }
    Json j;
    j["schema"] = "classrank.classgroup.v1";
    j["D"] = D.get_str();
    j["h"] = S.h.get_str();
    j["narrow"] = S.narrow;
    Json inv = Json::array();
    for (const auto& d : S.invariant_factors) inv.push_back(d.get_str());
    j["invariant_factors"] = inv;
    Json gens = Json::array();
    for (const auto& g : S.generators)
        gens.push_back({g.a.get_str(), g.b.get_str(), g.c.get_str()});
    j["generators"] = gens;
    Json ranks = Json::object();
    for (long m : ms) ranks[std::to_string(m)] = m_rank(S, m);
    j["m_ranks"] = ranks;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_verify_certificate(const std::string& path, std::vector<long> primes, int extension) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open certificate file: " << path << "\n";
        return 1;
    }
    Json doc = Json::parse(in);
    std::vector<TorsionCertificate> certs;
    if (doc.is_array())
        for (const auto& c : doc) certs.push_back(certificate_from_json(c));
    else
        certs.push_back(certificate_from_json(doc));
    if (certs.empty()) {
        std::cerr << "no certificates in file\n";
        return 1;
    }

    Json out;
    out["schema"] = "classrank.verify.v1";
    bool all_identities = true;
    Json idj = Json::array();
    for (const auto& c : certs) {
        bool ok = verify_certificate(c);
        idj.push_back(ok);
        all_identities = all_identities && ok;
    }
    out["identity_verified"] = idj;
    long m = certs[0].m;
    out["m"] = m;

    Json per_prime = Json::array();
    std::vector<int> independence_votes;
    if (all_identities) {
        if (primes.empty()) primes = {5, 7, 11};
        auto goods = good_primes(certs[0].h, *std::max_element(primes.begin(), primes.end()));
        for (long p : primes) {
            Json pj;
            pj["p"] = p;
            if (std::find(goods.begin(), goods.end(), p) == goods.end() || (2 * m) % p == 0) {
                pj["skipped"] = "bad prime for this certificate";
                per_prime.push_back(pj);
                continue;
            }
            try {
                auto C = reduce_curve(make_curve(certs[0].h), p, extension);
                std::vector<MumfordDiv> divs;
                Json orders = Json::array(), dstrs = Json::array();
                bool all_exact = true;
                for (const auto& c : certs) {
                    MumfordDiv d = divisor_from_certificate(c, p, extension);
                    divs.push_back(d);
                    dstrs.push_back(divisor_str(d));
                    bool exact = divisor_has_exact_order(d, m, C);
                    orders.push_back(exact);
                    all_exact = all_exact && exact;
                }
                pj["divisors"] = dstrs;
                pj["order_exact_m"] = orders;
                bool indep = independence_check(divs, m, C);
                pj["independent"] = indep;
                pj["combinations"] = static_cast<long>(
                    pow_int(Int(m), static_cast<unsigned long>(divs.size())).get_si());
                independence_votes.push_back(indep ? 1 : 0);
                pj["pass"] = all_exact && indep;
            } catch (const std::exception& e) {
                pj["skipped"] = e.what();
            }
            per_prime.push_back(pj);
        }
    }
    out["primes"] = per_prime;

    bool votes_agree = true;
    for (size_t i = 1; i < independence_votes.size(); ++i)
        votes_agree = votes_agree && independence_votes[i] == independence_votes[0];
    out["primes_agree"] = votes_agree;
    if (!votes_agree)
        out["note"] = "independence verdicts differ between good primes; investigate";
    bool aggregate = all_identities && !independence_votes.empty() && votes_agree &&
                     independence_votes[0] == 1;
    out["verdict"] = aggregate ? "pass" : "fail";
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_search(const CurveFamily& fam, long t_lo, long t_hi, const SearchBudgets& budgets,
               bool serial, const std::string& out_path, const std::string& csv_path,
               const std::string& tally_X, int target_rank, const std::string& tally_out) {
    auto recs = run_search(fam, t_lo, t_hi, budgets, serial ? Exec::serial : Exec::parallel);

    std::ostringstream jsonl;
    jsonl << run_header(fam).dump() << "\n";
    for (const auto& r : recs) jsonl << record_to_json(r).dump() << "\n";
    write_output(out_path, jsonl.str());

    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << record_csv_header() << "\n";
        for (const auto& r : recs) csv << record_to_csv(r) << "\n";
        write_output(csv_path, csv.str());
    }

    long errors = 0;
    for (const auto& r : recs)
        if (!r.error.empty()) ++errors;
    std::cerr << "search: " << recs.size() << " fibers, " << errors
              << " with record-level errors\n";

    if (!tally_X.empty()) {
        auto rep = tally(recs, Int(tally_X), target_rank, fam.genus);
        write_output(tally_out, tally_to_json(rep).dump(2) + "\n");
    }
    return 0;
}

int cmd_tally(const std::string& in_path, const std::string& X, int target_rank,
              const std::string& out_path) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "cannot open records file: " << in_path << "\n";
        return 1;
    }
    std::string line;
    std::vector<SpecRecord> recs;
    int genus = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Json j = Json::parse(line);
        std::string schema = j.value("schema", std::string{});
        if (schema == "classrank.run.v1") {
            genus = j["family"].value("genus", 0);
            continue;
        }
        recs.push_back(record_from_json(j));
    }
    auto rep = tally(recs, Int(X), target_rank, genus);
    write_output(out_path, tally_to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_levin(long m, long d, const std::vector<std::string>& a_strs, const std::string& c0,
              long t_max, const std::string& out_path) {
    std::optional<std::vector<Int>> a_list;
    if (!a_strs.empty()) {
        std::vector<Int> as;
        for (const auto& s : a_strs) as.emplace_back(s);
        a_list = as;
    }
    auto fam = levin_family(m, d, a_list, Int(c0));
    Json j;
    j["schema"] = "classrank.levin.v1";
    j["m"] = fam.m;
    j["d"] = fam.d;
    j["r"] = fam.r;
    Json as = Json::array();
    for (const auto& ai : fam.a) as.push_back(ai.get_str());
    j["a"] = as;
    Json hj = Json::array();
    for (const auto& s : poly_strs(fam.h)) hj.push_back(s);
    j["h"] = hj;
    Json fj = Json::array();
    for (const auto& s : poly_strs(fam.f)) fj.push_back(s);
    j["f"] = fj;
    j["b"] = fam.b.get_str();
    j["psi_degree"] = fam.psi_degree;
    j["genus"] = fam.genus;
    j["delta0"] = fam.delta0.get_str();
    j["c0"] = fam.c0.get_str();
    j["claimed_rank_bound"] = fam.claimed_rank_bound;
    j["disc_growth_exponent"] = (fam.m + 1) * fam.d - 1;

    Json fibers = Json::array();
    for (long t = 1; t <= t_max; ++t) {
        PolyQ P = levin_defining_poly(fam, Int(t));
        Json fj2;
        fj2["t"] = t;
        Json pj = Json::array();
        for (const auto& s : poly_strs(P)) pj.push_back(s);
        fj2["defining_poly"] = pj;
        fj2["degree"] = P.degree();
        if (P.degree() == fam.d) {
            Rat disc = discriminant(P);
            fj2["disc"] = rat_str(disc);
            fj2["degenerate"] = disc == 0;
        } else {
            fj2["degenerate"] = true;
        }
        fibers.push_back(fj2);
    }
    j["fibers"] = fibers;
    if (t_max >= 3) j["fitted_disc_slope"] = levin_disc_slope(fam, t_max);
    write_output(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"class-group rank toolkit: quadratic class groups, Jacobian torsion "
                 "certificates, and specialization searches"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML-style config file");

    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads for parallel kernels (0 = default)");

    // classgroup ----------------------------------------------------------
    auto* cg = app.add_subcommand("classgroup", "invariant factors and m-ranks of Cl(D)");
    std::string cg_D;
    std::vector<long> cg_ms;
    std::string cg_budget = "100000000";
    cg->add_option("-D,--discriminant", cg_D, "fundamental discriminant")->required();
    cg->add_option("-m,--m-rank", cg_ms, "report the m-rank for these m");
    cg->add_option("--enum-budget", cg_budget, "largest |D| accepted");

    // verify-certificate ---------------------------------------------------
    auto* vc = app.add_subcommand("verify-certificate",
                                  "check a torsion certificate and its divisors mod p");
    std::string vc_path;
    std::vector<long> vc_primes;
    int vc_ext = 1;
    vc->add_option("file", vc_path, "certificate JSON (object or array)")->required();
    vc->add_option("-p,--primes", vc_primes, "primes for the order/independence checks");
    vc->add_option("-k,--extension", vc_ext, "field extension degree")->capture_default_str();

    // family ----------------------------------------------------------------
    auto* fc = app.add_subcommand("family", "emit a family description JSON");
    std::string f_kind = "toy", f_lambda, f_a0, f_out, f_file;
    long f_m = 3;
    bool f_odd = false;
    std::vector<std::string> f_roots;
    fc->add_option("--kind", f_kind, "toy | yamamoto | superelliptic");
    fc->add_option("--m", f_m, "torsion order");
    fc->add_option("--lambda", f_lambda, "yamamoto parameter");
    fc->add_option("--a0", f_a0, "superelliptic leading constant");
    fc->add_option("--roots", f_roots, "superelliptic roots a_1..a_r");
    fc->add_flag("--odd-model", f_odd, "move to the odd-degree model");
    fc->add_option("-o,--out", f_out, "output path (default stdout)");

    // search ----------------------------------------------------------------
    auto* sc = app.add_subcommand("search", "specialize a family over a fiber range");
    std::string s_kind = "toy", s_lambda, s_a0, s_file, s_out, s_csv, s_X, s_tally_out;
    std::vector<std::string> s_roots;
    long s_m = 3, s_tlo = 1, s_thi = 50;
    bool s_odd = false, s_serial = false;
    int s_target = 1;
    std::string s_measure_budget = "10000000", s_cg_budget = "100000000";
    sc->add_option("--kind", s_kind, "toy | yamamoto | superelliptic");
    sc->add_option("--m", s_m, "torsion order");
    sc->add_option("--lambda", s_lambda, "yamamoto parameter");
    sc->add_option("--a0", s_a0, "superelliptic constant");
    sc->add_option("--roots", s_roots, "superelliptic roots");
    sc->add_option("--family-file", s_file, "family description JSON");
    sc->add_flag("--odd-model", s_odd, "specialize the odd-degree model");
    sc->add_option("--t-lo", s_tlo, "first fiber");
    sc->add_option("--t-hi", s_thi, "last fiber");
    sc->add_flag("--serial", s_serial, "run the serial reference path");
    sc->add_option("-o,--out", s_out, "records JSONL path (default stdout)");
    sc->add_option("--csv", s_csv, "also write a CSV export here");
    sc->add_option("--X", s_X, "tally bound on |D| (enables an inline tally)");
    sc->add_option("--target-rank", s_target, "tally rank threshold")->capture_default_str();
    sc->add_option("--tally-out", s_tally_out, "tally report path (default stdout)");
    sc->add_option("--measure-budget", s_measure_budget, "measure rank only below this |D|");
    sc->add_option("--classgroup-budget", s_cg_budget, "class group enumeration budget");

    // tally -------------------------------------------------------------------
    auto* tc = app.add_subcommand("tally", "tally a records stream");
    std::string t_in, t_X, t_out;
    int t_target = 1;
    tc->add_option("--in", t_in, "records JSONL")->required();
    tc->add_option("--X", t_X, "bound on |D|")->required();
    tc->add_option("--target-rank", t_target, "rank threshold")->capture_default_str();
    tc->add_option("-o,--out", t_out, "report path (default stdout)");

    // levin ---------------------------------------------------------------------
    auto* lc = app.add_subcommand("levin", "higher-degree construction report");
    long l_m = 3, l_d = 5, l_tmax = 30;
    std::vector<std::string> l_a;
    std::string l_c0 = "0", l_out;
    lc->add_option("--m", l_m, "torsion order")->required();
    lc->add_option("--d", l_d, "field degree")->required();
    lc->add_option("--a", l_a, "parameters a_1..a_r (default: first r primes)");
    lc->add_option("--c0", l_c0, "congruence representative for phi")->capture_default_str();
    lc->add_option("--t-max", l_tmax, "sample fibers 1..t-max")->capture_default_str();
    lc->add_option("-o,--out", l_out, "report path (default stdout)");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif

    try {
        if (*cg) return cmd_classgroup(cg_D, cg_ms, cg_budget);
        if (*vc) return cmd_verify_certificate(vc_path, vc_primes, vc_ext);
        if (*fc) {
            auto fam = family_from_flags(f_kind, f_m, f_lambda, f_a0, f_roots, f_odd, f_file);
            write_output(f_out, family_to_json(fam).dump(2) + "\n");
            return 0;
        }
        if (*sc) {
            auto fam = family_from_flags(s_kind, s_m, s_lambda, s_a0, s_roots, s_odd, s_file);
            SearchBudgets budgets;
            budgets.measure_budget = Int(s_measure_budget);
            budgets.classgroup_budget = Int(s_cg_budget);
            return cmd_search(fam, s_tlo, s_thi, budgets, s_serial, s_out, s_csv, s_X, s_target,
                              s_tally_out);
        }
        if (*tc) return cmd_tally(t_in, t_X, t_target, t_out);
        if (*lc) return cmd_levin(l_m, l_d, l_a, l_c0, l_tmax, l_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
