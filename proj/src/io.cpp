#include "classrank/io.hpp"

#include <sstream>

namespace classrank {

namespace {

Json poly_json(const PolyQ& p) {
    Json a = Json::array();
    for (const auto& s : poly_strs(p)) a.push_back(s);
    return a;
}

PolyQ poly_from(const Json& j) {
    std::vector<std::string> cs;
    for (const auto& e : j) cs.push_back(e.get<std::string>());
    return parse_poly(cs);
}

} // namespace

Json certificate_to_json(const TorsionCertificate& cert) {
    Json j;
    j["h"] = poly_json(cert.h);
    j["c"] = poly_json(cert.c);
    j["w"] = poly_json(cert.w);
    j["e"] = rat_str(cert.e);
    j["m"] = cert.m;
    return j;
}

TorsionCertificate certificate_from_json(const Json& j) {
    TorsionCertificate cert;
    cert.h = poly_from(j.at("h"));
    cert.c = poly_from(j.at("c"));
    cert.w = poly_from(j.at("w"));
    cert.e = parse_rat(j.at("e").get<std::string>());
    cert.m = j.at("m").get<long>();
    return cert;
}

Json family_to_json(const CurveFamily& fam) {
    Json j;
    j["schema"] = "classrank.family.v1";
    j["kind"] = family_kind_str(fam.kind);
    j["name"] = fam.name;
    j["m"] = fam.m;
    j["exponent"] = fam.exponent;
    j["h"] = poly_json(fam.h);
    j["genus"] = fam.genus;
    Json certs = Json::array();
    for (const auto& c : fam.certificates) certs.push_back(certificate_to_json(c));
    j["certificates"] = certs;
    Json ws = Json::array();
    for (const auto& w : fam.witnesses) {
        Json e;
        e["a"] = poly_json(w.a);
        e["b"] = poly_json(w.b);
        ws.push_back(e);
    }
    j["witnesses"] = ws;
    j["x_of_t"] = {{"const", rat_str(fam.x_of_t_const)}, {"coeff", rat_str(fam.x_of_t_coeff)}};
    j["claimed_rank_bound"] = fam.claimed_rank_bound;
    j["claim_provenance"] = fam.claim_provenance;
    if (fam.weierstrass_root) j["weierstrass_root"] = rat_str(*fam.weierstrass_root);
    if (!fam.super_roots.empty()) {
        Json roots = Json::array();
        for (const auto& r : fam.super_roots) roots.push_back(rat_str(r));
        j["super_roots"] = roots;
        j["super_a0"] = rat_str(fam.super_a0);
    }
    if (fam.map_degree_x || fam.map_degree_y)
        j["map_degrees"] = {{"x", fam.map_degree_x}, {"y", fam.map_degree_y}};
    return j;
}

CurveFamily family_from_json(const Json& j) {
    CurveFamily fam;
    fam.kind = family_kind_from_str(j.at("kind").get<std::string>());
    fam.name = j.value("name", std::string{});
    fam.m = j.at("m").get<long>();
    fam.exponent = j.at("exponent").get<int>();
    fam.h = poly_from(j.at("h"));
    fam.genus = j.at("genus").get<int>();
    for (const auto& c : j.value("certificates", Json::array()))
        fam.certificates.push_back(certificate_from_json(c));
    for (const auto& w : j.value("witnesses", Json::array()))
        fam.witnesses.push_back({poly_from(w.at("a")), poly_from(w.at("b"))});
    if (j.contains("x_of_t")) {
        fam.x_of_t_const = parse_rat(j["x_of_t"].at("const").get<std::string>());
        fam.x_of_t_coeff = parse_rat(j["x_of_t"].at("coeff").get<std::string>());
    }
    fam.claimed_rank_bound = j.value("claimed_rank_bound", 0);
    fam.claim_provenance = j.value("claim_provenance", std::string{});
    if (j.contains("weierstrass_root"))
        fam.weierstrass_root = parse_rat(j["weierstrass_root"].get<std::string>());
    if (j.contains("super_roots")) {
        for (const auto& r : j["super_roots"]) fam.super_roots.push_back(parse_rat(r.get<std::string>()));
        fam.super_a0 = parse_rat(j["super_a0"].get<std::string>());
    }
    if (j.contains("map_degrees")) {
        fam.map_degree_x = j["map_degrees"].value("x", 0L);
        fam.map_degree_y = j["map_degrees"].value("y", 0L);
    }
    return fam;
}

Json record_to_json(const SpecRecord& rec) {
    Json j;
    j["schema"] = "classrank.record.v1";
    j["t"] = rec.t;
    if (!rec.error.empty()) {
        j["error"] = rec.error;
        return j;
    }
    j["x"] = rat_str(rec.x_val);
    j["degenerate"] = rec.degenerate;
    if (rec.degenerate) return j;
    j["d0"] = rec.d0.get_str();
    j["D"] = rec.D.get_str();
    Json gs = Json::array();
    for (const auto& g : rec.gammas) gs.push_back({rat_str(g.a), rat_str(g.b)});
    j["gammas"] = gs;
    j["cond_i"] = rec.cond_i;
    j["cond_ii"] = rec.cond_ii;
    j["cond_iii"] = rec.cond_iii;
    Json pi = Json::array(), pii = Json::array();
    for (bool b : rec.pass_i) pi.push_back(b);
    for (bool b : rec.pass_ii) pii.push_back(b);
    j["pass_i"] = pi;
    j["pass_ii"] = pii;
    j["selmer_witnesses"] = rec.selmer_witnesses;
    j["certified_bound"] = rec.certified_bound;
    if (rec.measured_rank) {
        j["measured_rank"] = *rec.measured_rank;
        j["narrow_rank"] = rec.narrow_rank;
    } else {
        j["measured_rank"] = nullptr;
    }
    return j;
}

SpecRecord record_from_json(const Json& j) {
    SpecRecord rec;
    rec.t = j.at("t").get<long>();
    if (j.contains("error")) {
        rec.error = j["error"].get<std::string>();
        return rec;
    }
    rec.x_val = parse_rat(j.at("x").get<std::string>());
    rec.degenerate = j.at("degenerate").get<bool>();
    if (rec.degenerate) return rec;
    rec.d0 = Int(j.at("d0").get<std::string>());
    rec.D = Int(j.at("D").get<std::string>());
    QuadField K = make_field(rec.d0);
    for (const auto& g : j.at("gammas"))
        rec.gammas.push_back(make_elt(K, parse_rat(g[0].get<std::string>()),
                                      parse_rat(g[1].get<std::string>())));
    rec.cond_i = j.at("cond_i").get<bool>();
    rec.cond_ii = j.at("cond_ii").get<bool>();
    rec.cond_iii = j.at("cond_iii").get<bool>();
    for (const auto& b : j.at("pass_i")) rec.pass_i.push_back(b.get<bool>());
    for (const auto& b : j.at("pass_ii")) rec.pass_ii.push_back(b.get<bool>());
    rec.selmer_witnesses = j.at("selmer_witnesses").get<int>();
    rec.certified_bound = j.at("certified_bound").get<int>();
    if (!j.at("measured_rank").is_null()) {
        rec.measured_rank = j["measured_rank"].get<int>();
        rec.narrow_rank = j.value("narrow_rank", false);
    }
    return rec;
}

Json run_header(const CurveFamily& fam) {
    Json j;
    j["schema"] = "classrank.run.v1";
    j["family"] = family_to_json(fam);
    return j;
}

Json tally_to_json(const TallyReport& rep) {
    Json j;
    j["schema"] = "classrank.tally.v1";
    j["X"] = rep.X.get_str();
    j["target_rank"] = rep.target_rank;
    j["count"] = rep.count;
    j["genus"] = rep.genus;
    j["reference_curve"] = rep.reference_curve;
    Json h = Json::array();
    for (const auto& [dec, n] : rep.histogram)
        h.push_back({{"decade", dec}, {"count", n}});
    j["histogram"] = h;
    return j;
}

std::string record_csv_header() {
    return "t,D,degenerate,cond_i,cond_ii,cond_iii,certified_bound,measured_rank,error";
}

std::string record_to_csv(const SpecRecord& rec) {
    std::ostringstream os;
    os << rec.t << ",";
    if (rec.error.empty() && !rec.degenerate) os << rec.D.get_str();
    os << "," << (rec.degenerate ? 1 : 0) << "," << (rec.cond_i ? 1 : 0) << ","
       << (rec.cond_ii ? 1 : 0) << "," << (rec.cond_iii ? 1 : 0) << "," << rec.certified_bound
       << ",";
    if (rec.measured_rank) os << *rec.measured_rank;
    os << ",";
    if (!rec.error.empty()) {
        std::string e = rec.error;
        for (auto& ch : e)
            if (ch == ',' || ch == '\n') ch = ';';
        os << e;
    }
    return os.str();
}

Json zeta_to_json(const ZetaData& z) {
    Json j;
    j["p"] = z.p;
    j["counts"] = z.counts;
    Json cs = Json::array();
    for (const auto& c : z.l_coeffs) cs.push_back(c.get_str());
    j["l_coefficients"] = cs;
    j["jacobian_order"] = z.jacobian_order.get_str();
    return j;
}

} // namespace classrank
