#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "classrank/io.hpp"

using namespace classrank;

TEST_CASE("certificate schema round trip") {
    auto fam = toy_family(5);
    const auto& cert = fam.certificates[0];
    Json j = certificate_to_json(cert);
    CHECK(j["m"] == 5);
    CHECK(j["e"] == "-1");
    CHECK(j["h"].size() == 6);
    auto back = certificate_from_json(j);
    CHECK(back.h == cert.h);
    CHECK(back.c == cert.c);
    CHECK(back.w == cert.w);
    CHECK(back.e == cert.e);
    CHECK(back.m == cert.m);
    // byte-identical reserialization
    CHECK(certificate_to_json(back).dump() == j.dump());
}

TEST_CASE("family schema round trip") {
    for (const CurveFamily& fam :
         {toy_family(3), odd_model_family(yamamoto_family(3, Rat(2))),
          superelliptic_family({3, Rat(-1), {Rat(0), Rat(1), Rat(-2), Rat(5), Rat(7),
                                             Rat(11), Rat(13)}})}) {
        Json j = family_to_json(fam);
        CurveFamily back = family_from_json(j);
        CHECK(back.kind == fam.kind);
        CHECK(back.m == fam.m);
        CHECK(back.exponent == fam.exponent);
        CHECK(back.h == fam.h);
        CHECK(back.genus == fam.genus);
        CHECK(back.certificates.size() == fam.certificates.size());
        CHECK(back.witnesses.size() == fam.witnesses.size());
        for (size_t i = 0; i < fam.witnesses.size(); ++i) {
            CHECK(back.witnesses[i].a == fam.witnesses[i].a);
            CHECK(back.witnesses[i].b == fam.witnesses[i].b);
        }
        CHECK(back.x_of_t_const == fam.x_of_t_const);
        CHECK(back.x_of_t_coeff == fam.x_of_t_coeff);
        CHECK(family_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("record schema round trip over a live sweep") {
    auto fam = toy_family(3);
    auto recs = run_search(fam, 0, 12, {}, Exec::serial);
    for (const auto& rec : recs) {
        Json j = record_to_json(rec);
        CHECK(j["schema"] == "classrank.record.v1");
        SpecRecord back = record_from_json(j);
        CHECK(back.t == rec.t);
        CHECK(back.degenerate == rec.degenerate);
        if (!rec.degenerate && rec.error.empty()) {
            CHECK(back.D == rec.D);
            CHECK(back.certified_bound == rec.certified_bound);
            CHECK(back.measured_rank == rec.measured_rank);
            CHECK(back.gammas.size() == rec.gammas.size());
            for (size_t i = 0; i < rec.gammas.size(); ++i) CHECK(back.gammas[i] == rec.gammas[i]);
        }
        CHECK(record_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("csv export shape") {
    auto fam = toy_family(3);
    auto rec = specialize_fiber(fam, 2);
    check_conditions(rec, fam);
    std::string line = record_to_csv(rec);
    CHECK(line.rfind("2,-31,0,1,1,1,1,,", 0) == 0);
    CHECK(record_csv_header() == "t,D,degenerate,cond_i,cond_ii,cond_iii,certified_bound,measured_rank,error");
}

TEST_CASE("tally report serialization") {
    auto fam = toy_family(3);
    auto recs = run_search(fam, 1, 20, {}, Exec::serial);
    auto rep = tally(recs, Int(1'000'000), 1, fam.genus);
    Json j = tally_to_json(rep);
    CHECK(j["count"].get<long>() == rep.count);
    CHECK(j["X"] == "1000000");
    long total = 0;
    for (const auto& e : j["histogram"]) total += e["count"].get<long>();
    CHECK(total == rep.count);
}
