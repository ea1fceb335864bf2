#ifndef CLASSRANK_IO_HPP
#define CLASSRANK_IO_HPP

#include "classrank/specialize.hpp"

#include <json.hpp>

#include <string>

namespace classrank {

using Json = nlohmann::ordered_json;

// torsion certificate: {"h": [..], "c": [..], "w": [..], "e": "..", "m": n}
// with coefficients little-endian as exact rational strings
Json certificate_to_json(const TorsionCertificate& cert);
TorsionCertificate certificate_from_json(const Json& j);

Json family_to_json(const CurveFamily& fam);
CurveFamily family_from_json(const Json& j);

// one SpecRecord per JSONL line, schema-tagged
Json record_to_json(const SpecRecord& rec);
SpecRecord record_from_json(const Json& j);

// run header carried as the first JSONL line of a search output
Json run_header(const CurveFamily& fam);

Json tally_to_json(const TallyReport& rep);

std::string record_csv_header();
std::string record_to_csv(const SpecRecord& rec);

Json zeta_to_json(const ZetaData& z);

} // namespace classrank

#endif
