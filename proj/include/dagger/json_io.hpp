#pragma once

#include "dagger/algebra.hpp"
#include "dagger/cech.hpp"
#include "dagger/derham.hpp"
#include "dagger/duality.hpp"
#include "dagger/error.hpp"
#include "dagger/weierstrass.hpp"

#include <json.hpp>

namespace dagger::io {

using json = nlohmann::ordered_json;

// Series: {"p": 5, "vars": ["X"], "terms": [{"e": [1], "c": "5"}, ...],
//          "cert": {"t": "0", "c": "0", "M": "inf"}, "laurent": true?, "completed": true?}
// Terms are emitted in lexicographic exponent order; scalars are "num/den" strings.
json to_json(const OSeries& f);
OSeries series_from_json(const json& j);

json to_json(const OSeries::TermMap& terms);
OSeries::TermMap terms_from_json(const json& j, std::size_t nvars);
json to_json(const GrowthCertificate& c);
GrowthCertificate certificate_from_json(const json& j);

// {"family": "free" | "principal-distinguished" | "torus" | "hyperelliptic",
//  "p": 7, "vars": [...], "generator": <series>, "Q": <series>, "completed": true?}
json to_json(const DaggerPresentation& P);
DaggerPresentation presentation_from_json(const json& j);

// Like a series, with a "decay": {"u", "c", "M"} block in place of "cert".
json to_json(const LaurentTail& a);
LaurentTail tail_from_json(const json& j);

json to_json(const DistinguishedReport& r);
json to_json(const DifferentialForm& w);
json to_json(const CoverSection& h);
json to_json(const CohomologyReport& r);
json to_json(const ContrastReport& r);
json to_json(const PairingMatrix& m);

/// {"error": {"kind": ..., "message": ..., "input": ...}}
json error_json(const DaggerError& e, const std::string& input = "");

/// Reads and parses a JSON file; parse failures become parse_error.
json read_file(const std::string& path);

}  // namespace dagger::io
