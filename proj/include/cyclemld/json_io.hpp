#ifndef CYCLEMLD_JSON_IO_HPP
#define CYCLEMLD_JSON_IO_HPP

#include "cyclemld/certify.hpp"
#include "cyclemld/intersect.hpp"
#include "cyclemld/mle.hpp"
#include "cyclemld/model.hpp"
#include "cyclemld/poly.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace cyclemld {

using Json = nlohmann::json;

Json to_json(const Polynomial& p);   // {"coeffs": [c0, c1, ...]}
Json to_json(const RootSet& r);      // {"roots": [[re, im], ...], "tolerance": t}
Json to_json(const SymMatrix& a);    // {"n": n, "entries": [[[re, im], ...], ...]}
Json to_json(const MinorSpec& m);    // {"rows": [...], "cols": [...]}
Json to_json(const Certificate& c);
Json to_json(const IntersectionPoint& p);
Json to_json(const CensusReport& r);
Json to_json(const MleResult& r);
Json to_json(const OracleReport& r);

SymMatrix sym_matrix_from_json(const Json& j);

/// BigInt as a JSON number when it fits in 64 bits, decimal string otherwise.
Json big_int_to_json(const BigInt& v);

std::string matrix_to_csv(const SymMatrix& a);

} // namespace cyclemld

#endif
