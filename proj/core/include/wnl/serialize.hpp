#pragma once

// JSON forms of the library's value types. Rationals are written as decimal
// strings so arbitrarily large numerators survive any JSON reader.

#include <nlohmann/json.hpp>

#include "wnl/bellfamily.hpp"
#include "wnl/channels.hpp"
#include "wnl/persistency.hpp"
#include "wnl/polytope.hpp"

namespace wnl {

using Json = nlohmann::ordered_json;

Json to_json(const ExactSymVector& v);
Json to_json(const RealSymVector& v);
Json to_json(const BellFunctional& f);
Json to_json(const PCritCertificate& cert);
Json to_json(const VerificationReport& report);
Json to_json(const DampingReport& report);
Json to_json(const PersistencyBound& bound);

ExactSymVector exact_sym_vector_from_json(const Json& j);
/// Coefficients are placed in the (n, m) index named by the enclosing object.
BellFunctional functional_from_json(const Json& j, int n, int m);

/// Family report: coefficients, beta, alpha.P, alpha.Q and p_crit.
Json family_report(int n);

}  // namespace wnl
