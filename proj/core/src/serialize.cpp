#include "wnl/serialize.hpp"

namespace wnl {

namespace {

Json profile_json(const ProfileIndex& index, std::size_t i) {
  Json counts = Json::array();
  for (auto c : index.counts(i)) counts.push_back(static_cast<int>(c));
  return counts;
}

Json rational_entry(const ProfileIndex& index, std::size_t i, const Rational& q) {
  Json e;
  e["profile"] = profile_json(index, i);
  e["num"] = q.get_num().get_str();
  e["den"] = q.get_den().get_str();
  return e;
}

Rational parse_rational(const Json& num, const Json& den) {
  Rational q(Integer(num.get<std::string>()), Integer(den.get<std::string>()));
  if (q.get_den() == 0) throw ContractViolation("json: zero denominator");
  q.canonicalize();
  return q;
}

std::size_t profile_slot(const ProfileIndex& index, const Json& profile) {
  const auto counts = profile.get<std::vector<int>>();
  return index.find(counts);
}

}  // namespace

Json to_json(const ExactSymVector& v) {
  Json j;
  j["n"] = v.parties();
  j["m"] = v.settings();
  Json entries = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) entries.push_back(rational_entry(v.index(), i, v[i]));
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const RealSymVector& v) {
  Json j;
  j["n"] = v.parties();
  j["m"] = v.settings();
  Json entries = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    Json e;
    e["profile"] = profile_json(v.index(), i);
    e["value"] = v[i];
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const BellFunctional& f) {
  Json j;
  Json alpha = Json::array();
  for (std::size_t i = 0; i < f.alpha.size(); ++i) {
    if (sgn(f.alpha[i]) != 0) alpha.push_back(rational_entry(*f.index, i, f.alpha[i]));
  }
  j["alpha"] = std::move(alpha);
  j["beta_num"] = f.beta.get_num().get_str();
  j["beta_den"] = f.beta.get_den().get_str();
  return j;
}

Json to_json(const PCritCertificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["m"] = cert.m;
  j["p_crit"] = cert.p_crit;
  j["angles"] = cert.angles;
  j["facet"] = to_json(cert.facet);
  j["verified"] = cert.verified;
  j["p_certified"] = static_cast<double>(cert.p_certified);
  Json w;
  w["status"] = cert.witness.status;
  w["iterations"] = cert.witness.iterations;
  w["pricing_rounds"] = cert.witness.pricing_rounds;
  w["columns"] = cert.witness.columns;
  w["primal_residual"] = cert.witness.primal_residual;
  w["dual_residual"] = cert.witness.dual_residual;
  Json support = Json::array();
  for (const auto& [ordinal, weight] : cert.witness.support) support.push_back({ordinal, weight});
  w["support"] = std::move(support);
  j["witness"] = std::move(w);
  return j;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["bound_valid"] = r.bound_valid;
  j["bound_attained"] = r.bound_attained;
  j["tight"] = r.tight;
  j["separates"] = r.separates;
  j["exact_max_num"] = r.exact_max.get_num().get_str();
  j["exact_max_den"] = r.exact_max.get_den().get_str();
  j["p_certified"] = static_cast<double>(r.p_certified);
  j["gap_at_pcrit"] = static_cast<double>(r.gap_at_pcrit);
  j["gap_below"] = static_cast<double>(r.gap_below);
  j["message"] = r.message;
  return j;
}

Json to_json(const DampingReport& r) {
  Json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["no_loss_deviation"] = r.no_loss_deviation;
  j["single_loss_deviation"] = r.single_loss_deviation;
  j["multi_loss_deviation"] = r.multi_loss_deviation;
  j["single_loss_sectors"] = r.single_loss_sectors;
  j["identity_deviation"] = r.identity_deviation;
  j["trace_deviation"] = r.trace_deviation;
  j["max_deviation"] = r.max_deviation();
  j["passed"] = r.passed;
  return j;
}

Json to_json(const PersistencyBound& b) {
  Json j;
  j["N"] = b.N;
  j["m"] = b.m;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  j["partial"] = b.partial;
  j["missing"] = b.missing;
  if (b.witness_n) {
    j["witness"] = {{"n", *b.witness_n}, {"p_crit", *b.witness_p}, {"source", to_string(*b.witness_source)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

ExactSymVector exact_sym_vector_from_json(const Json& j) {
  const auto index = ProfileIndex::make(j.at("n").get<int>(), j.at("m").get<int>());
  std::vector<Rational> values(index->size(), Rational(0));
  std::vector<char> seen(index->size(), 0);
  for (const auto& e : j.at("entries")) {
    const std::size_t slot = profile_slot(*index, e.at("profile"));
    if (seen[slot]) throw ContractViolation("json: duplicate profile");
    seen[slot] = 1;
    values[slot] = parse_rational(e.at("num"), e.at("den"));
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw ContractViolation("json: missing profiles");
  return ExactSymVector(index, std::move(values));
}

BellFunctional functional_from_json(const Json& j, int n, int m) {
  BellFunctional f = zero_functional(ProfileIndex::make(n, m));
  for (const auto& e : j.at("alpha")) f.alpha[profile_slot(*f.index, e.at("profile"))] = parse_rational(e.at("num"), e.at("den"));
  f.beta = parse_rational(j.at("beta_num"), j.at("beta_den"));
  return f;
}

Json family_report(int n) {
  const BellFunctional f = family_coefficients(n);
  const FamilyConstants fc = family_constants(n);
  auto rat = [](const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; };
  Json j;
  j["n"] = n;
  j["m"] = 2;
  j["degenerate"] = family_degenerate(n);
  j["w"] = rat(fc.w);
  j["functional"] = to_json(f);
  j["expression"] = format_functional(f);
  j["alpha_p"] = rat(family_alpha_p(n));
  j["alpha_q"] = rat(family_alpha_q(n));
  const Rational p = pcrit_family(n);
  j["p_crit"] = rat(p);
  j["p_crit_value"] = p.get_d();
  return j;
}

}  // namespace wnl
