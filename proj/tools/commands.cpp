#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "wnl/bellfamily.hpp"
#include "wnl/channels.hpp"
#include "wnl/persistency.hpp"
#include "wnl/polytope.hpp"
#include "wnl/serialize.hpp"

namespace wnl::cli {

namespace {

std::string fixed(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

SearchConfig search_config(const RunConfig& cfg) {
  SearchConfig sc;
  sc.grid = cfg.grid;
  sc.restarts = cfg.restarts;
  sc.random_starts = cfg.random_starts;
  sc.refine_tol = cfg.refine_tol;
  sc.seed = cfg.seed;
  sc.vertices.class_cap = cfg.vertex_cap;
  return sc;
}

// LP certificate for one (n, m) cell according to the angle flags.
PCritCertificate lp_cell(int n, int m, const RunConfig& cfg) {
  const SearchConfig sc = search_config(cfg);
  const VertexSet vertices(n, m, sc.vertices);
  if (cfg.pauli_zx || !cfg.angles.empty()) {
    std::vector<double> angles = cfg.angles;
    if (cfg.pauli_zx) {
      if (m != 2) throw ContractViolation("--zx needs m = 2");
      angles = {0.0, std::numbers::pi / 2};
    }
    if (static_cast<int>(angles.size()) != m) throw ContractViolation("--angles needs exactly m values");
    PCritSolver solver(vertices, sc.lp);
    return pcrit_at_angles(solver, MeasurementAngles(angles));
  }
  return optimize_angles(vertices, sc);
}

void progress(const std::string& msg) { std::cerr << "wnl: " << msg << '\n'; }

PCritEntry entry_from(const PCritCertificate& cert) {
  PCritEntry e;
  e.p = cert.p_crit;
  e.source = Provenance::LP;
  e.verified = cert.verified;
  e.angles = cert.angles;
  return e;
}

// On-demand LP thresholds for n <= n_max (odd n only if asked); cells beyond
// capacity are left as gaps with a note on stderr.
ThresholdSource lp_source(int m, int n_max, const RunConfig& cfg, bool odd_only) {
  return [m, n_max, &cfg, odd_only](int n, PCritTable& table) {
    if (n > n_max || (odd_only && n % 2 == 0)) return;
    const std::string cell = "n=" + std::to_string(n) + " m=" + std::to_string(m);
    try {
      const PCritCertificate cert = lp_cell(n, m, cfg);
      table.offer(n, entry_from(cert));
      progress(cell + " p_crit=" + fixed(cert.p_crit) + (cert.verified ? "" : " (not verified, excluded)"));
    } catch (const CapacityError& e) {
      progress(cell + ": " + e.what());
    } catch (const SolverError& e) {
      progress(cell + ": " + e.what());
    }
  };
}

int max_of(const std::vector<int>& v, int fallback) { return v.empty() ? fallback : *std::max_element(v.begin(), v.end()); }

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(part));
      continue;
    }
    const int lo = std::stoi(part.substr(0, dots));
    const int hi = std::stoi(part.substr(dots + 2));
    if (hi < lo) throw ContractViolation("empty range " + part);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::map<int, int> parse_int_map(const std::string& text) {
  std::map<int, int> out;
  for (const auto& part : split(text, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) throw ContractViolation("expected key:value in " + part);
    out[std::stoi(part.substr(0, colon))] = std::stoi(part.substr(colon + 1));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(std::stod(part));
  return out;
}

int cmd_pcrit(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n.empty()) throw ContractViolation("pcrit: --n is required");
  const int width = max_of(cfg.m, 2);
  int code = kExitOk;
  Json rows = Json::array();
  if (cfg.format == Format::Csv) {
    out << "n,m,p_crit,source";
    for (int j = 1; j <= width; ++j) out << ",angle_" << j;
    out << ",verified\n";
  }
  for (int m : cfg.m) {
    for (int n : cfg.n) {
      std::optional<PCritCertificate> cert;
      std::string source = "LP";
      double p = 0;
      std::vector<double> angles;
      bool verified = false;
      if (cfg.family_only) {
        if (m != 2 || n % 2 != 0) {
          progress("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": family covers even n, m = 2 only");
          source = "unsupported";
        } else {
          source = "family";
          p = pcrit_family(n).get_d();
          angles = {0.0, std::numbers::pi / 2};
          verified = true;
        }
      } else {
        try {
          cert.emplace(lp_cell(n, m, cfg));
          p = cert->p_crit;
          angles = cert->angles;
          verified = cert->verified;
        } catch (const CapacityError& e) {
          progress("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + e.what());
          source = "capacity";
          code = kExitCapacity;
        }
      }
      const bool has_value = source == "LP" || source == "family";
      if (cfg.format == Format::Csv) {
        out << n << ',' << m << ',' << (has_value ? fixed(p) : "") << ',' << source;
        for (int j = 0; j < width; ++j) out << ',' << (j < static_cast<int>(angles.size()) ? fixed(angles[j]) : "");
        out << ',' << (verified ? "true" : "false") << '\n';
      } else {
        Json row = cert ? to_json(*cert) : Json{{"n", n}, {"m", m}};
        row["source"] = source;
        if (!cert && has_value) {
          row["p_crit"] = p;
          row["angles"] = angles;
          row["verified"] = verified;
        }
        rows.push_back(std::move(row));
      }
    }
  }
  if (cfg.format == Format::Json) out << rows.dump(2) << '\n';
  return code;
}

int cmd_family(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n.empty()) throw ContractViolation("family: --n is required");
  if (cfg.format == Format::Csv) {
    out << "n,w,beta,alpha_p,alpha_q,p_crit,p_crit_value\n";
    for (int n : cfg.n) {
      const FamilyConstants fc = family_constants(n);
      const Rational p = pcrit_family(n);
      out << n << ',' << fc.w.get_str() << ',' << family_beta(n).get_str() << ',' << family_alpha_p(n).get_str()
          << ',' << family_alpha_q(n).get_str() << ',' << p.get_str() << ',' << fixed(p.get_d(), 12) << '\n';
    }
    return kExitOk;
  }
  Json rows = Json::array();
  for (int n : cfg.n) rows.push_back(family_report(n));
  out << (rows.size() == 1 ? rows[0] : rows).dump(2) << '\n';
  return kExitOk;
}

int cmd_facet(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n.size() != 1 || cfg.m.size() != 1) throw ContractViolation("facet: give exactly one --n and one --m");
  const int n = cfg.n.front();
  const int m = cfg.m.front();
  const SearchConfig sc = search_config(cfg);
  const VertexSet vertices(n, m, sc.vertices);
  const PCritCertificate cert = lp_cell(n, m, cfg);
  Json j = to_json(cert);
  j["expression"] = format_functional(cert.facet);
  j["verification"] = to_json(verify_certificate(cert, vertices, sc.lp));
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_table(const RunConfig& cfg, std::ostream& out) {
  const std::vector<int> Ns = cfg.N.empty() ? parse_int_list("2..20") : cfg.N;
  const int n_top = max_of(Ns, 2);
  std::vector<std::string> cells(Ns.size());
  for (int m : cfg.m) {
    PCritTable table = m == 2 ? family_table(n_top) : PCritTable(m);
    const auto it = cfg.lp_max_n.find(m);
    const int lp_top = cfg.family_only || it == cfg.lp_max_n.end() ? 0 : it->second;
    const ThresholdSource source = lp_source(m, lp_top, cfg, false);
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      cells[i] += ',';
      try {
        cells[i] += std::to_string(lower_bound(Ns[i], table, source, GapPolicy::Strict).lower);
      } catch (const GapError&) {
      }
    }
  }
  out << "N";
  for (int m : cfg.m) out << ",m=" << m;
  out << '\n';
  for (std::size_t i = 0; i < Ns.size(); ++i) out << Ns[i] << cells[i] << '\n';
  return kExitOk;
}

int cmd_fig4(const RunConfig& cfg, std::ostream& out) {
  const std::vector<int> Ns = cfg.N.empty() ? parse_int_list("2..50") : cfg.N;
  const int n_top = max_of(Ns, 2);
  PCritTable table = family_table(n_top);
  const auto it = cfg.lp_max_n.find(2);
  const int lp_top = cfg.family_only || it == cfg.lp_max_n.end() ? 0 : it->second;
  const ThresholdSource source = lp_source(2, lp_top, cfg, true);
  out << "N,lower,upper,partial\n";
  for (int N : Ns) {
    const PersistencyBound b = lower_bound(N, table, source, GapPolicy::Partial);
    out << N << ',' << b.lower << ',' << b.upper << ',' << (b.partial ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int cmd_channel_check(const RunConfig& cfg, std::ostream& out) {
  const std::vector<int> ns = cfg.n.empty() ? std::vector<int>{3} : cfg.n;
  Json rows = Json::array();
  bool ok = true;
  for (int n : ns) {
    const DampingReport r = verify_w_damping_identity(n, cfg.p);
    ok = ok && r.passed;
    rows.push_back(to_json(r));
  }
  out << (rows.size() == 1 ? rows[0] : rows).dump(2) << '\n';
  return ok ? kExitOk : kExitInternal;
}

}  // namespace wnl::cli
