#include <fstream>
#include <iostream>

#ifdef WNL_CLI11_SINGLE_HEADER
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif

#include "commands.hpp"
#include "wnl/errors.hpp"

using namespace wnl::cli;

namespace {

struct Flags {
  std::string n, N, m, angles, lp_max_n, format;
};

void add_common(CLI::App* sub, RunConfig& cfg, Flags& flags) {
  sub->add_option("--n", flags.n, "party counts, e.g. 4..14 or 4,6,8");
  sub->add_option("--N", flags.N, "total party counts for persistency bounds");
  sub->add_option("--m", flags.m, "measurement settings per party (list or range)");
  sub->add_option("--grid", cfg.grid, "angle grid points on [0, pi); 0 picks a default per m");
  sub->add_option("--seed", cfg.seed, "seed for random restarts");
  sub->add_option("--restarts", cfg.restarts, "grid points refined by pattern search");
  sub->add_option("--random-starts", cfg.random_starts, "random starting points refined by pattern search");
  sub->add_option("--refine-tol", cfg.refine_tol, "smallest pattern-search step");
  sub->add_option("--vertex-cap", cfg.vertex_cap, "largest accepted number of vertex classes");
  sub->add_option("--lp-max-n", flags.lp_max_n, "largest LP party count per m, e.g. 2:14,3:9");
  sub->add_option("--angles", flags.angles, "fixed measurement angles, comma separated");
  sub->add_flag("--zx", cfg.pauli_zx, "use the Z and X observables (m = 2)");
  sub->add_flag("--family-only", cfg.family_only, "use only the closed-form family thresholds");
  sub->add_option("--p", cfg.p, "loss probability for channel-check");
  sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistency of nonlocality of W states"};
  app.require_subcommand(1);
  RunConfig cfg;
  Flags flags;

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&);
    Format format;
  };
  const Sub subs[] = {
      {"pcrit", "critical noise p_crit per (n, m)", cmd_pcrit, Format::Csv},
      {"family", "closed-form family of two-setting inequalities", cmd_family, Format::Json},
      {"facet", "LP certificate with the separating facet", cmd_facet, Format::Json},
      {"persistency-table", "lower bounds on persistency by N and m", cmd_table, Format::Csv},
      {"fig4", "lower and upper persistency bounds by N", cmd_fig4, Format::Csv},
      {"channel-check", "amplitude damping of W states", cmd_channel_check, Format::Json},
  };
  for (const auto& s : subs) add_common(app.add_subcommand(s.name, s.help), cfg, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInternal;
  }

  try {
    const Sub* chosen = nullptr;
    for (const auto& s : subs) {
      if (app.got_subcommand(s.name)) chosen = &s;
    }
    if (!flags.n.empty()) cfg.n = parse_int_list(flags.n);
    if (!flags.N.empty()) cfg.N = parse_int_list(flags.N);
    if (!flags.m.empty()) cfg.m = parse_int_list(flags.m);
    if (!flags.angles.empty()) cfg.angles = parse_double_list(flags.angles);
    if (!flags.lp_max_n.empty()) {
      for (const auto& [m, n] : parse_int_map(flags.lp_max_n)) cfg.lp_max_n[m] = n;
    }
    cfg.format = flags.format.empty() ? chosen->format : (flags.format == "json" ? Format::Json : Format::Csv);

    if (cfg.out.empty()) return chosen->run(cfg, std::cout);
    std::ofstream file(cfg.out);
    if (!file) {
      std::cerr << "wnl: cannot open " << cfg.out << '\n';
      return kExitInternal;
    }
    return chosen->run(cfg, file);
  } catch (const wnl::CapacityError& e) {
    std::cerr << "wnl: capacity: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "wnl: error: " << e.what() << '\n';
    return kExitInternal;
  }
}
