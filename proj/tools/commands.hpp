#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace wnl::cli {

enum class Format { Csv, Json };

struct RunConfig {
  std::vector<int> n;
  std::vector<int> N;
  std::vector<int> m{2};
  std::vector<double> angles;
  bool pauli_zx = false;
  bool family_only = false;
  int grid = 0;
  int restarts = 4;
  int random_starts = 2;
  double refine_tol = 1e-6;
  std::uint64_t seed = 1;
  std::uint64_t vertex_cap = 5'000'000;
  std::map<int, int> lp_max_n{{2, 14}, {3, 9}, {4, 6}, {5, 4}, {6, 4}};
  double p = 0.0;
  Format format = Format::Csv;
  std::string out;
};

/// "4..14", "4,6,8", "5" or any comma-separated mix.
std::vector<int> parse_int_list(const std::string& text);
/// "2:14,3:9".
std::map<int, int> parse_int_map(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

int cmd_pcrit(const RunConfig& cfg, std::ostream& out);
int cmd_family(const RunConfig& cfg, std::ostream& out);
int cmd_facet(const RunConfig& cfg, std::ostream& out);
int cmd_table(const RunConfig& cfg, std::ostream& out);
int cmd_fig4(const RunConfig& cfg, std::ostream& out);
int cmd_channel_check(const RunConfig& cfg, std::ostream& out);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitCapacity = 2;

}  // namespace wnl::cli
