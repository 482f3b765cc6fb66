#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tripdc/fock.hpp"

namespace tripdc {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// FNV-1a 64-bit, used to stamp outputs with the effective-config hash.
std::uint64_t fnv1a64(std::string_view data);

/// Shortest round-trip decimal form of a double; stable across runs.
std::string format_double(double v);

/// CSV table with '#'-prefixed metadata lines, a header row, and
/// deterministic number formatting.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_metadata(const std::string& key, const std::string& value);
  void add_row(const std::vector<double>& row);
  std::string to_string() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::vector<std::vector<double>> rows_;
};

void write_text_file(const std::string& path, const std::string& text);

/// Parsed and normalized run configuration shared by the CLI subcommands.
/// Precedence: flags > config file > defaults.
struct RunConfig {
  std::string command;
  int np0 = 255;
  int ns0 = 0;
  std::optional<int> nsbar0{};
  std::optional<double> alpha_sq{};
  double z_lo = 0.0, z_hi = 0.99, z_step = 0.01;
  std::vector<double> theta_list{};
  double tau_max = 5.0;
  double dtau = 0.01;
  double tail_eps = 1e-12;
  std::string out_dir = ".";
  std::string format = "csv";  // csv|json
  std::uint64_t seed = 0;      // reserved; dynamics are deterministic

  std::string canonical_json() const;
  std::uint64_t hash() const;
  std::vector<double> z_grid() const;
  std::vector<double> tau_grid() const;
  TruncationPolicy policy() const;
};

}  // namespace tripdc
