#include "tripdc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tripdc {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
}

void CsvTable::add_metadata(const std::string& key, const std::string& value) {
  metadata_.emplace_back(key, value);
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size())
    throw std::invalid_argument("CsvTable: row width mismatch");
  rows_.push_back(row);
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (const auto& [k, v] : metadata_) os << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
  return os.str();
}

void CsvTable::write(const std::string& path) const { write_text_file(path, to_string()); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string RunConfig::canonical_json() const {
  // path-independent canonical form: out_dir never changes the data, so it
  // stays out of the hash and identical configs give byte-identical files
  nlohmann::ordered_json j;
  j["command"] = command;
  j["np0"] = np0;
  j["ns0"] = ns0;
  if (nsbar0) j["nsbar0"] = *nsbar0;
  if (alpha_sq) j["alpha_sq"] = *alpha_sq;
  j["z_grid"] = {format_double(z_lo), format_double(z_hi), format_double(z_step)};
  nlohmann::ordered_json thetas = nlohmann::ordered_json::array();
  for (double t : theta_list) thetas.push_back(format_double(t));
  j["theta"] = thetas;
  j["tau_max"] = format_double(tau_max);
  j["dtau"] = format_double(dtau);
  j["tail_eps"] = format_double(tail_eps);
  j["format"] = format;
  j["seed"] = seed;
  return j.dump();
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical_json()); }

std::vector<double> RunConfig::z_grid() const {
  if (!(z_step > 0) || z_hi < z_lo)
    throw std::invalid_argument("RunConfig: bad z grid (field z-grid)");
  std::vector<double> zs;
  for (int i = 0;; ++i) {
    const double z = z_lo + i * z_step;
    if (z > z_hi + 1e-12) break;
    zs.push_back(std::min(z, z_hi));
  }
  return zs;
}

std::vector<double> RunConfig::tau_grid() const {
  if (!(dtau > 0) || !(tau_max > 0))
    throw std::invalid_argument("RunConfig: bad tau grid (fields tau-max/dtau)");
  std::vector<double> taus;
  for (int i = 0;; ++i) {
    const double t = i * dtau;
    if (t > tau_max + 1e-12) break;
    taus.push_back(t);
  }
  return taus;
}

TruncationPolicy RunConfig::policy() const {
  TruncationPolicy p;
  p.tail_epsilon = tail_eps;
  p.validate();
  return p;
}

}  // namespace tripdc
