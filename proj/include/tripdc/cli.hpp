#pragma once

#include <string>
#include <vector>

#include "tripdc/io.hpp"

namespace tripdc {

/// Subcommand runners; each writes its output files under cfg.out_dir and
/// returns a JSON summary (also used by tests). All output is deterministic
/// for a fixed config.
std::string run_evolve(const RunConfig& cfg);
std::string run_analytic(const RunConfig& cfg);
std::string run_logneg(const RunConfig& cfg);
std::string run_holevo(const RunConfig& cfg);
std::string run_graybody(const RunConfig& cfg);
std::string run_page(const RunConfig& cfg);

/// Oracle-equivalence self-checks; prints one pass/fail line per check to
/// `out` and returns the number of failures.
int run_selftest(std::string& out);

/// Full command-line entry point.
int run_cli(const std::vector<std::string>& args);

}  // namespace tripdc
