#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eikograph {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

/// Tolerances and knobs shared by the commands. A `--config` JSON object with
/// these key names overrides the defaults; explicit flags override both.
struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  double positivity_threshold = 1e-9;
  double check_tol = -1.0;  // negative: per-check default
  double bisection_tol = 1e-12;
  double picard_tol = 1e-8;
  std::size_t max_iter = 100;
  double band = -1.0;  // negative: 2 h_max
  double band_tol = 1e-12;
  double compare_tol = 1e-12;
  std::size_t levels = 3;
};

/// Seed from EIKOGRAPH_SEED when set and valid, else kDefaultSeed.
std::uint64_t default_seed();

/// Runs one command. Exit codes: 0 success or pass, 1 check failure,
/// 2 input error (diagnostic on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace eikograph
