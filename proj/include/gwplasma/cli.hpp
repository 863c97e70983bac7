#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gwplasma/law.hpp"

namespace gwplasma::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { kMeanz, kGcpf, kMc, kQuad, kVerifyAll, kSweep };
enum class Format { kPretty, kJson, kCsv };
enum class GcpfMode { kSeries, kVerify, kFixedPoint, kBetaInfinity };
enum class QuadMode { kRegular, kQPower, kGlued, kConjecture };

struct RunConfig {
  Command command = Command::kMeanz;
  std::vector<std::string> law_paths;
  std::uint32_t n = 2;
  std::uint32_t order = 8;
  std::uint32_t nmax = 8;
  std::optional<double> beta;
  std::uint64_t samples = 10000;
  std::uint32_t depth = 12;
  bool adaptive = false;
  std::uint64_t seed = 42;
  double tolerance = 1e-6;
  unsigned threads = 1;
  bool numeric_only = false;
  GcpfMode gcpf_mode = GcpfMode::kSeries;
  QuadMode quad_mode = QuadMode::kRegular;
  std::uint32_t q = 2;
  std::string costs = "zero";
  std::string occupancy_scale = "1";
  std::vector<double> beta_grid;
  Format format = Format::kPretty;
  std::string out_path;  // empty: stdout
};

// Exit code: 0 success, 1 failed verification or numerical error, 2 bad input.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// "beta,value,status" rows with status ok or pole.
std::string emit_sweep(const BranchingLaw& law, std::uint32_t n, const std::vector<double>& beta_grid);

// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv);

}  // namespace gwplasma::cli
