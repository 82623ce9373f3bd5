#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vz/asympt.hpp"
#include "vz/scalar.hpp"

namespace vz::cli {

struct RunConfig {
  std::string command;     ///< derive, roots, voronoi, measure, compare, potential, odecheck, lemniscate, render
  bool lemniscate_render = false;
  std::string problem;
  std::vector<int> n_list{10};
  bool has_window = false;
  Window window;
  int grid = 200;
  std::uint64_t seed = 1;
  Precision precision = Precision::Double;
  bool extended_retry = true;
  std::string out = ".";

  /// Throws Error(InvalidArgument).
  void validate() const;
};

/// "25" or "25,50,100".
std::vector<int> parse_n_list(const std::string& text);
/// "cx,cy,h".
Window parse_window(const std::string& text);

/// Runs one command and writes its files into config.out. Returns the exit status:
/// 0 on success, 1 for bad input, 2 for numeric failures.
int run(const RunConfig& config);

int main(int argc, char** argv);

}  // namespace vz::cli
