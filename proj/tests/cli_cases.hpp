// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fixed CLI invocations with checked-in expected output. Paths inside argv
// are relative to the test data directory; "@svg" is replaced by a
// scratch file whose contents are compared against "<name>.svg".

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "command.hpp"

namespace hilbert_cone::testing {

struct CliCase {
  std::string name;
  std::vector<std::string> argv;
  int exit_code = 0;
};

inline std::vector<CliCase> cli_cases() {
  return {
      {"dist_collinear", {"dist", "[1,2,3]", "[2,4,6]"}},
      {"dist_files", {"dist", "a.json", "b.csv"}},
      {"dist_disjoint", {"dist", "[1,0]", "[0,1]"}},
      {"tau", {"tau", "[[2,1],[1,2]]"}},
      {"tau_kernel", {"tau-kernel", "gaussian_kernel.json"}},
      {"ball", {"ball", "[1,1,1]", "0.6931471805599453"}},
      {"tile", {"tile", "[1,1,1]", "0.5", "1", "--svg", "@svg"}},
      {"tile_theta", {"tile", "[1,2,3]", "0.25", "2", "--svg", "@svg", "--view", "theta"}},
      {"markov", {"markov", "chain.csv", "[0.9,0.1]", "10"}},
      {"bounds", {"bounds", "[0.2,0.3,0.5]", "[0.4,0.4,0.2]"}},
      {"bounds_disjoint", {"bounds", "[1,0,0]", "[0,0.5,0.5]"}},
      {"verify", {"verify", "[[2,1,0],[1,2,1],[0,1,3]]", "--trials", "1000", "--seed", "7"}},
  };
}

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
  std::string svg;
};

/// Runs a case in-process from the data directory.
inline CliRun run_cli_case(const CliCase& c, const std::filesystem::path& data_dir) {
  const auto svg_path =
      std::filesystem::temp_directory_path() / ("hilbert_cone_" + c.name + ".svg");
  std::vector<std::string> args{"hilbert-cone"};
  for (const auto& a : c.argv) args.push_back(a == "@svg" ? svg_path.string() : a);

  const auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(data_dir);
  std::ostringstream out, err;
  CliRun run;
  run.exit_code = cli::run_command(args, out, err);
  std::filesystem::current_path(cwd);
  run.out = out.str();
  run.err = err.str();
  if (std::filesystem::exists(svg_path)) {
    std::ifstream in(svg_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    run.svg = buf.str();
    std::filesystem::remove(svg_path);
  }
  return run;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream(p, std::ios::binary) << s;
}

/// Expected stdout is "<name>.out"; set HILBERT_CONE_UPDATE_GOLDEN=1 to
/// rewrite the files from the current build.
inline bool update_golden() {
  const char* v = std::getenv("HILBERT_CONE_UPDATE_GOLDEN");
  return v != nullptr && std::string(v) == "1";
}

}  // namespace hilbert_cone::testing
