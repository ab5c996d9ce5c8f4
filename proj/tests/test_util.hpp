#pragma once

// Shared helpers for the test binaries: random states, matrix comparison and
// a child-process runner for CLI checks.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qpt/matrix.hpp"
#include "qpt/rng.hpp"

namespace qpt::test {

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols,
                            RandomSource& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = Complex(rng.next_normal(), rng.next_normal());
  return m;
}

// Normalized Ginibre state: full rank with probability 1.
inline Matrix random_density(Eigen::Index dim, RandomSource& rng) {
  const Matrix g = random_matrix(dim, dim, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

inline Vector random_ket(Eigen::Index dim, RandomSource& rng) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = Complex(rng.next_normal(), rng.next_normal());
  v.normalize();
  return v;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the tomography CLI with the given arguments, capturing stdout.
inline CliResult run_cli(const std::string& args) {
  namespace fs = std::filesystem;
  static int counter = 0;
  const fs::path out_path =
      fs::temp_directory_path() /
      ("qpt_cli_out_" + std::to_string(++counter) + ".txt");
  const std::string cmd =
      std::string(QPT_CLI_PATH) + " " + args + " > " + out_path.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = (raw == -1) ? -1 : WEXITSTATUS(raw);
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  fs::remove(out_path);
  return r;
}

inline std::filesystem::path fresh_temp_dir(const std::string& tag) {
  static int counter = 0;
  const auto p = std::filesystem::temp_directory_path() /
                 ("qpt_test_" + tag + "_" + std::to_string(++counter));
  std::filesystem::create_directories(p);
  return p;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qpt::test
