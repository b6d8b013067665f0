#pragma once

// Command-line front end: kernel, solve-bvp, solve-pde, spectrum, table,
// figure.

#include "rkhs/errors.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rkhs::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3, kIo = 4 };

class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// One --bc token such as d3@a: derivative order and location (a, b or a number).
struct BcToken {
  int order = 0;
  std::string where;
};

std::vector<BcToken> parse_bc(const std::string& text);

struct RunConfig {
  std::string command;
  std::optional<std::string> case_id;
  std::vector<int> m;
  std::optional<std::string> n;
  std::vector<double> dt;
  std::optional<double> t_final;
  std::optional<double> nu;
  std::optional<double> sigma;
  std::optional<std::pair<double, double>> interval;
  std::vector<BcToken> bc;
  std::optional<std::string> out;
  std::string format = "json";
  std::optional<std::string> table_id;
  std::optional<std::string> load;
  std::optional<std::string> snapshot;
  int snapshot_every = 0;
  unsigned threads = 0;
  bool dump = false;
  bool reorthogonalize = false;
  bool timing = false;
  bool self_test = false;
};

/// Throws UsageError naming the offending flag.
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping; args exclude the program name.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rkhs::cli
