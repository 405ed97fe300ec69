#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace macpoly::cli {

struct RunConfig {
  std::string command;
  std::string suite;  // verify only
  int n = 0;
  std::vector<std::string> lambdas;  // each a comma list
  std::string mu;
  std::optional<std::string> k;
  std::optional<int> K;
  std::optional<int> N;
  std::string mode;
  std::string format = "json";
  std::optional<std::string> cache_dir;
  int jobs = 1;
  std::optional<double> tol;
  bool stats = false;
  bool compare_weyl_kac = false;
  std::string convention = "native";
  int max_size = 4;
  // elliptic
  std::string fn;
  std::string x;
  std::string zeta;
  std::string tau = "1i";
  double fd_step = 1e-4;
};

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInvalidInput = 2, kInternal = 3 };

// Parses argv and dispatches; payload to out, logs and error JSON to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_macdonald(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_jack(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_affine(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_elliptic(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace macpoly::cli
