#ifndef ANISOSPEC_CLI_HPP
#define ANISOSPEC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace anisospec {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitNumerical = 2 };

struct RunConfig {
  std::string command;
  std::string input;
  std::string output = "-";
  std::string config;
  int bins = 256;
  std::string modes = "a,b,c";
  std::vector<double> isovalues;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000000;
  int workers = 1;
  // command specific
  bool split = false;
  std::string quadrics;
  int grid = 5;
  bool perturb = false;
  double amplitude = 1.0;
  bool random = false;
  int tri = 0;
  double value = 0.0;
  double tolerance = 0.0;
  std::string format;
};

/// Runs one command; args exclude the program name. Returns an ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace anisospec

#endif  // ANISOSPEC_CLI_HPP
