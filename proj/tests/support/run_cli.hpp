#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace testsupport {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string read_all(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the built CLI binary with the given argument string, capturing stdout,
// stderr, and the exit code. `scratch` holds the capture files.
inline CliResult run_cli(const std::string& binary, const std::string& args,
                         const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  std::filesystem::path out_file = scratch / "cli_stdout.txt";
  std::filesystem::path err_file = scratch / "cli_stderr.txt";
  std::string cmd = "'" + binary + "' " + args + " >'" + out_file.string() +
                    "' 2>'" + err_file.string() + "'";
  int status = std::system(cmd.c_str());
  CliResult r;
  if (status == -1)
    r.exit_code = -1;
  else if (WIFEXITED(status))
    r.exit_code = WEXITSTATUS(status);
  else
    r.exit_code = 128;
  r.out = read_all(out_file);
  r.err = read_all(err_file);
  return r;
}

}  // namespace testsupport
