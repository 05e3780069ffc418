#pragma once

// Running the CLI from tests.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace test_support {

inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / (tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

// Exit status of `ihs_cli <args>`, stderr discarded.
inline int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + IHS_CLI_PATH + "\" " + args + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string data_file(const std::string& name) { return std::string(IHS_DATA_DIR) + "/" + name; }

}  // namespace test_support
