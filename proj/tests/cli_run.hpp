#pragma once

// Subprocess helpers for driving the zkdesk binary.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#ifndef ZKDESK_CLI
#error "ZKDESK_CLI must point at the zkdesk binary"
#endif

namespace cli {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
};

/// Runs `zkdesk args` in `dir`, stdout captured, stderr dropped.
inline Run zk(const fs::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" ZKDESK_CLI "' " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

inline fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("zkdesk-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace cli
