// Runs the weylchar binary twice per case, requires identical stdout and
// the recorded exit code, and compares against the checked-in golden file.
// With --update the golden files are rewritten instead.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Captured {
  std::string out;
  int exit_code = -1;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Captured run(const std::string& command) {
  Captured c;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return c;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  const int status = pclose(pipe);
  c.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: golden_runner <weylchar> <golden-dir> <data-dir> [--update]\n";
    return 2;
  }
  const std::string binary = argv[1];
  const fs::path golden = argv[2];
  const std::string data = argv[3];
  const bool update = argc > 4 && std::string(argv[4]) == "--update";

  const auto cases = nlohmann::json::parse(slurp(golden / "cases.json"));
  int failures = 0;
  for (const auto& c : cases) {
    const std::string name = c["name"];
    std::string command = quote(binary) + " --data-dir " + quote(data);
    for (const auto& a : c["args"]) command += " " + quote(a.get<std::string>());
    command += " 2>/dev/null";
    const Captured first = run(command);
    const Captured second = run(command);
    const fs::path file = golden / "expected" / (name + ".out");
    std::string problem;
    if (first.out != second.out) problem = "output differs between two runs";
    else if (first.exit_code != c["exit"].get<int>())
      problem = "exit code " + std::to_string(first.exit_code) + ", expected " + std::to_string(c["exit"].get<int>());
    else if (update) std::ofstream(file, std::ios::binary) << first.out;
    else if (!fs::exists(file)) problem = "missing golden file " + file.string();
    else if (slurp(file) != first.out) problem = "output differs from " + file.string();
    std::cout << (problem.empty() ? "ok    " : "FAIL  ") << name << (problem.empty() ? "" : ": " + problem) << "\n";
    if (!problem.empty()) ++failures;
  }
  std::cout << cases.size() - static_cast<std::size_t>(failures) << "/" << cases.size() << " golden cases passed\n";
  return failures == 0 ? 0 : 1;
}
