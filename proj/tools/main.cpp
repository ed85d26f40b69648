#include <fstream>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  const auto report = weylchar::cli::parse_and_dispatch(argc, argv);
  for (const auto& d : report.diagnostics) std::cerr << "weylchar: " << d << "\n";
  if (report.output_path.empty()) {
    std::cout << report.payload;
  } else if (!report.payload.empty()) {
    std::ofstream out(report.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "weylchar: cannot write " << report.output_path << "\n";
      return 3;
    }
    out << report.payload;
  }
  return report.exit_code;
}
