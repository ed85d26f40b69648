#pragma once

// Data-file ingestion and command dispatch for the weylchar tool.

#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "weylchar/charformula.hpp"
#include "weylchar/coxeter.hpp"
#include "weylchar/finite_groups.hpp"
#include "weylchar/fourier.hpp"

namespace weylchar::cli {

enum class Status { ok, mismatch, error };

struct RunReport {
  Status status = Status::ok;
  int exit_code = 0;
  std::string payload;
  std::vector<std::string> diagnostics;
  std::string output_path;  // empty: payload goes to stdout
};

/// Resolves relative paths against the referring file's directory, then
/// the working directory, then the data directory.
class Loader {
 public:
  explicit Loader(std::filesystem::path data_dir) : data_dir_(std::move(data_dir)) {}

  const std::filesystem::path& data_dir() const { return data_dir_; }
  std::filesystem::path resolve(const std::string& path, const std::filesystem::path& base = {}) const;

  /// A built-in name ("g2aff") or a datum file.
  AffineDatum datum(const std::string& name_or_path, const std::filesystem::path& base = {}) const;
  MSet group(const std::string& path, const std::filesystem::path& base = {}) const;
  RepData rep(const std::string& path, const std::filesystem::path& base = {}) const;
  FamilyData family(const std::string& path) const;
  SphericalAssignment assignment(const std::string& path, const std::string& gamma_override = {}) const;
  G2Expected expected(const std::string& path, std::string* gamma_path) const;

 private:
  std::filesystem::path data_dir_;
  mutable std::map<std::string, AffineDatum> datums_;
};

enum class DataKind { datum, group, rep, family, assignment };

using DataObject = std::variant<AffineDatum, MSet, RepData, FamilyData, SphericalAssignment>;

/// Loads and validates a file of the given kind.
DataObject load_data_file(const Loader& loader, const std::string& path, DataKind kind);

/// Parses argv, runs the subcommand and renders its output. Never throws.
RunReport parse_and_dispatch(int argc, const char* const* argv);

}  // namespace weylchar::cli
