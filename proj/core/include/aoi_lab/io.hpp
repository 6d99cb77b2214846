#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aoi_lab/bounds.hpp"
#include "aoi_lab/experiment.hpp"

namespace aoi_lab {

// Raised when an output path already exists and --force was not given.
class OverwriteRefused : public std::runtime_error {
 public:
  explicit OverwriteRefused(const std::string& path)
      : std::runtime_error("refusing to overwrite '" + path + "' (pass --force)") {}
};

// Fixed "%.12g" rendering so identical runs serialize byte-identically.
std::string format_double(double value);

// Header: policy,t,mean_regret,stderr,replications. Policies in map order.
std::string regret_curves_csv(const std::map<std::string, RegretCurve>& curves);

// Header: setting,policy,mean_regret,stderr,replications.
std::string regret_table_csv(const std::vector<RegretTableEntry>& entries);

std::string sha1_hex(std::string_view bytes);

// SHA-1 of "blob <size>\0<content>", the way git hashes file contents.
std::string git_blob_sha1(std::string_view content);

std::string config_json(const ExperimentConfig& config);

// Manifest describing one experiment run: config echo, seed, the bound report
// for the instance (or the reason it could not be evaluated), and a git-style
// content hash per output file.
struct OutputFileInfo {
  std::string sha1;
  std::size_t bytes = 0;
};
std::string manifest_json(const ExperimentConfig& config,
                          const std::map<std::string, OutputFileInfo>& outputs);

// JSON config document mirroring ExperimentConfig. Accepts either a "setting"
// key (builtin settings as the base) or an explicit "mu" array, plus optional
// overrides for the remaining fields.
ExperimentConfig load_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Write-once semantics: throws OverwriteRefused when the file exists and
// force is false.
void write_file(const std::string& path, std::string_view content, bool force);

std::string read_file(const std::string& path);

}  // namespace aoi_lab
