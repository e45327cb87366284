#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gliomorph/rsf/forest.hpp"

namespace gliomorph::pipeline {

struct SubjectVolume {
  std::string id;
  std::string path;
};

// JSON config shared by the CLI subcommands; every field is optional and
// individual flags override it. Relative paths are taken as written (the
// CLI does not rebase them against the config location).
struct PipelineConfig {
  std::string atlas;
  std::string structure_map;  // empty = built-in default map
  std::vector<SubjectVolume> subjects;
  std::string cohort_csv;
  std::string features_csv;
  std::string output_dir;
  std::vector<std::string> feature_sets;  // specs like "hd95+clinical"
  rsf::ForestParams forest;
  std::uint64_t seed = 0;
  int repeats = 100;
  double alpha = 0.05;
};

PipelineConfig read_pipeline_config(const std::string& path);

}  // namespace gliomorph::pipeline
