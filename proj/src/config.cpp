#include "gliomorph/pipeline/config.hpp"

#include <fstream>

#include <json.hpp>

#include "gliomorph/error.hpp"

namespace gliomorph::pipeline {

namespace {

using nlohmann::ordered_json;

void parse_forest(const ordered_json& j, rsf::ForestParams& params) {
  if (!j.is_object()) fail(ErrorKind::Parse, "config: \"forest\" must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "n_trees") {
      params.n_trees = value.get<int>();
    } else if (key == "max_depth") {
      if (value.is_null())
        params.max_depth.reset();
      else
        params.max_depth = value.get<int>();
    } else if (key == "min_split") {
      params.min_split = value.get<int>();
    } else if (key == "min_leaf") {
      params.min_leaf = value.get<int>();
    } else if (key == "mtry") {
      if (value.is_null())
        params.mtry.reset();
      else
        params.mtry = value.get<int>();
    } else {
      fail(ErrorKind::Parse, "config: unknown forest key \"" + key + "\"");
    }
  }
}

}  // namespace

PipelineConfig read_pipeline_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config: " + path);
  ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "config " + path + ": " + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Parse, "config must be a JSON object");

  PipelineConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "atlas") {
        cfg.atlas = value.get<std::string>();
      } else if (key == "structure_map") {
        cfg.structure_map = value.get<std::string>();
      } else if (key == "subjects") {
        if (!value.is_array()) fail(ErrorKind::Parse, "config: \"subjects\" must be an array");
        for (const auto& s : value) {
          SubjectVolume sv;
          sv.id = s.at("id").get<std::string>();
          sv.path = s.at("volume").get<std::string>();
          for (const auto& [k, v] : s.items())
            if (k != "id" && k != "volume")
              fail(ErrorKind::Parse, "config: unknown subject key \"" + k + "\"");
          cfg.subjects.push_back(std::move(sv));
        }
      } else if (key == "cohort_csv") {
        cfg.cohort_csv = value.get<std::string>();
      } else if (key == "features_csv") {
        cfg.features_csv = value.get<std::string>();
      } else if (key == "output_dir") {
        cfg.output_dir = value.get<std::string>();
      } else if (key == "feature_sets") {
        cfg.feature_sets = value.get<std::vector<std::string>>();
      } else if (key == "forest") {
        parse_forest(value, cfg.forest);
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "repeats") {
        cfg.repeats = value.get<int>();
      } else if (key == "alpha") {
        cfg.alpha = value.get<double>();
      } else {
        fail(ErrorKind::Parse, "config: unknown key \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "config " + path + ": " + e.what());
  }
  return cfg;
}

}  // namespace gliomorph::pipeline
