#include "gliomorph/volio/structure_map.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "gliomorph/error.hpp"

namespace gliomorph::volio {

void StructureMap::validate() const {
  std::unordered_set<std::string> names;
  std::unordered_set<std::int32_t> seen;
  for (const auto& s : structures) {
    if (s.name.empty()) fail(ErrorKind::Validation, "structure with empty name");
    if (!names.insert(s.name).second)
      fail(ErrorKind::Validation, "duplicate structure name: " + s.name);
    if (s.labels.empty())
      fail(ErrorKind::Validation, "structure has no labels: " + s.name);
    for (auto l : s.labels) {
      if (l <= 0) fail(ErrorKind::Validation, "structure label must be positive: " + s.name);
      if (!seen.insert(l).second)
        fail(ErrorKind::Validation, "label " + std::to_string(l) + " appears more than once");
    }
  }
  for (int c = 0; c < 4; ++c) {
    if (tumor_labels[c]) {
      std::int32_t l = *tumor_labels[c];
      if (l <= 0) fail(ErrorKind::Validation, "tumor component label must be positive");
      if (!seen.insert(l).second)
        fail(ErrorKind::Validation, "label " + std::to_string(l) + " appears more than once");
    }
  }
}

const Structure* StructureMap::find_structure(const std::string& name) const {
  for (const auto& s : structures)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<std::int32_t> StructureMap::present_tumor_labels() const {
  std::vector<std::int32_t> out;
  for (int c = 0; c < 4; ++c)
    if (tumor_labels[c]) out.push_back(*tumor_labels[c]);
  return out;
}

StructureMap StructureMap::default_map() {
  StructureMap m;
  auto add = [&m](const char* name, std::initializer_list<std::int32_t> labels) {
    m.structures.push_back({name, std::vector<std::int32_t>(labels)});
  };
  add("left_accumbens", {26});
  add("right_accumbens", {58});
  add("left_amygdala", {18});
  add("right_amygdala", {54});
  add("brain_stem", {16});
  add("left_caudate", {11});
  add("right_caudate", {50});
  add("left_cerebellum_cortex", {8});
  add("right_cerebellum_cortex", {47});
  add("left_cerebral_cortex", {3});
  add("right_cerebral_cortex", {42});
  add("left_hippocampus", {17});
  add("right_hippocampus", {53});
  add("left_lateral_ventricle", {4});
  add("right_lateral_ventricle", {43});
  add("optic_chiasm", {85});
  add("left_pallidum", {13});
  add("right_pallidum", {52});
  add("left_putamen", {12});
  add("right_putamen", {51});
  add("left_thalamus", {10});
  add("right_thalamus", {49});
  add("left_ventral_dc", {28});
  add("right_ventral_dc", {60});
  add("third_ventricle", {14});
  add("fourth_ventricle", {15});
  m.tumor_labels[static_cast<int>(TumorComponent::Edema)] = 300;
  m.tumor_labels[static_cast<int>(TumorComponent::Enhancing)] = 301;
  m.tumor_labels[static_cast<int>(TumorComponent::NonEnhancing)] = 302;
  m.tumor_labels[static_cast<int>(TumorComponent::Cavity)] = 303;
  m.validate();
  return m;
}

StructureMap read_structure_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open structure map: " + path);
  nlohmann::ordered_json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, "structure map " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("structures") || !doc.contains("tumor_components"))
    fail(ErrorKind::Parse,
         "structure map must be an object with \"structures\" and \"tumor_components\"");
  for (const auto& [key, _] : doc.items()) {
    if (key != "structures" && key != "tumor_components")
      fail(ErrorKind::Parse, "structure map: unknown key \"" + key + "\"");
  }

  StructureMap m;
  const auto& st = doc["structures"];
  if (!st.is_object()) fail(ErrorKind::Parse, "\"structures\" must be an object");
  for (const auto& [name, labels] : st.items()) {
    if (!labels.is_array()) fail(ErrorKind::Parse, "labels for " + name + " must be an array");
    Structure s{name, {}};
    for (const auto& l : labels) {
      if (!l.is_number_integer()) fail(ErrorKind::Parse, "label for " + name + " must be an integer");
      s.labels.push_back(l.get<std::int32_t>());
    }
    std::sort(s.labels.begin(), s.labels.end());
    s.labels.erase(std::unique(s.labels.begin(), s.labels.end()), s.labels.end());
    m.structures.push_back(std::move(s));
  }

  const auto& tc = doc["tumor_components"];
  if (!tc.is_object()) fail(ErrorKind::Parse, "\"tumor_components\" must be an object");
  for (const auto& [name, label] : tc.items()) {
    int idx = -1;
    for (int c = 0; c < 4; ++c)
      if (name == kTumorComponentNames[c]) idx = c;
    if (idx < 0) fail(ErrorKind::Parse, "unknown tumor component \"" + name + "\"");
    if (!label.is_number_integer())
      fail(ErrorKind::Parse, "tumor component " + name + " must map to an integer label");
    if (m.tumor_labels[idx])
      fail(ErrorKind::Parse, "tumor component " + name + " given twice");
    m.tumor_labels[idx] = label.get<std::int32_t>();
  }

  m.validate();
  return m;
}

void write_structure_map(const std::string& path, const StructureMap& map) {
  map.validate();
  nlohmann::ordered_json doc;
  auto& st = doc["structures"] = nlohmann::ordered_json::object();
  for (const auto& s : map.structures) st[s.name] = s.labels;
  auto& tc = doc["tumor_components"] = nlohmann::ordered_json::object();
  for (int c = 0; c < 4; ++c)
    if (map.tumor_labels[c]) tc[kTumorComponentNames[c]] = *map.tumor_labels[c];
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write structure map: " + path);
  out << doc.dump(2) << "\n";
  if (!out) fail(ErrorKind::Io, "failed writing structure map: " + path);
}

}  // namespace gliomorph::volio
