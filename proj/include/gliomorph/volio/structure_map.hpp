#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gliomorph::volio {

// One named anatomical structure and the label values that belong to it.
struct Structure {
  std::string name;
  std::vector<std::int32_t> labels;  // sorted, unique, non-empty
};

// Tumor compartments tracked for volume features. Order is the serialized
// column order.
enum class TumorComponent : int { Edema = 0, Enhancing = 1, NonEnhancing = 2, Cavity = 3 };

inline constexpr std::array<const char*, 4> kTumorComponentNames = {
    "edema", "enhancing", "nonenhancing", "cavity"};

// Ordered mapping from names to label values. Structure label sets are
// pairwise disjoint and disjoint from tumor labels. Structure order defines
// feature column order downstream.
struct StructureMap {
  std::vector<Structure> structures;
  std::array<std::optional<std::int32_t>, 4> tumor_labels;

  // Throws a validation error on duplicate names, duplicate labels, or an
  // empty label set.
  void validate() const;

  const Structure* find_structure(const std::string& name) const;

  std::optional<std::int32_t> tumor_label(TumorComponent c) const {
    return tumor_labels[static_cast<int>(c)];
  }

  // All tumor labels that are present, in component order.
  std::vector<std::int32_t> present_tumor_labels() const;

  // The built-in map: 26 bilateral/midline brain structures plus the four
  // tumor compartments.
  static StructureMap default_map();
};

StructureMap read_structure_map(const std::string& path);
void write_structure_map(const std::string& path, const StructureMap& map);

}  // namespace gliomorph::volio
