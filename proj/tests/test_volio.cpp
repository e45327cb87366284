#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gliomorph/error.hpp"
#include "gliomorph/pipeline/synth.hpp"
#include "gliomorph/volio/csv.hpp"
#include "gliomorph/volio/label_volume.hpp"
#include "gliomorph/volio/nifti.hpp"
#include "gliomorph/volio/structure_map.hpp"
#include "helpers.hpp"

using namespace gliomorph;
using namespace gliomorph::volio;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("label volume stores and validates") {
  LabelVolume v({2, 3, 4}, {1.0, 1.0, 2.0});
  CHECK(v.dims() == std::array<int, 3>{2, 3, 4});
  CHECK(v.voxel_volume_mm3() == doctest::Approx(2.0));
  v.set(1, 2, 3, 9);
  CHECK(v.at(1, 2, 3) == 9);
  CHECK(v.at(0, 0, 0) == 0);
  CHECK_THROWS_AS(v.at(2, 0, 0), Error);
  CHECK_THROWS_AS(LabelVolume({0, 1, 1}, {1, 1, 1}), Error);
  CHECK_THROWS_AS(LabelVolume({1, 1, 1}, {0, 1, 1}), Error);
}

TEST_CASE("nifti smallest well-formed file round-trips") {
  auto path = testutil::temp_path("tiny.nii");
  LabelVolume v({1, 1, 1}, {1.0, 1.0, 1.0});
  v.set(0, 0, 0, 7);
  write_nifti(path, v);
  auto r = read_nifti(path);
  CHECK(r.dims() == std::array<int, 3>{1, 1, 1});
  CHECK(r.spacing() == std::array<double, 3>{1.0, 1.0, 1.0});
  CHECK(r.at(0, 0, 0) == 7);
}

TEST_CASE("nifti reader agrees with an independent reference writer") {
  std::array<int, 3> dims{16, 16, 16};
  std::vector<std::int16_t> values(16 * 16 * 16, 0);
  auto flat = [&](int x, int y, int z) { return x + 16 * (y + 16 * z); };
  values[flat(3, 4, 5)] = 2;
  values[flat(0, 0, 0)] = 1;
  values[flat(15, 15, 15)] = 3;

  for (bool big_endian : {false, true}) {
    CAPTURE(big_endian);
    auto path = testutil::temp_path(big_endian ? "ref_be.nii" : "ref_le.nii");
    testutil::write_reference_nifti_int16(path, dims, {0.5f, 1.0f, 2.0f}, values, big_endian);
    auto v = read_nifti(path);
    CHECK(v.dims() == dims);
    CHECK(v.spacing()[0] == doctest::Approx(0.5));
    CHECK(v.spacing()[2] == doctest::Approx(2.0));
    CHECK(v.at(3, 4, 5) == 2);
    CHECK(v.at(0, 0, 0) == 1);
    CHECK(v.at(15, 15, 15) == 3);
    CHECK(v.at(1, 1, 1) == 0);
  }
}

TEST_CASE("nifti writer round-trips every supported datatype") {
  for (std::int32_t top_label : {200, 40000, 100000}) {
    CAPTURE(top_label);
    LabelVolume v({3, 2, 2}, {0.5, 0.5, 0.5});
    v.set(0, 0, 0, top_label);
    v.set(2, 1, 1, 5);
    auto path = testutil::temp_path("dtype.nii");
    write_nifti(path, v);
    auto r = read_nifti(path);
    CHECK(r.at(0, 0, 0) == top_label);
    CHECK(r.at(2, 1, 1) == 5);
    CHECK(r.at(1, 0, 0) == 0);
  }
}

TEST_CASE("nifti rejects what it does not support") {
  auto path = testutil::temp_path("bad.nii");

  // 4D volume: dim[0] = 4
  {
    std::vector<unsigned char> hdr(352, 0);
    hdr[0] = 92;  // sizeof_hdr little-endian 348 = 0x15c
    hdr[1] = 1;
    hdr[40] = 4;  // dim[0] = 4
    hdr[344] = 'n';
    hdr[345] = '+';
    hdr[346] = '1';
    std::ofstream(path, std::ios::binary)
        .write(reinterpret_cast<const char*>(hdr.data()), 352);
    CHECK_THROWS_WITH_AS(read_nifti(path), doctest::Contains("unsupported error"), Error);
  }

  // bad magic
  {
    std::vector<unsigned char> hdr(352, 0);
    hdr[0] = 92;
    hdr[1] = 1;
    hdr[40] = 3;
    hdr[344] = 'x';
    std::ofstream(path, std::ios::binary)
        .write(reinterpret_cast<const char*>(hdr.data()), 352);
    CHECK_THROWS_WITH_AS(read_nifti(path), doctest::Contains("format error"), Error);
  }

  // truncated payload
  {
    LabelVolume v({4, 4, 4}, {1, 1, 1});
    v.set(0, 0, 0, 1);
    write_nifti(path, v);
    std::error_code ec;
    std::filesystem::resize_file(path, 360, ec);
    REQUIRE(!ec);
    CHECK_THROWS_WITH_AS(read_nifti(path), doctest::Contains("io error"), Error);
  }

  CHECK_THROWS_AS(read_nifti(testutil::temp_path("missing_file.nii")), Error);
}

TEST_CASE("structure map default covers the expected anatomy") {
  auto m = StructureMap::default_map();
  CHECK(m.structures.size() == 26);
  int components = 0;
  for (auto& t : m.tumor_labels)
    if (t) ++components;
  CHECK(components == 4);
  CHECK(m.find_structure("brain_stem") != nullptr);
  CHECK(m.find_structure("left_hippocampus") != nullptr);
  CHECK(m.find_structure("no_such_structure") == nullptr);
}

TEST_CASE("structure map json round-trip and validation") {
  auto path = testutil::temp_path("map.json");
  write_structure_map(path, StructureMap::default_map());
  auto m = read_structure_map(path);
  CHECK(m.structures.size() == 26);
  CHECK(m.structures[0].name == StructureMap::default_map().structures[0].name);

  write_text(path, R"({"structures": {"a": [5], "b": [5]}, "tumor_components": {}})");
  CHECK_THROWS_WITH_AS(read_structure_map(path), doctest::Contains("label 5"), Error);

  write_text(path, R"({"structures": {"a": [1]}, "tumor_components": {}, "extra": 1})");
  CHECK_THROWS_WITH_AS(read_structure_map(path), doctest::Contains("unknown key"), Error);

  // three structures only: a legal subset
  write_text(path,
             R"({"structures": {"a": [1], "b": [2], "c": [3]}, "tumor_components": {"edema": 10}})");
  auto small = read_structure_map(path);
  CHECK(small.structures.size() == 3);
  CHECK(small.present_tumor_labels() == std::vector<std::int32_t>{10});
}

TEST_CASE("cohort csv parses records and clinical columns") {
  auto path = testutil::temp_path("cohort.csv");
  write_text(path,
             "subject_id,time_months,event,age\n"
             "s1,10.0,1,60\n"
             "s2,12.5,0,71\n");
  auto cohort = read_cohort_csv(path);
  REQUIRE(cohort.records.size() == 2);
  CHECK(cohort.records[0].subject_id == "s1");
  CHECK(cohort.records[0].time_months == 10.0);
  CHECK(cohort.records[0].event);
  CHECK(!cohort.records[1].event);
  REQUIRE(cohort.clinical.columns() == std::vector<std::string>{"age"});
  CHECK(cohort.clinical.value(1, 0) == 71.0);
}

TEST_CASE("cohort csv rejects bad rows") {
  auto path = testutil::temp_path("cohort_bad.csv");

  write_text(path, "subject_id,time_months,event\ns1,-3,1\n");
  CHECK_THROWS_WITH_AS(read_cohort_csv(path), doctest::Contains("validation error"), Error);

  write_text(path, "subject_id,time_months,event\ns1,3,1\ns1,4,0\n");
  CHECK_THROWS_WITH_AS(read_cohort_csv(path), doctest::Contains("duplicate"), Error);

  write_text(path, "subject_id,time_months,event\ns1,3,2\n");
  CHECK_THROWS_AS(read_cohort_csv(path), Error);

  write_text(path, "subject_id,time_months,event,age\ns1,3,1,sixty\n");
  CHECK_THROWS_WITH_AS(read_cohort_csv(path), doctest::Contains("parse error"), Error);

  write_text(path, "id,time_months,event\ns1,3,1\n");
  CHECK_THROWS_AS(read_cohort_csv(path), Error);
}

TEST_CASE("missing clinical values: error by default, median imputation on request") {
  auto path = testutil::temp_path("cohort_na.csv");
  write_text(path,
             "subject_id,time_months,event,age\n"
             "s1,10,1,60\n"
             "s2,11,1,NA\n"
             "s3,12,0,70\n");
  CHECK_THROWS_AS(read_cohort_csv(path), Error);
  auto cohort = read_cohort_csv(path, MissingPolicy::ImputeMedian);
  CHECK(cohort.clinical.value(1, 0) == 65.0);  // median of {60, 70}
  auto kept = read_cohort_csv(path, MissingPolicy::Keep);
  CHECK(is_missing(kept.clinical.value(1, 0)));
}

TEST_CASE("synthetic cohort csv round-trip is exact") {
  pipeline::SynthParams params;
  params.n = 50;
  params.betas = {0.5, -0.25};
  params.seed = 123;
  auto cohort = pipeline::synth_cohort(params);

  auto fpath = testutil::temp_path("rt_features.csv");
  auto cpath = testutil::temp_path("rt_cohort.csv");
  write_table_csv(fpath, cohort.features);
  Cohort disk;
  disk.records = cohort.records;
  for (const auto& r : cohort.records) disk.clinical.add_row(r.subject_id, {});
  write_cohort_csv(cpath, disk);

  auto features2 = read_table_csv(fpath);
  auto cohort2 = read_cohort_csv(cpath);
  REQUIRE(features2.n_rows() == cohort.features.n_rows());
  CHECK(features2.columns() == cohort.features.columns());
  for (std::size_t i = 0; i < features2.n_rows(); ++i) {
    CHECK(features2.subject_ids()[i] == cohort.features.subject_ids()[i]);
    for (std::size_t j = 0; j < features2.n_cols(); ++j)
      CHECK(features2.value(i, j) == cohort.features.value(i, j));  // bit-exact
  }
  REQUIRE(cohort2.records.size() == cohort.records.size());
  for (std::size_t i = 0; i < cohort2.records.size(); ++i) {
    CHECK(cohort2.records[i].subject_id == cohort.records[i].subject_id);
    CHECK(cohort2.records[i].time_months == cohort.records[i].time_months);
    CHECK(cohort2.records[i].event == cohort.records[i].event);
  }
}

TEST_CASE("feature table missing cells survive a csv round-trip") {
  FeatureTable t{std::vector<std::string>{"a", "b"}};
  t.add_row("s1", {1.5, missing_value()});
  t.add_row("s2", {missing_value(), -2.25});
  auto path = testutil::temp_path("na_table.csv");
  write_table_csv(path, t);
  auto r = read_table_csv(path);
  CHECK(r.value(0, 0) == 1.5);
  CHECK(is_missing(r.value(0, 1)));
  CHECK(is_missing(r.value(1, 0)));
  CHECK(r.value(1, 1) == -2.25);
}

TEST_CASE("feature table enforces shape and uniqueness") {
  FeatureTable t{std::vector<std::string>{"a"}};
  t.add_row("s1", {1.0});
  CHECK_THROWS_AS(t.add_row("s1", {2.0}), Error);
  CHECK_THROWS_AS(t.add_row("s2", {1.0, 2.0}), Error);
  std::vector<std::string> dup = {"a", "a"};
  CHECK_THROWS_AS(FeatureTable{dup}, Error);
  CHECK(t.column_index("a") == 0);
  CHECK(t.column_index("zz") == -1);
}
