#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "pmpd/io.hpp"

using namespace pmpd;

TEST(Io, PointInstanceRoundTrip) {
  const Instance inst = random_instance(9, 7);
  const Instance back = io::instance_from_json(io::instance_json(inst));
  EXPECT_EQ(back.matrix(), inst.matrix());
  EXPECT_EQ(*back.coords(), *inst.coords());
  EXPECT_EQ(back.name(), inst.name());
}

TEST(Io, MatrixInstanceRoundTrip) {
  const Instance inst = fixtures::worked_example();
  const Instance back = io::instance_from_json(io::instance_json(inst));
  EXPECT_EQ(back.matrix(), inst.matrix());
  EXPECT_FALSE(back.coords());
}

TEST(Io, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "pmpd_io_test.json";
  const Instance inst = random_instance(10, 5);
  io::write_json_file(path.string(), io::instance_json(inst));
  EXPECT_EQ(io::load_instance(path.string()).matrix(), inst.matrix());
  std::filesystem::remove(path);
  EXPECT_THROW(io::load_instance(path.string()), Error);
}

TEST(Io, WalkRoundTrip) {
  for (const char* s : {"(d,2,3,4,5,1,d)", "(1,5,4,3,2,d,1)", "(1,5,4,3,1,2,1)"}) {
    const Walk w = parse_walk(s);
    EXPECT_EQ(io::walk_from_json(io::walk_json(w)), w);
  }
}

TEST(Io, MalformedInput) {
  auto code = [](const io::json& j) {
    try {
      io::instance_from_json(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::too_large;
  };
  EXPECT_EQ(code(io::json::parse(R"({"depot": [0, 0]})")), ErrorCode::malformed_input);
  EXPECT_EQ(code(io::json::parse(R"({"depot": [0], "targets": []})")), ErrorCode::malformed_input);
  EXPECT_EQ(code(io::json::parse(R"({"depot": [0, 0], "targets": [[1, 0], [2, 0]]})")), ErrorCode::too_few_nodes);
  EXPECT_THROW(io::walk_from_json(io::json::parse(R"({"visits": ["x", 1, "d"]})")), Error);
  EXPECT_THROW(io::walk_from_json(io::json::parse(R"({"visits": ["d", 1, "d"], "kind": "other"})")), Error);
}

TEST(Io, BuildJsonFields) {
  const Instance inst = fixtures::worked_example();
  const auto j = io::build_json(build(compute_seeds(inst), inst, 38));
  for (const char* key : {"walk", "ub", "lb", "gap_pct", "scheme", "r1", "r2", "r2_alt", "r3"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_TRUE(j["r1"].is_null());
  EXPECT_EQ(j["scheme"], "H2");
}
