#include <gtest/gtest.h>

#include <random>

#include "fconv/report.hpp"
#include "instances.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace fconv;

namespace {

std::string error_text(const std::string& text) {
  try {
    parse_instance_text(text, "t.json");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

InstanceFile file_of(ESetSpec spec, std::string name) { return {std::move(name), std::move(spec), {}}; }

}  // namespace

TEST(ParseInstance, FreeOrbitAndFixedPoint) {
  const auto f = parse_instance_text(
      R"({"e_dim":1,"orbits":[{"stabilizer":[],"multiplicity":1},{"stabilizer":["1"],"multiplicity":1}]})");
  EXPECT_EQ(f.spec, inst::i2());
  EXPECT_TRUE(f.notes.empty());
}

TEST(ParseInstance, InstanceFilesOnDisk) {
  const std::string dir = FCONV_INSTANCE_DIR;
  EXPECT_EQ(parse_instance(dir + "/i1.json").spec, inst::i1());
  EXPECT_EQ(parse_instance(dir + "/i2.json").spec, inst::i2());
  EXPECT_EQ(parse_instance(dir + "/i3.json").spec, inst::i3());
  EXPECT_EQ(ESet(parse_instance(dir + "/i3.json").spec).size(), 11u);
  EXPECT_EQ(parse_instance(dir + "/i4.json").spec, inst::i4());
  EXPECT_EQ(parse_instance(dir + "/two_free_n1.json").spec, inst::two_free_n1());
  EXPECT_EQ(parse_instance(dir + "/two_free_n2.json").spec, inst::two_free_n2());
  EXPECT_EQ(parse_instance(dir + "/i3.json").name, "I3");
}

TEST(ParseInstance, RedundantGeneratorsAreNormalized) {
  const auto f = parse_instance_text(R"({"e_dim":2,"orbits":[{"stabilizer":["10","01","11"],"multiplicity":1}]})");
  EXPECT_EQ(f.spec.orbits[0].stabilizer, Subspace::full(2));
  ASSERT_EQ(f.notes.size(), 1u);
  EXPECT_NE(f.notes[0].find("orbits[0].stabilizer"), std::string::npos);
}

TEST(ParseInstance, ErrorsNameTheField) {
  EXPECT_NE(error_text(R"({"e_dim":2,"orbits":[{"stabilizer":["101"],"multiplicity":1}]})")
                .find("orbits[0].stabilizer[0]"),
            std::string::npos);
  EXPECT_NE(error_text(R"({"e_dim":2,"orbits":[{"stabilizer":[]},{"stabilizer":[],"multiplicity":0}]})")
                .find("orbits[1].multiplicity"),
            std::string::npos);
  EXPECT_NE(error_text(R"({"e_dim":2,"orbits":[{"stabilizer":["1x"]}]})").find("orbits[0].stabilizer[0]"),
            std::string::npos);
  EXPECT_NE(error_text(R"({"orbits":[]})").find("e_dim"), std::string::npos);
  EXPECT_NE(error_text(R"({"e_dim":1,"orbits":[]})").find("orbits"), std::string::npos);
  EXPECT_NE(error_text(R"({"e_dim":-1,"orbits":[]})").find("e_dim"), std::string::npos);
  EXPECT_NE(error_text("[1,2]").find("<root>"), std::string::npos);
}

TEST(ParseInstance, MalformedJsonReportsTheLine) {
  const auto w = error_text("{\n  \"e_dim\": 1,\n  \"orbits\": [\n    {\"stabilizer\": [}\n  ]\n}\n");
  EXPECT_NE(w.find("t.json:4:"), std::string::npos) << w;
}

TEST(ParseInstance, MissingFile) {
  EXPECT_FCONV_ERROR(parse_instance("/nonexistent/instance.json"), ErrorKind::parse_error);
}

TEST(EmitInstance, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 50; ++k) {
    InstanceFile f = file_of(oracle::random_spec(rng, 4, 40), "r" + std::to_string(k));
    f.spec.orbits.back().multiplicity = static_cast<unsigned>(k % 3 + 1);
    const auto back = parse_instance_text(emit_instance(f).dump());
    EXPECT_EQ(back.spec, f.spec);
    EXPECT_EQ(back.name, f.name);
    EXPECT_TRUE(back.notes.empty());
  }
}

TEST(Subspaces, CommaSeparatedBitstrings) {
  EXPECT_EQ(parse_subspace("", 2), Subspace(2));
  EXPECT_EQ(parse_subspace("10,01", 2), Subspace::full(2));
  EXPECT_EQ(parse_subspace("11", 2).to_string(), "<11>");
  EXPECT_FCONV_ERROR(parse_subspace("101", 2), ErrorKind::invalid_input);
  EXPECT_FCONV_ERROR(parse_subspace("10,", 2), ErrorKind::invalid_input);
}

TEST(Describe, DeskDimensions) {
  EXPECT_EQ(describe(file_of(inst::i1(), "I1"))["dim_F"], 4);
  EXPECT_EQ(describe(file_of(inst::i2(), "I2"))["dim_F"], 6);
  const auto d = describe(file_of(inst::i3(), "I3"));
  EXPECT_EQ(d["dim_F"], 52);
  EXPECT_EQ(d["strata"].size(), 5u);
  EXPECT_EQ(d["census"].size(), 25u);
  std::size_t labels = 0;
  for (const auto& c : d["census"]) labels += c["labels"].get<std::size_t>();
  EXPECT_EQ(labels, 52u);
  EXPECT_FALSE(describe_text(d).empty());
}

TEST(Verify, DeskInstancesPass) {
  for (const auto& [spec, name] : {std::pair{inst::i1(), "I1"}, std::pair{inst::i2(), "I2"},
                                   std::pair{inst::i4(), "I4"}, std::pair{inst::two_free_n1(), "two-free-n1"}}) {
    const auto r = verify(file_of(spec, name));
    for (const auto& c : r.checks) EXPECT_TRUE(c.pass) << name << " " << c.id << ": " << c.witness.value_or("");
    EXPECT_TRUE(r.pass());
  }
}

TEST(Verify, ReportIsDeterministicAndCarriesTheSeed) {
  VerifyOptions opt;
  opt.seed = 42;
  opt.random_triples = 500;
  const auto a = to_json(verify(file_of(inst::i2(), "I2"), opt)).dump();
  const auto b = to_json(verify(file_of(inst::i2(), "I2"), opt)).dump();
  EXPECT_EQ(a, b);
  const auto j = Json::parse(a);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(j["dim_F"], 6);
  EXPECT_EQ(j["status"], "pass");
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("id"));
    EXPECT_EQ(c["status"], "pass");
    EXPECT_FALSE(c.contains("witness"));
    EXPECT_FALSE(c.contains("elapsed_ms"));
  }
}

TEST(Verify, DimensionBound) {
  VerifyOptions opt;
  opt.max_dim = 51;
  EXPECT_FCONV_ERROR(verify(file_of(inst::i3(), "I3"), opt), ErrorKind::resource_limit);
}

TEST(Verify, FailingChecksAreReported) {
  VerificationReport r;
  r.checks.push_back({"a", true, 1, "", std::nullopt, 0});
  EXPECT_TRUE(r.pass());
  r.checks.push_back({"b", false, 1, "", std::string("witness"), 0});
  EXPECT_FALSE(r.pass());
  const auto j = to_json(r);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["checks"][1]["witness"], "witness");
  EXPECT_NE(to_text(r).find("FAIL b"), std::string::npos);
}

TEST(IdealReport, FreeOrbitOfZ2) {
  const auto j = ideal_report(file_of(inst::i2(), "I2"), Subspace(1), 0, Subspace::full(1));
  EXPECT_EQ(j["dim"], 2);
  EXPECT_EQ(j["matrices"].size(), 6u);
  for (const auto& m : j["matrices"]) {
    ASSERT_EQ(m["rows"].size(), 2u);
    for (const auto& row : m["rows"]) {
      ASSERT_EQ(row.size(), 2u);
      for (const auto& v : row) EXPECT_TRUE(v.is_number_integer() && v.get<long>() >= 0);
    }
  }
  EXPECT_FALSE(ideal_text(j).empty());
}

TEST(IdealReport, LineWithItself) {
  const auto l1 = parse_subspace("10", 2);
  EXPECT_EQ(ideal_report(file_of(inst::i3(), "I3"), l1, 0, l1)["dim"], 10);
}

TEST(IdealReport, UnknownOrbit) {
  EXPECT_FCONV_ERROR(ideal_report(file_of(inst::i2(), "I2"), Subspace(1), 1, Subspace(1)), ErrorKind::invalid_input);
  EXPECT_FCONV_ERROR(ideal_report(file_of(inst::i4(), "I4"), Subspace::full(2), 0, Subspace(2)),
                     ErrorKind::invalid_input);
}

TEST(CatalogReport, TableAndText) {
  const auto j = catalog_report(file_of(inst::i3(), "I3"));
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["entries"].size(), 10u);
  EXPECT_EQ(j["sum_of_squares"], 52);
  EXPECT_NE(catalog_text(j).find("complete"), std::string::npos);
  const auto i4 = catalog_report(file_of(inst::i4(), "I4"));
  EXPECT_EQ(i4["status"], "pass");
  EXPECT_EQ(i4["entries"][6]["dim"], 0);
}

TEST(CatalogReport, NeedsPlaneGroup) {
  EXPECT_FCONV_ERROR(catalog_report(file_of(inst::i2(), "I2")), ErrorKind::invalid_input);
}
