#include <doctest.h>

#include <filesystem>
#include <string>

#include "mtf/json_io.hpp"
#include "mtf/verify.hpp"

using namespace mtf;

namespace {

const std::string kForestText = R"({"schema":"mtf.forest/1","d":2,"trees":[{"color":1,"children":[{"color":2,"children":[]}]}]})";

std::string law_path(const char* name) { return (std::filesystem::path(MTF_DATA_DIR) / "laws" / name).string(); }

}  // namespace

TEST_CASE("forest documents round trip") {
  const TypedForest f = forest_from_json(Json::parse(kForestText));
  CHECK(f.size() == 2);
  CHECK(f.color(0) == 0);
  CHECK(f.color(1) == 1);
  CHECK(forest_to_json(f).dump() == kForestText);
}

TEST_CASE("coding documents round trip") {
  const TypedForest f = forest_from_json(Json::parse(kForestText));
  const CodingSequence x = encode(f);
  const Json j = coding_to_json(x, f.root_types());
  CHECK(j["root_types"] == Json::array({1}));
  const CodingDocument doc = coding_from_json(Json::parse(render(j)));
  CHECK(doc.x == x);
  CHECK(doc.root_types == f.root_types());
}

TEST_CASE("law documents round trip") {
  const OffspringLaw law = desk_laws().critical;
  const Json j = law_to_json(law);
  CHECK(j["nu"][0]["1,1"] == "1/4");
  CHECK(law_from_json(Json::parse(render(j))) == law);
}

TEST_CASE("signature documents round trip") {
  SignatureDocument doc;
  doc.sig = Signature{{1, 0}, {2, 1}, IntMatrix::square(2)};
  doc.sig.offdiag(0, 1) = 1;
  doc.census = Census{{{0, {1, 0}}, 1}, {{0, {0, 1}}, 1}, {{1, {0, 0}}, 1}};
  const SignatureDocument back = signature_from_json(Json::parse(render(signature_to_json(doc))));
  CHECK(back.sig == doc.sig);
  CHECK(back.census == doc.census);
  CHECK(!back.indegree.has_value());
}

TEST_CASE("schema and shape errors") {
  CHECK_THROWS_AS(forest_from_json(Json::parse(R"({"d":2,"trees":[]})")), SchemaError);
  CHECK_THROWS_AS(forest_from_json(Json::parse(R"({"schema":"mtf.forest/2","d":2,"trees":[]})")), SchemaError);
  CHECK_THROWS_AS(law_from_json(Json::parse(kForestText)), SchemaError);
  CHECK_THROWS_AS(forest_from_json(Json::parse(R"({"schema":"mtf.forest/1","d":"2","trees":[]})")), SchemaError);
  CHECK_THROWS_AS(
      coding_from_json(Json::parse(R"({"schema":"mtf.coding/1","d":1,"lengths":[2],"increments":[[[-1]]]})")),
      SchemaError);
  CHECK_THROWS_AS(law_from_json(Json::parse(R"({"schema":"mtf.law/1","d":2,"nu":[{"0":"1/1"},{"0,0":"1/1"}]})")),
                  SchemaError);
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("1,0,2") == IntVec{1, 0, 2});
  CHECK(parse_int_list("") == IntVec{});
  CHECK(format_int_list({3, -1}) == "3,-1");
  CHECK_THROWS_AS(parse_int_list("1,,2"), InvalidArgument);
  CHECK_THROWS_AS(parse_int_list("1,a"), InvalidArgument);
}

TEST_CASE("golden law files match the built-in laws") {
  const DeskLaws laws = desk_laws();
  CHECK(law_from_json(read_json_file(law_path("critical.json"))) == laws.critical);
  CHECK(law_from_json(read_json_file(law_path("subcritical.json"))) == laws.subcritical);
  CHECK(law_from_json(read_json_file(law_path("reducible.json"))) == laws.reducible);
  CHECK(law_from_json(read_json_file(law_path("childless_type2.json"))) == laws.childless_type2);
  CHECK(law_from_json(read_json_file(law_path("type2_only.json"))) == laws.type2_only);
  CHECK(law_from_json(read_json_file(law_path("binary.json"))) == laws.binary);
  const DeskLaws loaded = load_desk_laws((std::filesystem::path(MTF_DATA_DIR) / "laws").string());
  CHECK(loaded.critical == laws.critical);
}
