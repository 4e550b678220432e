#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <variant>
#include <vector>

#include "xfam/family_io.hpp"
#include "xfam/rng.hpp"

using Catch::Matchers::ContainsSubstring;
using xfam::AnyFamily;
using xfam::Mask;
using xfam::SeqFamily;
using xfam::SetFamily;

namespace {

std::string data_path(const char* name) {
  return std::string(XFAM_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("parsing canonical set family documents") {
  AnyFamily any = xfam::parse_family(R"({"n":3,"sets":[[1,2],[1,2,3]]})");
  const SetFamily& fam = std::get<SetFamily>(any);
  CHECK(fam.ground_size() == 3);
  CHECK(fam.members() == std::vector<Mask>{3, 7});
  CHECK(xfam::serialize(fam) == R"({"n":3,"sets":[[1,2],[1,2,3]]})");
}

TEST_CASE("parsing canonical sequence family documents") {
  AnyFamily any = xfam::parse_family(R"({"m":3,"n":2,"seqs":[[1,2],[3,1]]})");
  const SeqFamily& fam = std::get<SeqFamily>(any);
  CHECK(fam.alphabet() == 3);
  CHECK(fam.length() == 2);
  CHECK(fam.members() == std::vector<std::uint32_t>{1, 6});
  CHECK(xfam::serialize(fam) == R"({"m":3,"n":2,"seqs":[[1,2],[3,1]]})");
}

TEST_CASE("non canonical input serializes canonically") {
  AnyFamily any = xfam::parse_family("{ \"sets\": [[3,1,2], [2,1]], \"n\": 3 }");
  CHECK(xfam::serialize(std::get<SetFamily>(any)) == R"({"n":3,"sets":[[1,2],[1,2,3]]})");
  AnyFamily empty = xfam::parse_family(R"({"n":2,"sets":[]})");
  CHECK(xfam::serialize(std::get<SetFamily>(empty)) == R"({"n":2,"sets":[]})");
}

TEST_CASE("set family parse errors carry locations") {
  CHECK_THROWS_WITH(xfam::parse_family(R"({"n":2,"sets":[[3]]})"),
                    ContainsSubstring("sets[0]") && ContainsSubstring("element 3 exceeds n=2"));
  CHECK_THROWS_WITH(xfam::parse_family(R"({"n":3,"sets":[[1],[2,1],[1,2]]})"),
                    ContainsSubstring("sets[2]") && ContainsSubstring("duplicate set {1,2}"));
  CHECK_THROWS_WITH(xfam::parse_family(R"({"n":3,"sets":[[1,1]]})"),
                    ContainsSubstring("duplicate element 1"));
  CHECK_THROWS_AS(xfam::parse_family(R"({"n":3,"sets":[[1],"x"]})"), xfam::FamilyParseError);
  CHECK_THROWS_WITH(xfam::parse_family(R"({"n":3,"sets":[[1]],"extra":0})"),
                    ContainsSubstring("unknown key \"extra\""));
  CHECK_THROWS_WITH(xfam::parse_family(R"({"sets":[[1]]})"), ContainsSubstring("missing key \"n\""));
  CHECK_THROWS_WITH(xfam::parse_family(R"({"n":3})"), ContainsSubstring("missing key \"sets\""));
  CHECK_THROWS_AS(xfam::parse_family(R"({"n":0,"sets":[]})"), xfam::FamilyParseError);
  CHECK_THROWS_AS(xfam::parse_family(R"({"n":25,"sets":[]})"), xfam::FamilyParseError);
  CHECK_THROWS_AS(xfam::parse_family(R"({"n":"3","sets":[]})"), xfam::FamilyParseError);
  CHECK_THROWS_AS(xfam::parse_family(R"({"n":3,"sets":3})"), xfam::FamilyParseError);
  CHECK_THROWS_AS(xfam::parse_family("[1,2]"), xfam::FamilyParseError);
  CHECK_THROWS_AS(xfam::parse_family("{\"n\":3,"), xfam::FamilyParseError);
}

TEST_CASE("sequence family parse errors") {
  CHECK_THROWS_WITH(xfam::parse_family(R"({"m":2,"n":2,"seqs":[[1,3]]})"),
                    ContainsSubstring("seqs[0]") && ContainsSubstring("outside alphabet [1, 2]"));
  CHECK_THROWS_WITH(xfam::parse_family(R"({"m":2,"n":2,"seqs":[[1,2],[1,2]]})"),
                    ContainsSubstring("seqs[1]") && ContainsSubstring("duplicate sequence"));
  CHECK_THROWS_WITH(xfam::parse_family(R"({"m":2,"n":2,"seqs":[[1]]})"),
                    ContainsSubstring("length 1"));
  CHECK_THROWS_AS(xfam::parse_family(R"({"m":1,"n":2,"seqs":[]})"), xfam::FamilyParseError);
  CHECK_THROWS_AS(xfam::parse_family(R"({"m":2,"n":2})"), xfam::FamilyParseError);
  CHECK_THROWS_WITH(xfam::parse_family(R"({"m":2,"n":2,"seqs":[],"sets":[]})"),
                    ContainsSubstring("unknown key \"sets\""));
}

TEST_CASE("documents with an m key are sequence families") {
  CHECK(std::holds_alternative<SeqFamily>(xfam::parse_family(R"({"m":2,"n":1,"seqs":[]})")));
  CHECK(std::holds_alternative<SetFamily>(xfam::parse_family(R"({"n":1,"sets":[]})")));
}

TEST_CASE("serialization round trips byte for byte") {
  xfam::SplitMix64 rng(0x10aDULL);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng.below(6));
    std::vector<Mask> members;
    for (int i = static_cast<int>(rng.below(10)); i > 0; --i)
      members.push_back(static_cast<Mask>(rng.below(std::uint64_t{1} << n)));
    SetFamily fam(n, std::move(members));
    std::string text = xfam::serialize(fam);
    AnyFamily back = xfam::parse_family(text);
    CHECK(std::get<SetFamily>(back) == fam);
    CHECK(xfam::serialize(std::get<SetFamily>(back)) == text);

    int m = 2 + static_cast<int>(rng.below(3));
    int len = 1 + static_cast<int>(rng.below(3));
    SeqFamily probe = SeqFamily::empty_family(m, len);
    std::vector<std::uint32_t> seqs;
    for (int i = static_cast<int>(rng.below(8)); i > 0; --i)
      seqs.push_back(static_cast<std::uint32_t>(rng.below(probe.universe_size())));
    SeqFamily sf(m, len, std::move(seqs));
    std::string stext = xfam::serialize(sf);
    AnyFamily sback = xfam::parse_family(stext);
    CHECK(std::get<SeqFamily>(sback) == sf);
    CHECK(xfam::serialize(std::get<SeqFamily>(sback)) == stext);
  }
}

TEST_CASE("loading families from disk") {
  AnyFamily any = xfam::load_family(data_path("principal_3_12.json"));
  CHECK(std::get<SetFamily>(any) == xfam::principal_family(3, xfam::mask_of({1, 2})));
  AnyFamily seq = xfam::load_family(data_path("seq_31.json"));
  CHECK(std::get<SeqFamily>(seq) == SeqFamily::from_vectors(3, 2, {{1, 2}, {3, 1}}));

  CHECK_THROWS_WITH(xfam::load_family(data_path("no_such_file.json")),
                    ContainsSubstring("no_such_file.json"));
  CHECK_THROWS_WITH(xfam::load_family(data_path("bad_element.json")),
                    ContainsSubstring("bad_element.json") &&
                        ContainsSubstring("element 3 exceeds n=2"));
  CHECK_THROWS_AS(xfam::load_family(data_path("malformed.json")), xfam::FamilyParseError);
}
