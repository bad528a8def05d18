#include <cstring>
#include <filesystem>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace chyp;
using namespace chyp::test;
using Catch::Matchers::ContainsSubstring;

namespace {

bool bit_equal(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(Complexd) * std::size_t(a.size())) == 0;
}

std::string error_of(const std::string& text) {
  try {
    parse_group_file(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("group file round trip is bit exact", "[io]") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 4;
    GroupFile f;
    f.group.dim_n = n;
    f.group.generators.push_back({"a", random_isometry(n, 3.0, rng)});
    f.group.generators.push_back({"b", Isometry::trusted(random_isometry(n, 0.5, rng).matrix() * unit(1e-3 * t))});
    f.elements.push_back({"h", random_isometry(n, 1.0, rng)});
    const std::string text = serialize_group_file(f);
    const GroupFile back = parse_group_file(text);
    REQUIRE(back.group.generators.size() == 2);
    REQUIRE(back.elements.size() == 1);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(back.group.generators[i].name == f.group.generators[i].name);
      CHECK(bit_equal(back.group.generators[i].element.matrix(), f.group.generators[i].element.matrix()));
    }
    CHECK(bit_equal(back.elements[0].element.matrix(), f.elements[0].element.matrix()));
    CHECK(serialize_group_file(back) == text);
  }
}

TEST_CASE("every shipped fixture parses and round trips", "[io]") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(CHYP_FIXTURES)) {
    if (entry.path().extension() != ".json" || entry.path().filename() == "nonunitary.json") continue;
    ++seen;
    const GroupFile f = load_group_file(entry.path().string());
    const GroupFile back = parse_group_file(serialize_group_file(f));
    for (std::size_t i = 0; i < f.group.generators.size(); ++i)
      CHECK(bit_equal(f.group.generators[i].element.matrix(), back.group.generators[i].element.matrix()));
  }
  CHECK(seen >= 10);
}

TEST_CASE("fixture contents", "[io]") {
  const GroupFile lt = load_group_file(fixture("lt_family.json"));
  CHECK(lt.group.dim_n == 1);
  CHECK(lt.group.names() == std::vector<std::string>{"L0.5", "L1", "L2"});
  REQUIRE(lt.find("P0"));
  CHECK(classify_isometry(lt.find("P0")->element).tag == IsometryTag::Parabolic);
  CHECK(lt.find("missing") == nullptr);
  CHECK(load_group_file(fixture("trivial.json")).group.generators.empty());
}

TEST_CASE("malformed JSON reports a position", "[io]") {
  const std::string msg = error_of("{\n  \"dim_n\": 1,\n  \"generators\": [ oops ]\n}\n");
  CHECK_THAT(msg, ContainsSubstring("line 3"));
  CHECK_THAT(msg, ContainsSubstring("column"));
  CHECK_THROWS_AS(parse_group_file("{ \"dim_n\": 1, "), InputError);
}

TEST_CASE("schema violations are input errors", "[io]") {
  CHECK_THROWS_AS(parse_group_file("[]"), InputError);
  CHECK_THROWS_AS(parse_group_file(R"({"generators": []})"), InputError);
  CHECK_THROWS_AS(parse_group_file(R"({"dim_n": 0, "generators": []})"), InputError);
  CHECK_THROWS_AS(parse_group_file(R"({"dim_n": 1.5, "generators": []})"), InputError);
  CHECK_THROWS_AS(parse_group_file(R"({"dim_n": 1})"), InputError);
  CHECK_THROWS_AS(parse_group_file(R"({"schema_version": 9, "dim_n": 1, "generators": []})"), InputError);
  CHECK_THROWS_AS(parse_group_file(R"({"dim_n": 1, "generators": [{"matrix": []}]})"), InputError);
  CHECK_THAT(error_of(R"({"dim_n": 1, "generators": [{"name": "a", "matrix": [[[1,0],[0,0]]]}]})"),
             ContainsSubstring("2 rows"));
  CHECK_THAT(error_of(R"({"dim_n": 1, "generators": [{"name": "a", "matrix": [[[1,0],[0,0]],[[0,0],[1]]]}]})"),
             ContainsSubstring("entry (1,1)"));
  CHECK_THAT(error_of(R"({"dim_n": 1, "generators": [{"name": "a", "matrix": [[[1,0],[0,0]],[[0,0],"x"]]}]})"),
             ContainsSubstring("entry (1,1)"));
  const std::string id = R"([[[1,0],[0,0]],[[0,0],[1,0]]])";
  CHECK_THAT(error_of(R"({"dim_n": 1, "generators": [{"name": "a", "matrix": )" + id + R"(}],
                        "elements": [{"name": "a", "matrix": )" + id + "}]}"),
             ContainsSubstring("duplicate"));
}

TEST_CASE("non-unitary matrices carry the residual", "[io]") {
  try {
    load_group_file(fixture("nonunitary.json"));
    FAIL("expected NotUnitaryError");
  } catch (const NotUnitaryError& e) {
    CHECK(e.residual() == 3.0);
  }
  CHECK_THROWS_AS(load_group_file(fixture("does_not_exist.json")), InputError);
}

TEST_CASE("certificate JSON", "[io]") {
  Certificate c;
  c.kind = CertificateKind::NearIdentitySequence;
  c.narrative = "x";
  c.witnesses.push_back({"near-identity", Word(std::vector<Letter>{{0, 1}, {0, 1}, {1, -1}}), {0.25}});
  const auto j = to_json(c, {"a", "b"});
  CHECK(j["kind"] == "NearIdentitySequence");
  CHECK(j["witnesses"][0]["word"]["text"] == "a^2 b^-1");
  CHECK(j["witnesses"][0]["word"]["letters"].size() == 3);
  CHECK(j["witnesses"][0]["values"][0] == 0.25);
  const auto cfg = to_json(ToleranceConfig{}, NormKind::Frobenius);
  CHECK(cfg["norm"] == "frobenius");
  CHECK(cfg["tol_eig"] == 1e-5);
}
