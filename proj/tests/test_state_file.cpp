#include <doctest.h>

#include <random>

#include "entsort/error.hpp"
#include "entsort/state_file.hpp"
#include "entsort/states.hpp"

using namespace entsort;

TEST_CASE("serialize / parse / serialize is byte-identical") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    StateFile file;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < 6; ++k) {
      const std::size_t da = 2 + rng() % 3;
      const std::size_t db = 2 + rng() % 3;
      if (rng() % 2 == 0) file.states.push_back(to_record("p" + std::to_string(k), random_pure_state(da, db, rng())));
      else file.states.push_back(to_record("d" + std::to_string(k), random_density(da, db, rng())));
    }
    const std::string text = serialize(file);
    const StateFile back = parse_state_file(text);
    CHECK(serialize(back) == text);
    REQUIRE(back.states.size() == file.states.size());
    for (std::size_t k = 0; k < file.states.size(); ++k) CHECK(back.states[k].data == file.states[k].data);
  }
}

TEST_CASE("header and record layout") {
  StateFile file;
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0;
  file.states.push_back(to_record("zero", PureState(2, 2, v)));
  const std::string text = serialize(file);
  CHECK(text ==
        "{\"format\":\"entsort-states\",\"version\":\"1\"}\n"
        "{\"id\":\"zero\",\"kind\":\"pure\",\"dim_a\":2,\"dim_b\":2,"
        "\"data\":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}\n");
}

TEST_CASE("records convert back to valid states") {
  const DensityState rho = random_density(2, 3, 1);
  const AnyState back = to_state(to_record("r", rho));
  REQUIRE(std::holds_alternative<DensityState>(back));
  CHECK(std::get<DensityState>(back).matrix() == rho.matrix());

  StateRecord bad{"bad", StateKind::pure, 2, 2, {{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}};
  CHECK_THROWS_AS(to_state(bad), DomainError);
  bad.data.pop_back();
  CHECK_THROWS_AS(to_state(bad), DimensionError);
}

TEST_CASE("malformed files") {
  CHECK_THROWS_AS(parse_state_file(""), FormatError);
  CHECK_THROWS_AS(parse_state_file("{\"format\":\"other\"}\n"), FormatError);
  CHECK_THROWS_AS(parse_state_file("{\"format\":\"entsort-states\",\"version\":\"9\"}\n"), FormatError);
  const std::string header = "{\"format\":\"entsort-states\",\"version\":\"1\"}\n";
  CHECK(parse_state_file(header).states.empty());
  CHECK_THROWS_AS(parse_state_file(header + "not json\n"), FormatError);
  CHECK_THROWS_AS(parse_state_file(header + "{\"id\":\"x\",\"kind\":\"pure\",\"dim_a\":2,\"dim_b\":2,\"data\":[[1,0]]}\n"),
                  FormatError);
  CHECK_THROWS_AS(parse_state_file(header + "{\"id\":\"x\",\"kind\":\"weird\",\"dim_a\":1,\"dim_b\":1,\"data\":[[1,0]]}\n"),
                  FormatError);
  try {
    parse_state_file(header + "\n{\"id\":\"x\",\"kind\":\"pure\",\"dim_a\":1,\"dim_b\":1,\"data\":[1]}\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
  // Integer entries are accepted.
  const auto ok = parse_state_file(header + "{\"id\":\"x\",\"kind\":\"pure\",\"dim_a\":1,\"dim_b\":1,\"data\":[[1,0]]}\n");
  CHECK(ok.states.at(0).data.at(0) == Complex(1.0, 0.0));
}
