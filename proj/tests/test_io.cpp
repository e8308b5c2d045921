#include <catch2/catch_amalgamated.hpp>

#include "defmorph/io.hpp"
#include "support.hpp"

using namespace defmorph;

TEST_CASE("rational serialization") {
  REQUIRE(rat_from_json(Json(3)) == Rat(3));
  REQUIRE(rat_from_json(Json("-7/2")) == Rat(-7, 2));
  REQUIRE(rat_to_json(Rat(1, 3)).get<std::string>() == "1/3");
  REQUIRE_THROWS_AS(rat_from_json(Json(1.5)), ParseError);
}

TEST_CASE("series serialization round trip") {
  ArtinSeries s = ArtinSeries::zero_of_order(3);
  s.coeff_mut(1) = Rat(2);
  s.coeff_mut(3) = Rat(-1, 4);
  Json j = artin_to_json(s, 3);
  REQUIRE(j.size() == 4);
  ArtinSeries back = artin_from_json(j, 3);
  REQUIRE((back - s).is_zero());
  // Nonzero coefficients beyond the truncation order are rejected.
  Json too_long = Json::array({"0", "0", "0", "0", "5"});
  REQUIRE_THROWS_AS(artin_from_json(too_long, 3), ParseError);
}

TEST_CASE("algebra round trip") {
  for (const DGAlgebra& a : {corpus::null_algebra(), corpus::dual_square(),
                             corpus::two_step_dg()}) {
    Json j = algebra_to_json(a);
    DGAlgebra back = algebra_from_json(j);
    REQUIRE(algebra_to_json(back) == j);
    REQUIRE(back.dim() == a.dim());
    REQUIRE(validate_algebra(back).ok());
  }
}

TEST_CASE("algebra parse errors") {
  Json j = algebra_to_json(corpus::dual_square());
  Json missing = j;
  missing.erase("product");
  REQUIRE_THROWS_AS(algebra_from_json(missing), ParseError);
  Json bad_shape = j;
  bad_shape["product"][0].erase(1);
  REQUIRE_THROWS_AS(algebra_from_json(bad_shape), ParseError);
}

TEST_CASE("morphism round trip and orientation") {
  AlgebraMorphism p = corpus::projection();
  Json j = morphism_to_json(p);
  // One row per target basis element, one column per source element.
  REQUIRE(j.at("matrix").size() == 1);
  REQUIRE(j.at("matrix")[0].size() == 2);
  AlgebraMorphism back = morphism_from_json(j, p.source, p.target);
  REQUIRE(validate_morphism(back).ok());
  REQUIRE(morphism_to_json(back) == j);
  // Wrong orientation is a shape error.
  Json transposed;
  transposed["matrix"] = Json::array({Json::array({"1"}), Json::array({"0"})});
  REQUIRE_THROWS_AS(morphism_from_json(transposed, p.source, p.target),
                    ParseError);
}

TEST_CASE("solution round trip is byte-stable") {
  AlgebraMorphism m = AlgebraMorphism::identity(corpus::dual_square());
  Rng rng(61);
  MCSolution sol;
  sol.order = 3;
  sol.el = zero_series(1, sol.order, m);
  for (unsigned k = 1; k <= 3; ++k)
    sol.el += t_embed(random_gelement<Rat>(rng, 1, m, 3), k, sol.order, m);
  Json j = solution_to_json(sol);
  MCSolution back = solution_from_json(j, m);
  REQUIRE(back.order == sol.order);
  GElement<ArtinSeries> diff = back.el - sol.el;
  REQUIRE(diff.is_zero());
  std::string once = j.dump(2);
  std::string twice = solution_to_json(back).dump(2);
  REQUIRE(once == twice);
}

TEST_CASE("shipped example files parse and validate") {
  DGAlgebra null_a = algebra_from_json(read_json_file("data/null_algebra.json"));
  DGAlgebra dual = algebra_from_json(read_json_file("data/dual_square.json"));
  DGAlgebra tgt =
      algebra_from_json(read_json_file("data/projection_target.json"));
  REQUIRE(validate_algebra(null_a).ok());
  REQUIRE(validate_algebra(dual).ok());
  AlgebraMorphism proj = morphism_from_json(
      read_json_file("data/projection_morphism.json"), dual, tgt);
  REQUIRE(validate_morphism(proj).ok());
  AlgebraMorphism zero = morphism_from_json(
      read_json_file("data/zero_morphism_dual.json"), dual, dual);
  REQUIRE(validate_morphism(zero).ok());
  AlgebraMorphism id = AlgebraMorphism::identity(null_a);
  MCSolution first =
      solution_from_json(read_json_file("data/null_first_order.json"), id);
  DeformationSetup su(id, 4);
  auto out = extend_to_full_order(first, 1, su);
  REQUIRE(out.solution);
}
