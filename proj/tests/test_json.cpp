#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "holo/errors.hpp"
#include "holo/json_io.hpp"
#include "support.hpp"

using namespace holo;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::OutOfRange;
}

}  // namespace

TEST_CASE("matrix entries accept reals and [re, im]") {
  const Mat m = parse_matrix(Json::parse("[[1, [2, -3]], [0.5, [0, 1]]]"), "m");
  CHECK(m(0, 0) == Complex(1, 0));
  CHECK(m(0, 1) == Complex(2, -3));
  CHECK(m(1, 1) == Complex(0, 1));
  CHECK(matrix_to_json(m).dump() == "[[[1.0,0.0],[2.0,-3.0]],[[0.5,0.0],[0.0,1.0]]]");
}

TEST_CASE("malformed matrices are rejected") {
  CHECK(kind_of([] { parse_matrix(Json::parse("[[1, 2], [3]]"), "m"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_matrix(Json::parse("[]"), "m"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_matrix(Json::parse("[[1, \"x\"]]"), "m"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_matrix(Json::parse("[[1, [1, 2, 3]]]"), "m"); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_matrix(Json::parse("[[1, 2]]"), "m", 2, 2); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_matrix(Json::parse("5"), "m"); }) == ErrorKind::InvalidInput);
}

TEST_CASE("round trip is bit-identical") {
  std::mt19937_64 rng(12);
  const Mat m = testing::random_matrix(rng, 4, 4) * 1e-7 + testing::random_matrix(rng, 4, 4) * 1e5;
  const Mat back = parse_matrix(Json::parse(matrix_to_json(m).dump()), "m");
  CHECK(back == m);
  const TaylorPencil p(Complex(0.1, 1.0 / 3.0), {m, Mat(m * m)});
  const TaylorPencil q = parse_pencil_doc(Json::parse(pencil_to_json(p).dump()));
  CHECK(q.center() == p.center());
  CHECK(q.coefficient(1) == p.coefficient(1));
}

TEST_CASE("pencil documents") {
  const auto p = parse_pencil_doc(Json::parse(R"({"center": [1, 0], "dim": 2, "coefficients": [[[0, 0], [0, 1]], [[1, 0], [0, 0]]]})"));
  CHECK(p.dim() == 2);
  CHECK(p.degree() == 1);
  CHECK(parse_pencil_doc(Json::parse(R"({"center": 1, "dim": 1, "coefficients": [[[1]]]})")).center() == Complex(1, 0));
  CHECK(kind_of([] { parse_pencil_doc(Json::parse(R"({"dim": 1, "coefficients": [[[1]]]})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_pencil_doc(Json::parse(R"({"center": [0, 0], "dim": 2, "coefficients": [[[1]]]})")); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_pencil_doc(Json::parse(R"({"center": [0, 0], "dim": 1, "coefficients": [[[0]]]})")); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("model documents") {
  const auto doc = parse_model_doc(Json::parse(R"({"dim": 1, "ar": [[[2]], [[-1]]], "noise": {"covariance": [[4]], "seed": 9}})"));
  CHECK(doc.model.order() == 2);
  REQUIRE(doc.noise.has_value());
  CHECK(doc.noise->seed == 9);
  CHECK(!parse_model_doc(Json::parse(R"({"dim": 1, "ar": [[[1]]]})")).noise.has_value());
  CHECK(kind_of([] { parse_model_doc(Json::parse(R"({"dim": 1, "ar": [[[1]]], "noise": {"covariance": [[-1]]}})")); }) ==
        ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_model_doc(Json::parse(R"({"dim": 2, "ar": [[[1]]]})")); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { parse_model_doc(Json::parse(R"({"dim": 1, "ar": []})")); }) == ErrorKind::InvalidInput);
}

TEST_CASE("expansion documents") {
  std::vector<Mat> c{Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, Complex(0.25, -1.0))};
  const LaurentExpansion e(Complex(1, 0), 1, c);
  const Json j = expansion_to_json(e);
  CHECK(j["N"].contains("-1"));
  const LaurentExpansion back = parse_expansion(Json::parse(j.dump()));
  CHECK(back.order() == 1);
  CHECK(back.truncation() == 0);
  CHECK(back.coefficient(0) == e.coefficient(0));
  Json missing = j;
  missing["J"] = 1;
  CHECK(kind_of([&] { parse_expansion(missing); }) == ErrorKind::InvalidInput);
}
