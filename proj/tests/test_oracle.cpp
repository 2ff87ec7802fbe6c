#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "holo/errors.hpp"
#include "holo/laurent.hpp"
#include "holo/oracle.hpp"
#include "support.hpp"

using namespace holo;
using testing::scalar_pencil;

TEST_CASE("contour_coefficient on monomials") {
  const TaylorPencil p = scalar_pencil(1.0, {0.0, 1.0});
  const ContourSpec spec{1.0, 0.5, 64};
  CHECK(std::abs(contour_coefficient(p, spec, -1)(0, 0) - 1.0) < 1e-13);
  CHECK(std::abs(contour_coefficient(p, spec, 0)(0, 0)) < 1e-13);

  const TaylorPencil d(1.0, testing::diagonal_powers({2, 1, 0}));
  Mat expect = Mat::Zero(3, 3);
  expect(0, 0) = 1.0;
  CHECK((contour_coefficient(d, {1.0, 0.5, 256}, -2) - expect).norm() < 1e-12);
}

TEST_CASE("detect_order") {
  const ContourSpec spec{1.0, 0.5, 256};
  CHECK(detect_order(scalar_pencil(1.0, {0.0, 1.0}), spec) == 1);
  CHECK(detect_order(scalar_pencil(1.0, {0.0, 0.0, 1.0}), spec) == 2);
  CHECK(detect_order(scalar_pencil(1.0, {0.0, 0.0, 0.0, 1.0}), spec) == 3);
  // I + 0.1 z I recentered at 1
  const TaylorPencil inv = recenter(TaylorPencil(0.0, {Mat::Identity(2, 2), Mat(0.1 * Mat::Identity(2, 2))}), 1.0);
  CHECK(detect_order(inv, spec) == 0);
}

TEST_CASE("SingularOnContour") {
  // root at 1.5 lies on the circle of radius 0.5 around 1
  const TaylorPencil p = scalar_pencil(1.0, {-0.5, 1.0});
  try {
    contour_coefficient(p, {1.0, 0.5, 64}, 0);
    FAIL("expected SingularOnContour");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularOnContour);
  }
}

TEST_CASE("default_contour avoids other roots") {
  // (z - 1)(z - 1.4): nearest other root at distance 0.4
  const TaylorPencil p = scalar_pencil(1.0, {0.0, -0.4, 1.0});
  const ContourSpec spec = default_contour(p);
  CHECK(std::abs(spec.radius - 0.2) < 1e-8);
  CHECK(std::abs(contour_coefficient(p, spec, -1)(0, 0) - (-2.5)) < 1e-10);
  CHECK(default_contour(scalar_pencil(1.0, {0.0, 1.0})).radius == 0.5);
}

TEST_CASE("contour agrees with recursion and converges in the node count") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int order = 1 + trial % 2;
    const TaylorPencil p = testing::structured_pencil(rng, testing::random_exponents(rng, 3, order));
    const auto an = analyze(p);
    const auto e = laurent(an, p, 3);
    ContourSpec spec = default_contour(p);
    CHECK(detect_order(p, spec) == an.order);
    const auto c = contour_coefficients(p, spec, -order, 3);
    spec.nodes = 128;
    const auto c128 = contour_coefficients(p, spec, -order, 3);
    for (int k = -order; k <= 3; ++k) {
      const auto i = static_cast<std::size_t>(k + order);
      CHECK((e.coefficient(k) - c[i]).norm() < 1e-7);
      CHECK((c[i] - c128[i]).norm() < 1e-10);
    }
  }
}
