#include <doctest.h>

#include <random>

#include "fivevec/numeric.hpp"
#include "support.hpp"

using namespace fivevec;

TEST_CASE("labels map 5 to the last storage slot") {
  CHECK(slot(0) == 0);
  CHECK(slot(3) == 3);
  CHECK(slot(5) == 4);
  CHECK(label(4) == 5);
  CHECK_THROWS_AS(slot(4), Error);
  CHECK_THROWS_AS(label(5), Error);
}

TEST_CASE("tolerance must be positive") {
  CHECK_NOTHROW(Tolerance{}.validate());
  CHECK_THROWS_AS((Tolerance{0.0, 1e-12}.validate()), Error);
  CHECK_THROWS_AS((Tolerance{1e-9, -1.0}.validate()), Error);
}

TEST_CASE("null space") {
  SUBCASE("zero 3x3 map") { CHECK(null_space(Eigen::MatrixXd::Zero(3, 3)).size() == 3); }
  SUBCASE("identity has none") { CHECK(null_space(Eigen::MatrixXd::Identity(4, 4)).empty()); }
  SUBCASE("rank 3 from three outer products") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    for (int k = 0; k < 3; ++k) {
      Eigen::VectorXd a(5), b(5);
      for (int i = 0; i < 5; ++i) {
        a(i) = u(rng);
        b(i) = u(rng);
      }
      m += a * b.transpose();
    }
    const auto ns = null_space(m);
    REQUIRE(ns.size() == 2);
    for (const auto& v : ns) {
      CHECK(v.norm() == doctest::Approx(1.0));
      CHECK((m * v).norm() < 1e-9);
    }
    CHECK(rank(m) == 3);
  }
}

TEST_CASE("invert") {
  const Eigen::MatrixXd i5 = Eigen::MatrixXd::Identity(5, 5);
  CHECK(approx_eq(invert(i5), i5));

  Vec5 d;
  d << 2, -1, 1, 1, 3;
  Vec5 e;
  e << 0.5, -1, 1, 1, 1.0 / 3.0;
  CHECK(approx_eq(invert(Mat5(d.asDiagonal())), Mat5(e.asDiagonal())));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  Mat5 m;
  for (int i = 0; i < 25; ++i) m(i / 5, i % 5) = n(rng);
  m += 5.0 * Mat5::Identity();
  CHECK(max_abs(Mat5(m * invert(m) - Mat5::Identity())) < 1e-12);

  Mat5 singular = m;
  singular.row(2) = singular.row(0);
  CHECK_CODE(invert(singular), SingularMatrix);
}

TEST_CASE("approx_eq") {
  Mat4 x = Mat4::Identity() * 0.5;
  x(0, 1) = 0.5;
  CHECK(approx_eq(x, x));
  CHECK(approx_eq(x, Mat4(x + 1e-15 * Mat4::Ones())));
  CHECK_FALSE(approx_eq(x, Mat4(x + Mat4::Ones())));
  CHECK_CODE(approx_eq(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 2)), ShapeMismatch);
}

TEST_CASE("error messages carry the code name") {
  const Error e(ErrorCode::NotSimple, "detail");
  CHECK(std::string(e.what()).find("NotSimple") != std::string::npos);
  CHECK(std::string(e.what()).find("detail") != std::string::npos);
}
