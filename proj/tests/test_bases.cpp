#include <doctest.h>

#include "fivevec/bases.hpp"
#include "fivevec/flat_connection.hpp"
#include "fivevec/sampling.hpp"
#include "support.hpp"

using namespace fivevec;

namespace {

Vec5 unit(int label_) { return Vec5::Unit(slot(label_)); }

std::array<Bivector5, 4> reference_four_basis() {
  std::array<Bivector5, 4> e;
  for (int mu = 0; mu < 4; ++mu) e[mu] = wedge(unit(mu), unit(5));
  return e;
}

double sign_free_distance(const Mat5& a, const Mat5& b) {
  return std::min(max_abs(Mat5(a - b)), max_abs(Mat5(a + b)));
}

Mat5 random_standard(Sampler& s) {
  Mat5 l = Mat5::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) l(i, j) = s.uniform(-0.5, 0.5) + (i == j ? 2.0 : 0.0);
  for (int j = 0; j < 4; ++j) l(kFifth, j) = s.uniform(-1, 1);
  l(kFifth, kFifth) = s.uniform(0.5, 2.0);
  return l;
}

}  // namespace

TEST_CASE("elementary basis changes are standard") {
  CHECK(is_standard_change(BasisChange::u_transform(2.5)));
  CHECK(is_standard_change(BasisChange::p_transform(RowVec4(1, -2, 0.5, 3))));
  CHECK(is_standard_change(BasisChange::m_transform(Mat4::Identity() * 2.0)));
  Mat5 l = Mat5::Identity();
  l(1, kFifth) = 0.3;
  CHECK_FALSE(is_standard_change(BasisChange(l)));
  CHECK_CODE(induced_lambda(BasisChange(l)), NotStandard);
  CHECK_CODE(BasisChange::u_transform(0.0), InvalidArgument);
  CHECK_CODE(BasisChange(Mat5::Zero()), SingularMatrix);
}

TEST_CASE("induced four-vector transformation") {
  Sampler s(31);
  // U and P leave four-vectors alone, M acts as its block.
  CHECK(approx_eq(induced_lambda(BasisChange::u_transform(-3.0)), Mat4::Identity()));
  CHECK(approx_eq(induced_lambda(BasisChange::p_transform(RowVec4(1, 2, 3, 4))), Mat4::Identity()));
  const Mat4 t = s.lorentz(0.8);
  CHECK(approx_eq(induced_lambda(BasisChange::m_transform(t)), t));

  for (int trial = 0; trial < 10; ++trial) {
    const BasisChange l(random_standard(s));
    const Mat4 direct = l.matrix()(kFifth, kFifth) * l.matrix().topLeftCorner<4, 4>();
    CHECK(max_abs(Mat4(induced_lambda(l) - direct)) < 1e-14);
    CHECK(max_abs(Mat4(induced_lambda_from_bivectors(l) - direct)) < 1e-12);
  }
}

TEST_CASE("UPM decomposition") {
  Sampler s(37);
  for (int trial = 0; trial < 10; ++trial) {
    const BasisChange l(random_standard(s));
    const UPMDecomposition d = decompose_upm(l);
    // Factors assembled by hand.
    Mat5 u = Mat5::Identity() / d.a;
    u(kFifth, kFifth) = d.a;
    Mat5 p = Mat5::Identity();
    p.block<1, 4>(kFifth, 0) = d.p;
    Mat5 m = Mat5::Identity();
    m.topLeftCorner<4, 4>() = d.t;
    CHECK(max_abs(Mat5(u * p * m - l.matrix())) < 1e-12);
    CHECK(max_abs(Mat5(d.reassemble().matrix() - l.matrix())) < 1e-12);
    CHECK(d.a == l.matrix()(kFifth, kFifth));
  }
  Mat5 bad = Mat5::Identity();
  bad(0, kFifth) = 1.0;
  CHECK_CODE(decompose_upm(BasisChange(bad)), NotStandard);
}

TEST_CASE("lemma 1 on the reference four-vector basis") {
  const MetricH h = MetricH::eta();
  const Basis5 b = lemma1_construct(reference_four_basis(), h);
  CHECK(sign_free_distance(b.matrix(), Mat5::Identity()) < 1e-12);
  CHECK(b.flags() == BasisFlags{true, true, true});

  const Basis5 plus = lemma1_construct(reference_four_basis(), h, OrientationTensor{+1});
  CHECK(orientation_sign(plus, OrientationTensor{+1}) == 1);
  CHECK(approx_eq(plus.matrix(), Mat5::Identity()));
  const Basis5 minus = lemma1_construct(reference_four_basis(), h, OrientationTensor{-1});
  CHECK(approx_eq(minus.matrix(), Mat5(-Mat5::Identity())));
}

TEST_CASE("lemma 1 recovers a random orthonormal frame up to sign") {
  Sampler s(41);
  const MetricH h = MetricH::eta();
  for (int trial = 0; trial < 10; ++trial) {
    Mat5 frame;
    const auto e = s.orthonormal_four_basis(&frame);
    const Basis5 b = lemma1_construct(e, h);
    const LemmaResidual r = lemma_residual(b, e, h, true);
    CHECK(r.wedge < 1e-9);
    CHECK(r.gram < 1e-9);
    CHECK(sign_free_distance(b.matrix(), frame) < 1e-9);
  }
}

TEST_CASE("lemma 1 input checks") {
  const MetricH h = MetricH::eta();
  auto e = reference_four_basis();
  e[2] = e[2] * 2.0;
  CHECK_CODE(lemma1_construct(e, h), NotOrthonormalInput);
  const std::array<Bivector5, 4> crossed{wedge(unit(0), unit(1)), wedge(unit(2), unit(3)), wedge(unit(0), unit(2)),
                                         wedge(unit(1), unit(3))};
  // g(e0^e1, e0^e1) = -1, so the orthonormality test fails first.
  CHECK(code_of([&] { lemma1_construct(crossed, h); }).has_value());
}

TEST_CASE("lemma 2") {
  const MetricH h = MetricH::eta();
  SUBCASE("orthonormal input agrees with lemma 1") {
    Sampler s(43);
    const auto e = s.orthonormal_four_basis();
    CHECK(sign_free_distance(lemma2_construct(e, h).matrix(), lemma1_construct(e, h).matrix()) < 1e-9);
  }
  SUBCASE("scaling the four-vectors scales e_a only") {
    auto e = reference_four_basis();
    for (auto& b : e) b = b * 2.0;
    const Basis5 b = lemma2_construct(e, h);
    Mat5 expect = 2.0 * Mat5::Identity();
    expect(kFifth, kFifth) = 1.0;
    CHECK(sign_free_distance(b.matrix(), expect) < 1e-12);
    CHECK(b.flags().regular);
    CHECK_FALSE(b.flags().orthonormal);
  }
  SUBCASE("general linear deformation") {
    Sampler s(47);
    for (int trial = 0; trial < 10; ++trial) {
      const auto base = s.orthonormal_four_basis();
      Mat4 a;
      for (int i = 0; i < 16; ++i) a(i / 4, i % 4) = s.uniform(-0.3, 0.3);
      a += Mat4::Identity();
      std::array<Bivector5, 4> e;
      for (int c = 0; c < 4; ++c) {
        e[c] = Bivector5();
        for (int r = 0; r < 4; ++r) e[c] = e[c] + a(r, c) * base[r];
      }
      const Basis5 b = lemma2_construct(e, h);
      const LemmaResidual r = lemma_residual(b, e, h, false);
      CHECK(r.wedge < 1e-9);
      CHECK(r.gram < 1e-9);
      CHECK(is_regular(b, h, Tolerance{1e-8, 1e-10}));
    }
  }
  SUBCASE("spacelike direction gives a non-Lorentzian induced metric") {
    const std::array<Bivector5, 4> e{wedge(unit(0), unit(1)), wedge(unit(2), unit(1)), wedge(unit(3), unit(1)),
                                     wedge(unit(5), unit(1))};
    CHECK_CODE(lemma2_construct(e, h), DegenerateInducedMetric);
    CHECK_CODE(lemma1_construct(e, h), NotOrthonormalInput);
  }
  SUBCASE("null direction gives a degenerate induced metric") {
    const Vec5 w = unit(1) + unit(5);
    const std::array<Bivector5, 4> e{wedge(unit(0), w), wedge(unit(1), w), wedge(unit(2), w), wedge(unit(3), w)};
    CHECK_CODE(lemma2_construct(e, h), DegenerateInducedMetric);
  }
}

TEST_CASE("regularity") {
  const MetricH h = MetricH::eta();
  CHECK(is_regular(Basis5::reference(), h));
  CHECK(is_regular(Basis5(p_from_o_matrix(Vec4::Zero(), 1.0)), h));
  CHECK_FALSE(is_regular(Basis5(p_from_o_matrix(Vec4(0.5, 0.2, 0, 0), 1.0)), h));
  Mat5 scaled = Mat5::Identity();
  scaled(kFifth, kFifth) = 2.0;
  CHECK_FALSE(is_regular(Basis5(scaled), h));
}

TEST_CASE("orientation") {
  CHECK(orientation_sign(Basis5::reference()) == 1);
  CHECK(orientation_sign(Basis5::reference(), OrientationTensor{-1}) == -1);
  Mat5 flipped = Mat5::Identity();
  flipped(2, 2) = -1.0;
  CHECK(orientation_sign(Basis5(flipped)) == -1);

  const OrientationTensor eps{+1};
  CHECK(eps.component({0, 1, 2, 3, 4}) == 1.0);
  CHECK(eps.component({1, 0, 2, 3, 4}) == -1.0);
  CHECK(eps.component({0, 0, 2, 3, 4}) == 0.0);
}

TEST_CASE("classification flags") {
  const MetricH h = MetricH::eta();
  CHECK(classify_basis(Mat5::Identity(), h, unit(5)) == BasisFlags{true, true, true});
  Mat5 p = p_from_o_matrix(Vec4(0.3, 0, 0, 0), 1.0);
  const BasisFlags f = classify_basis(p, h, unit(5));
  CHECK(f.standard);
  CHECK_FALSE(f.regular);
  CHECK_FALSE(f.orthonormal);
}
