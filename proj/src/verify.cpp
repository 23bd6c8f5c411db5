#include "fivevec/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <limits>

#include "fivevec/bases.hpp"
#include "fivevec/clifford.hpp"
#include "fivevec/flat_connection.hpp"
#include "fivevec/poincare.hpp"
#include "fivevec/sampling.hpp"

namespace fivevec {

Suite parse_suite(const std::string& s) {
  if (s == "algebra") return Suite::Algebra;
  if (s == "bases") return Suite::Bases;
  if (s == "clifford") return Suite::Clifford;
  if (s == "connection") return Suite::Connection;
  if (s == "poincare") return Suite::Poincare;
  if (s == "conservation") return Suite::Conservation;
  if (s == "all") return Suite::All;
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + s + "'");
}

const char* to_string(Suite s) {
  switch (s) {
    case Suite::Algebra: return "algebra";
    case Suite::Bases: return "bases";
    case Suite::Clifford: return "clifford";
    case Suite::Connection: return "connection";
    case Suite::Poincare: return "poincare";
    case Suite::Conservation: return "conservation";
    case Suite::All: return "all";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs fn; an exception becomes an infinite residual carrying the message.
void check(SuiteReport& r, const std::string& name, double tol, const std::function<double()>& fn) {
  try {
    r.add(name, fn(), tol);
  } catch (const std::exception& e) {
    r.add(name, kInf, tol, e.what());
  }
}

// Order checks: residual is the shortfall below the required order.
void order_check(SuiteReport& r, const std::string& name, double required, const std::function<Refinement()>& fn) {
  try {
    const Refinement m = fn();
    char note[128];
    std::snprintf(note, sizeof note, "order %.3f, residual %.3e -> %.3e", m.order, m.coarse, m.fine);
    const double deficit = std::isfinite(m.order) ? std::max(0.0, required - m.order) : kInf;
    r.add(name, deficit, 0.0, note);
  } catch (const std::exception& e) {
    r.add(name, kInf, 0.0, e.what());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double rel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return max_abs(Eigen::MatrixXd(a - b)) / std::max(1.0, std::max(max_abs(a), max_abs(b)));
}

std::uint64_t suite_seed(std::uint64_t seed, Suite s) {
  return seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(s) + 1;
}

Vec5 unit5(int s) { return Vec5::Unit(s); }

}  // namespace

SuiteReport verify_algebra(const VerifyOptions& o) {
  Sampler s(suite_seed(o.seed, Suite::Algebra));
  SuiteReport r;
  const MetricH eta = MetricH::eta();

  check(r, "algebra.wedge_antisymmetry", 0.0, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Mat5 b = wedge(s.vec5(), s.vec5()).matrix();
      m = std::max(m, max_abs(Mat5(b + b.transpose())));
    }
    return m;
  });
  check(r, "algebra.wedge_square_of_simple", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Bivector5 b = wedge(s.vec5(), s.vec5());
      const double scale = max_abs(b.matrix());
      m = std::max(m, square_wedge(b).cwiseAbs().maxCoeff() / (scale * scale));
    }
    return m;
  });
  check(r, "algebra.nonsimple_detected", 0.0, [&] {
    const Bivector5 b = wedge(unit5(0), unit5(1)) + wedge(unit5(2), unit5(3));
    return is_simple(b, o.tol) ? 1.0 : 0.0;
  });
  check(r, "metric.bivector_pairing_identity", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec5 u = s.vec5(), v = s.vec5(), w = s.vec5();
      const double lhs = g_from_h(wedge(u, w), wedge(v, w), eta);
      const double rhs = eta(u, v) * eta(w, w) - eta(u, w) * eta(v, w);
      m = std::max(m, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    return m;
  });

  check(r, "theorem.directional_recovery", o.tol.rel, [&] {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const auto space = s.maximal_space();
      // Random recombination: any basis of the space must give the same w.
      std::array<Bivector5, 4> mixed;
      for (int a = 0; a < 4; ++a) {
        mixed[a] = Bivector5();
        for (int b = 0; b < 4; ++b) mixed[a] = mixed[a] + s.uniform(-1.0, 1.0) * space.bivectors[b];
      }
      const FiveVector d = directional_vector(mixed, o.tol);
      const double c = std::abs(d.components.dot(space.w)) / (d.components.norm() * space.w.norm());
      worst = std::max(worst, 1.0 - c);
    }
    return worst;
  });
  check(r, "theorem.non_maximal_rejected", 0.0, [&] {
    double failures = 0.0;
    auto expect = [&](const std::vector<Bivector5>& span, ErrorCode code) {
      try {
        directional_vector(span, o.tol);
        failures += 1.0;
      } catch (const Error& e) {
        if (e.code() != code) failures += 1.0;
      }
    };
    // Simple elements with no common vector.
    expect({wedge(unit5(0), unit5(1)), wedge(unit5(0), unit5(2)), wedge(unit5(1), unit5(2)), wedge(unit5(0), unit5(3))},
           ErrorCode::NotMaximalSpace);
    // Too few independent elements.
    expect({wedge(unit5(0), unit5(4)), wedge(unit5(1), unit5(4)), wedge(unit5(2), unit5(4))},
           ErrorCode::DimensionTooSmall);
    // A non-simple element.
    expect({wedge(unit5(0), unit5(1)) + wedge(unit5(2), unit5(3)), wedge(unit5(0), unit5(4)), wedge(unit5(1), unit5(4)),
            wedge(unit5(2), unit5(4))},
           ErrorCode::NotSimple);
    return failures;
  });
  check(r, "theorem.positive_norm_direction", 0.0, [&] {
    double failures = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto space = s.maximal_space();
      const FiveVector d = directional_vector(space.bivectors, o.tol);
      if (classify_directional(d, eta, o.tol) != NormClass::Positive) failures += 1.0;
    }
    return failures;
  });

  check(r, "metric.orthonormal_gives_eta", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      Mat5 frame;
      const auto e = s.orthonormal_four_basis(&frame);
      m = std::max(m, max_abs(Mat4(induced_gram(e, eta) - eta4())));
    }
    return m;
  });
  check(r, "metric.negative_norm_pattern", 1e-12, [&] {
    Vec5 d;
    d << 1, 1, -1, -1, -1;
    const MetricH h(Mat5(d.asDiagonal()));
    const Basis5 ref = Basis5::reference();
    std::array<Bivector5, 4> e;
    for (int a = 0; a < 4; ++a) e[a] = ref.associated(a);
    Vec4 expect;
    expect << -1, -1, 1, 1;
    return max_abs(Mat4(induced_gram(e, h) - Mat4(expect.asDiagonal())));
  });
  return r;
}

SuiteReport verify_bases(const VerifyOptions& o) {
  Sampler s(suite_seed(o.seed, Suite::Bases));
  SuiteReport r;
  const MetricH eta = MetricH::eta();

  {
    double post = 0.0, unique = 0.0, flags = 0.0, orient = 0.0;
    std::string err;
    try {
      for (int i = 0; i < 500; ++i) {
        Mat5 frame;
        const auto e = s.orthonormal_four_basis(&frame);
        const Basis5 b = lemma1_construct(e, eta, o.tol);
        const LemmaResidual res = lemma_residual(b, e, eta, true);
        post = std::max({post, res.wedge, res.gram});
        // An orthonormal standard basis with these E_a is the frame itself up to sign.
        unique = std::max(unique, std::min(max_abs(Mat5(b.matrix() - frame)), max_abs(Mat5(b.matrix() + frame))));
        const BasisFlags f = b.flags();
        if (!(f.standard && f.regular && f.orthonormal)) flags += 1.0;
        const OrientationTensor eps{i % 2 == 0 ? 1 : -1};
        if (orientation_sign(lemma1_construct(e, eta, eps, o.tol), eps) != 1) orient += 1.0;
      }
    } catch (const std::exception& ex) {
      post = unique = flags = orient = kInf;
      err = ex.what();
    }
    r.add("basis.lemma1_postconditions", post, o.tol.rel, err);
    r.add("basis.lemma1_unique_up_to_sign", unique, o.tol.rel, err);
    r.add("basis.lemma1_flags", flags, 0.0, err);
    r.add("basis.lemma1_orientation", orient, 0.0, err);
  }
  {
    double post = 0.0, unique = 0.0, flags = 0.0;
    std::string err;
    try {
      for (int i = 0; i < 500; ++i) {
        const auto space = s.lorentzian_four_basis();
        const Basis5 b = lemma2_construct(space.bivectors, eta, o.tol);
        const LemmaResidual res = lemma_residual(b, space.bivectors, eta, false);
        post = std::max({post, res.wedge, res.gram});
        // Independent construction from the generating vectors.
        const double hww = eta(space.w, space.w);
        Mat5 x;
        for (int a = 0; a < 4; ++a) x.col(a) = std::sqrt(hww) * (space.u[a] - eta(space.u[a], space.w) / hww * space.w);
        x.col(kFifth) = space.w / std::sqrt(hww);
        unique = std::max(unique, std::min(rel(b.matrix(), x), rel(b.matrix(), -x)));
        const BasisFlags f = b.flags();
        if (!(f.standard && f.regular)) flags += 1.0;
      }
    } catch (const std::exception& ex) {
      post = unique = flags = kInf;
      err = ex.what();
    }
    r.add("basis.lemma2_postconditions", post, o.tol.rel, err);
    r.add("basis.lemma2_unique_up_to_sign", unique, o.tol.rel, err);
    r.add("basis.lemma2_flags", flags, 0.0, err);
  }
  check(r, "basis.lemma_rejects_bad_input", 0.0, [&] {
    double failures = 0.0;
    const auto space = s.lorentzian_four_basis();
    try {
      // Generic (non-orthonormal) input to the orthonormal construction.
      std::array<Bivector5, 4> e = space.bivectors;
      e[0] = 2.5 * e[0] + e[1];
      lemma1_construct(e, eta, o.tol);
      failures += 1.0;
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::NotOrthonormalInput) failures += 1.0;
    }
    try {
      std::array<Bivector5, 4> e;
      for (int a = 0; a < 4; ++a) e[a] = wedge(unit5(a), unit5(kFifth));
      e[3] = wedge(unit5(3), unit5(0));
      lemma2_construct(e, eta, o.tol);
      failures += 1.0;
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::NoCommonDirection) failures += 1.0;
    }
    return failures;
  });

  std::vector<BasisChange> changes;
  for (int i = 0; i < 500; ++i) {
    for (;;) {
      Mat5 l = Mat5::Zero();
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) l(a, b) = s.uniform(-1.0, 1.0);
      for (int b = 0; b < 4; ++b) l(kFifth, b) = s.uniform(-1.0, 1.0);
      const double a55 = s.uniform(0.5, 2.0);
      l(kFifth, kFifth) = s.uniform(0.0, 1.0) < 0.5 ? -a55 : a55;
      if (std::abs(l.topLeftCorner<4, 4>().determinant()) < 0.05) continue;
      changes.emplace_back(l);
      break;
    }
  }
  check(r, "basis.upm_roundtrip", 1e-12, [&] {
    double m = 0.0;
    for (const auto& l : changes) m = std::max(m, rel(decompose_upm(l, o.tol).reassemble().matrix(), l.matrix()));
    return m;
  });
  check(r, "basis.upm_factor_order", 1e-12, [&] {
    // U(a) P(p) M(t) composed by hand against the stated block form.
    double m = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double a = s.uniform(0.5, 2.0);
      const RowVec4 p = s.vec4().transpose();
      const Mat4 t = s.lorentz();
      const Mat5 l = BasisChange::u_transform(a).then(BasisChange::p_transform(p)).then(BasisChange::m_transform(t)).matrix();
      Mat5 expect = Mat5::Zero();
      expect.topLeftCorner<4, 4>() = t / a;
      expect.block<1, 4>(kFifth, 0) = a * p * t;
      expect(kFifth, kFifth) = a;
      m = std::max(m, rel(l, expect));
    }
    return m;
  });
  check(r, "basis.induced_lambda_matches_bivectors", 1e-12, [&] {
    double m = 0.0;
    for (const auto& l : changes) m = std::max(m, rel(induced_lambda(l, o.tol), induced_lambda_from_bivectors(l)));
    return m;
  });
  return r;
}

SuiteReport verify_clifford(const VerifyOptions& o) {
  Sampler s(suite_seed(o.seed, Suite::Clifford));
  SuiteReport r;
  const GammaSet g = construct_standard_gammaset();
  check(r, "clifford.anticommutation_exact", 0.0, [&] { return verify_anticommutation(g); });
  check(r, "clifford.dirac_relation", 1e-12, [&] { return dirac_residual(gamma_from_gamma(g)); });
  check(r, "clifford.dirac_representation_exact", 0.0, [&] {
    const auto rebuilt = gamma_from_gamma(g);
    const auto dirac = dirac_gammas();
    double m = 0.0;
    for (int mu = 0; mu < 4; ++mu) m = std::max(m, max_abs(Eigen::MatrixXcd(rebuilt[mu] - dirac[mu])));
    return m;
  });
  check(r, "clifford.trace_identity", 1e-12, [&] {
    const auto gam = gamma_from_gamma(g);
    double m = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) m = std::max(m, std::abs((gam[mu] * gam[nu]).trace() - 4.0 * eta4()(mu, nu)));
    return m;
  });
  check(r, "clifford.o32_closure", 1e-11, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) m = std::max(m, verify_anticommutation(apply_o32(g, O32Matrix(s.o32()))));
    return m;
  });
  check(r, "clifford.rejects_bad_set", 0.0, [&] {
    GammaSet bad = g;
    bad.gamma[0] *= 2.0;
    try {
      gamma_from_gamma(bad);
      return 1.0;
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidGammaSet ? 0.0 : 1.0;
    }
  });
  (void)o;
  return r;
}

double pbasis_composite_error(int count, FdScheme scheme, double kappa) {
  Grid4 grid;
  grid.counts = {count, count, 5, 5};
  grid.origin = Vec4(-0.5, -0.5, -0.3, 0.1);
  grid.spacing = Vec4(1.0 / (count - 1), 1.0 / (count - 1), 0.15, 0.15);

  auto theta = [](const Vec4& x) { return 0.3 * std::sin(x(0) + 0.5 * x(1) + 0.2); };
  auto dtheta = [](const Vec4& x) {
    const double c = 0.3 * std::cos(x(0) + 0.5 * x(1) + 0.2);
    return Vec4(c, 0.5 * c, 0.0, 0.0);
  };
  auto boost = [](double th) {
    Mat4 b = Mat4::Identity();
    b(0, 0) = b(1, 1) = std::cosh(th);
    b(0, 1) = b(1, 0) = std::sinh(th);
    return b;
  };

  const FieldOnGrid l_field = sample_field(grid, 25, [&](const Vec4& x, std::span<double> out) {
    Mat5 w = Mat5::Identity();
    w.topLeftCorner<4, 4>() = boost(theta(x));
    const Mat5 l = p_from_o_matrix(x, kappa) * w;
    for (int i = 0; i < 25; ++i) out[static_cast<std::size_t>(i)] = l(i / 5, i % 5);
  });
  const FieldOnGrid lambda_field = sample_field(grid, 16, [&](const Vec4& x, std::span<double> out) {
    const Mat4 b = boost(theta(x));
    for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = b(i / 4, i % 4);
  });
  const ConnectionField cf = connection_transform(flat_h(kappa), l_field, lambda_field, scheme, kInf);

  Mat5 gen = Mat5::Zero();
  gen(0, 1) = gen(1, 0) = 1.0;
  // Errors are taken on a fixed central region so refinements compare the same points.
  double err = 0.0;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    if (!cf.interior[s]) continue;
    const Vec4 x = grid.point(s);
    if (std::abs(x(0)) > 0.25 + 1e-12 || std::abs(x(1)) > 0.25 + 1e-12) continue;
    const Vec4 dt = dtheta(x);
    const Mat4 lam = boost(theta(x));
    for (int mu = 0; mu < 4; ++mu) {
      double c = 0.0;
      for (int nu = 0; nu < 4; ++nu) c += dt(nu) * lam(nu, mu);
      err = std::max(err, max_abs(Mat5(cf.coeffs[s].g[mu] - c * gen)));
    }
  }
  return err;
}

SuiteReport verify_connection(const VerifyOptions& o) {
  Sampler s(suite_seed(o.seed, Suite::Connection));
  SuiteReport r;
  const double kappa = o.kappa;
  const ConnectionCoeffs h = flat_h(kappa);

  check(r, "connection.transport_compatibility", 0.0, [&] {
    const auto rep = check_transport_compatibility(h, FourConnection{}, o.tol);
    return std::max(rep.standard_residual, rep.four_residual);
  });
  check(r, "connection.flat_coefficients_structure", 0.0, [&] {
    double m = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
      Mat5 expect = Mat5::Zero();
      for (int b = 0; b < 4; ++b) expect(kFifth, b) = -kappa * eta4()(b, mu);
      m = std::max(m, max_abs(Mat5(h.g[mu] - expect)));
    }
    return m;
  });
  check(r, "connection.pbasis_metric_closed_form", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec4 x = s.vec4(3.0);
      const Mat5 n = p_from_o_matrix(x, kappa);
      m = std::max(m, rel(pbasis_metric(x, kappa), Mat5(n.transpose() * eta5() * n)));
    }
    return m;
  });
  check(r, "connection.pbasis_self_parallel", 1e-12, [&] {
    const Grid4 grid = Grid4::cube(5, -1.0, 1.0, {true, true, true, true});
    const FieldOnGrid l_field = sample_field(grid, 25, [&](const Vec4& x, std::span<double> out) {
      const Mat5 n = p_from_o_matrix(x, kappa);
      for (int i = 0; i < 25; ++i) out[static_cast<std::size_t>(i)] = n(i / 5, i % 5);
    });
    const FieldOnGrid lambda_field = sample_field(grid, 16, [&](const Vec4&, std::span<double> out) {
      for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = i % 5 == 0 ? 1.0 : 0.0;
    });
    const ConnectionField cf = connection_transform(h, l_field, lambda_field, o.scheme);
    double m = 0.0;
    for (const auto& c : cf.coeffs) m = std::max(m, c.max_abs());
    return m;
  });
  {
    order_check(r, "connection.pbasis_convergence_order", 1.9, [&] {
      Refinement m;
      m.coarse = pbasis_composite_error(9, o.scheme, kappa);
      m.fine = pbasis_composite_error(17, o.scheme, kappa);
      m.order = std::log2(m.coarse / m.fine);
      return m;
    });
  }
  check(r, "connection.transport_matches_ode", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec5 v = s.vec5();
      const Vec4 from = s.vec4(2.0), to = s.vec4(2.0);
      // RK4 for dv/ds = -G_mu v dx^mu/ds along the straight segment.
      const Vec4 dx = to - from;
      Mat5 a = Mat5::Zero();
      for (int mu = 0; mu < 4; ++mu) a -= h.g[mu] * dx(mu);
      Vec5 y = v;
      const int steps = 64;
      const double ds = 1.0 / steps;
      for (int k = 0; k < steps; ++k) {
        const Vec5 k1 = a * y;
        const Vec5 k2 = a * (y + 0.5 * ds * k1);
        const Vec5 k3 = a * (y + 0.5 * ds * k2);
        const Vec5 k4 = a * (y + ds * k3);
        y += ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      m = std::max(m, rel(transport(v, from, to, BasisFlag::O, kappa), y));
      m = std::max(m, rel(transport(v, from, to, BasisFlag::P, kappa), v));
    }
    return m;
  });
  check(r, "connection.nabla_h_o_basis", 1e-12, [&] {
    const Grid4 grid = Grid4::cube(5, -1.0, 1.0, {true, true, true, true});
    const FieldOnGrid hf = sample_field(grid, 25, [&](const Vec4&, std::span<double> out) {
      for (int i = 0; i < 25; ++i) out[static_cast<std::size_t>(i)] = eta5()(i / 5, i % 5);
    });
    const FieldOnGrid gf = sample_field(grid, 16, [&](const Vec4&, std::span<double> out) {
      for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = eta4()(i / 4, i % 4);
    });
    return nabla_h_check(h, hf, kappa, gf, o.scheme).max();
  });
  check(r, "connection.nabla_h_p_basis", o.tol.rel, [&] {
    const Grid4 grid = Grid4::cube(5, -1.0, 1.0, {true, true, true, true});
    const FieldOnGrid hf = sample_field(
        grid, 25,
        [&](const Vec4& x, std::span<double> out) {
          const Mat5 m = pbasis_metric(x, kappa);
          for (int i = 0; i < 25; ++i) out[static_cast<std::size_t>(i)] = m(i / 5, i % 5);
        },
        BasisFlag::P);
    const FieldOnGrid gf = sample_field(grid, 16, [&](const Vec4&, std::span<double> out) {
      for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = eta4()(i / 4, i % 4);
    });
    return nabla_h_check(ConnectionCoeffs{}, hf, kappa, gf, o.scheme).max();
  });
  check(r, "connection.abstract_nabla_h_identity", o.tol.rel, [&] {
    double m = 0.0;
    std::array<Mat5, 4> zero{Mat5::Zero(), Mat5::Zero(), Mat5::Zero(), Mat5::Zero()};
    NablaHPoint o_point{eta5(), covariant_derivative_h(eta5(), zero, h), kappa};
    for (int i = 0; i < 500; ++i) {
      const Vec4 u = s.vec4();
      const Vec5 v = s.vec5(), w = s.vec5();
      const Vec5 e = s.uniform(0.5, 2.0) * Vec5::Unit(kFifth);
      m = std::max(m, abstract_nabla_h_residual(u, v, w, e, o_point, o.tol));

      // P basis at a random point: G = 0, so nabla h = dh.
      const Vec4 x = s.vec4();
      NablaHPoint p_point;
      p_point.h = pbasis_metric(x, kappa);
      p_point.kappa = kappa;
      const Vec4 xl = eta4() * x;
      for (int mu = 0; mu < 4; ++mu) {
        Mat5 d = Mat5::Zero();
        const Vec4 col = eta4().col(mu);
        d.topLeftCorner<4, 4>() = kappa * kappa * (col * xl.transpose() + xl * col.transpose());
        d.block<4, 1>(0, kFifth) = kappa * col;
        d.block<1, 4>(kFifth, 0) = kappa * col.transpose();
        p_point.nabla_h[mu] = d;
      }
      m = std::max(m, abstract_nabla_h_residual(u, v, w, e, p_point, o.tol));
    }
    return m;
  });
  return r;
}

SuiteReport verify_poincare(const VerifyOptions& o) {
  Sampler s(suite_seed(o.seed, Suite::Poincare));
  SuiteReport r;
  const double kappa = o.kappa;

  check(r, "poincare.composition_p_basis", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 500; ++i) {
      const PoincareTransform t1 = s.poincare(), t2 = s.poincare();
      const PoincareTransform t12 = compose(t1, t2);
      const FiveVector v{s.vec5(), {}};
      const FiveForm w{s.vec5(), {}};
      m = std::max(m, rel(transform_components_p(transform_components_p(v, t2, kappa), t1, kappa).components,
                          transform_components_p(v, t12, kappa).components));
      m = std::max(m, rel(transform_components_p(transform_components_p(w, t2, kappa), t1, kappa).components,
                          transform_components_p(w, t12, kappa).components));
      m = std::max(m, rel(homogeneous_rep(t12, kappa), Mat5(homogeneous_rep(t2, kappa) * homogeneous_rep(t1, kappa))));
    }
    return m;
  });
  check(r, "poincare.composition_o_basis", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 500; ++i) {
      const PoincareTransform t1 = s.poincare(), t2 = s.poincare();
      const FiveVector v{s.vec5(), {}};
      m = std::max(m, rel(transform_components_o(transform_components_o(v, t2), t1).components,
                          transform_components_o(v, compose(t1, t2)).components));
    }
    return m;
  });
  check(r, "poincare.inverse", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const PoincareTransform t = s.poincare();
      const PoincareTransform id = compose(t, inverse(t));
      m = std::max({m, rel(id.lambda, Mat4::Identity()), max_abs(id.a) / std::max(1.0, max_abs(t.a))});
    }
    return m;
  });
  check(r, "poincare.p_law_matches_generic_law", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const PoincareTransform t = s.poincare();
      const Mat5 k = homogeneous_rep(t, kappa);
      const Vec5 v = s.vec5();
      const RowVec5 w = s.vec5().transpose();
      m = std::max(m, rel(transform_components_p(FiveVector{v, {}}, t, kappa).components,
                          transform_vector_components(v, k)));
      m = std::max(m, rel(transform_components_p(FiveForm{w.transpose(), {}}, t, kappa).components.transpose(),
                          transform_form_components(w, k)));
    }
    return m;
  });
  check(r, "poincare.p_law_matches_o_law", 1e-12, [&] {
    // P components at x, moved through the O basis, come back as P components at t(x).
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const PoincareTransform t = s.poincare();
      const Vec4 x = s.vec4(2.0);
      const Vec5 vp = s.vec5();
      const Vec5 vo = p_from_o_matrix(x, kappa) * vp;
      const Vec5 vo_new = transform_components_o(FiveVector{vo, {}}, t).components;
      const Vec5 vp_new = p_from_o_matrix(t.apply(x), kappa).fullPivLu().solve(vo_new);
      m = std::max(m, rel(transform_components_p(FiveVector{vp, {}}, t, kappa).components, vp_new));
    }
    return m;
  });
  check(r, "poincare.cov_coord_o_components", 1e-12, [&] {
    double m = 0.0;
    const Vec5 expect = Vec5::Unit(kFifth) / kappa;
    for (int i = 0; i < 100; ++i) {
      LorentzChart chart;
      chart.origin = s.vec4(5.0);
      chart.lambda = s.lorentz();
      chart.kappa = kappa;
      chart.validate();
      const Vec4 x = s.vec4(5.0);
      m = std::max(m, max_abs(Vec5(build_cov_coord_form(chart, x).o_dual - expect)));
    }
    return m;
  });
  check(r, "poincare.cov_coord_chart_independent", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 100; ++i) {
      const LorentzChart chart{Vec4::Zero(), Mat4::Identity(), kappa};
      const PoincareTransform t = s.poincare();
      const Vec4 x = s.vec4(3.0);
      const Vec5 before = build_cov_coord_form(chart, x).p_dual;
      const Vec5 after = build_cov_coord_form(chart, t.apply(x)).p_dual;
      m = std::max(m, rel(transform_components_p(FiveForm{before, {}}, t, kappa).components, after));
      const NablaCovCoord n = nabla_cov_coord(chart, x);
      m = std::max(m, rel(n.p_route, n.o_route));
    }
    return m;
  });
  check(r, "poincare.t_tensor_law", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 500; ++i) {
      const PoincareTransform t = s.poincare();
      const ParamTensorT tt = ParamTensorT::from(s.lorentz(), s.vec4().transpose());
      m = std::max(m, rel(transform_t(tt, t).t, transform_t_tensor_law(tt, t).t));
    }
    return m;
  });
  check(r, "poincare.r_tensor_law", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 500; ++i) {
      const PoincareTransform t = s.poincare();
      Mat4 a = Mat4::Zero();
      for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
          a(p, q) = s.uniform(-1.0, 1.0);
          a(q, p) = -a(p, q);
        }
      const ParamTensorR rr = build_r(a, s.vec4());
      m = std::max(m, rel(transform_r(rr, t).r, transform_r_tensor_law(rr, t).r));
    }
    return m;
  });
  return r;
}

MTensorField plane_wave_m(int count, const Vec4& k_upper, BasisFlag basis, double kappa) {
  const Grid4 grid = Grid4::cube(count, -1.0, 1.0, {true, true, true, false});
  const MTensorField p = assemble_m_p(sample_plane_wave(grid, k_upper), zero_sigma(grid), LorentzChart{{}, Mat4::Identity(), kappa});
  return basis == BasisFlag::O ? to_o_basis(p) : p;
}

namespace {

// Largest interior divergence over samples inside [lo, hi] on every active axis.
double residual_in_box(const ConservationReport& rep, const Grid4& grid, double lo, double hi) {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!rep.interior[i]) continue;
    const Vec4 x = grid.point(i);
    bool inside = true;
    for (int a = 0; a < 4; ++a)
      if (grid.counts[a] > 1 && (x(a) < lo - 1e-12 || x(a) > hi + 1e-12)) inside = false;
    if (!inside) continue;
    const Mat5& d = rep.divergence[i];
    m = std::max(m, d.topLeftCorner<4, 4>().cwiseAbs().maxCoeff());
    m = std::max(m, d.block<1, 4>(kFifth, 0).cwiseAbs().maxCoeff());
  }
  return m;
}

}  // namespace

Refinement plane_wave_refinement(int fine, const Vec4& k_upper, BasisFlag basis, FdScheme scheme, double kappa) {
  if (fine % 2 == 0) throw Error(ErrorCode::InvalidArgument, "refinement needs an odd sample count");
  const int coarse = (fine + 1) / 2;
  // Both levels are measured on the coarse grid's interior so the error is
  // compared at the same points.
  const int halo = scheme == FdScheme::Central2 ? 1 : 2;
  const double bound = 1.0 - halo * 2.0 / (coarse - 1);
  const MTensorField mc = plane_wave_m(coarse, k_upper, basis, kappa);
  const MTensorField mf = plane_wave_m(fine, k_upper, basis, kappa);
  Refinement m;
  m.coarse = residual_in_box(conservation_check(mc, scheme), mc.grid, -bound, bound);
  m.fine = residual_in_box(conservation_check(mf, scheme), mf.grid, -bound, bound);
  m.order = std::log2(m.coarse / m.fine);
  return m;
}

SuiteReport verify_conservation(const VerifyOptions& o) {
  Sampler s(suite_seed(o.seed, Suite::Conservation));
  SuiteReport r;
  const double kappa = o.kappa;
  const int fine = o.grid % 2 == 0 ? o.grid + 1 : o.grid;
  const double angle = s.uniform(0.0, 2.0 * M_PI);
  const double omega = 1.5;
  const Vec4 k(omega, omega * std::cos(angle), omega * std::sin(angle), 0.0);

  const bool do_p = !o.basis || *o.basis == BasisFlag::P;
  const bool do_o = !o.basis || *o.basis == BasisFlag::O;
  if (do_p) {
    order_check(r, "conservation.plane_wave_order_p_basis", 1.9,
                [&] { return plane_wave_refinement(fine, k, BasisFlag::P, o.scheme, kappa); });
  }
  if (do_o) {
    order_check(r, "conservation.plane_wave_order_o_basis", 1.9,
                [&] { return plane_wave_refinement(fine, k, BasisFlag::O, o.scheme, kappa); });
  }
  if (do_p && do_o) {
    try {
      const MTensorField mp = plane_wave_m(fine, k, BasisFlag::P, kappa);
      const ConservationReport rp = conservation_check(mp, o.scheme);
      const ConservationReport ro = conservation_check(to_o_basis(mp), o.scheme);
      const double fd_tol = std::max(rp.max(), ro.max());
      double diff = 0.0;
      for (std::size_t i = 0; i < mp.grid.size(); ++i) {
        if (!rp.interior[i]) continue;
        const Mat5 ninv = p_from_o_matrix(mp.grid.point(i), kappa).inverse();
        diff = std::max(diff, max_abs(Mat5(ninv.transpose() * rp.divergence[i] * ninv - ro.divergence[i])));
      }
      r.add("conservation.bases_agree", diff, 2.0 * fd_tol,
            "P residual " + fmt(rp.max()) + ", O residual " + fmt(ro.max()));
    } catch (const std::exception& e) {
      r.add("conservation.bases_agree", kInf, 0.0, e.what());
    }
  }

  // Dyadic grid and entries keep every product and difference exact.
  const Grid4 dyadic = [] {
    Grid4 g;
    g.counts = {5, 5, 5, 5};
    g.origin = Vec4(-0.25, -0.25, -0.25, -0.25);
    g.spacing = Vec4(0.125, 0.125, 0.125, 0.125);
    return g;
  }();
  Mat4 sym_lower;  // Theta_{mu a}, symmetric
  sym_lower << 2.0, 0.5, -0.25, 0.75, 0.5, 1.0, 0.125, -0.5, -0.25, 0.125, 1.5, 0.25, 0.75, -0.5, 0.25, 0.5;
  const Mat4 sym_theta = eta4() * sym_lower;  // raise mu
  const LorentzChart chart{Vec4::Zero(), Mat4::Identity(), kappa};
  // Exact only when 1/kappa is a power of two; otherwise Theta/kappa rounds.
  int exponent = 0;
  const double exact_tol = std::frexp(kappa, &exponent) == 0.5 || std::frexp(kappa, &exponent) == -0.5 ? 0.0 : 1e-14;
  if (do_p) {
    check(r, "conservation.constant_symmetric_exact_p_basis", exact_tol, [&] {
      return conservation_check(assemble_m_p(constant_theta(dyadic, sym_theta), zero_sigma(dyadic), chart), o.scheme).max();
    });
  }
  if (do_o) {
    check(r, "conservation.constant_symmetric_exact_o_basis", exact_tol, [&] {
      const MTensorField mp = assemble_m_p(constant_theta(dyadic, sym_theta), zero_sigma(dyadic), chart);
      return conservation_check(to_o_basis(mp), o.scheme).max();
    });
  }
  check(r, "conservation.asymmetric_theta_detected", 1e-12, [&] {
    Mat4 asym_lower = sym_lower;
    asym_lower(0, 1) += 0.375;
    const MTensorField mp = assemble_m_p(constant_theta(dyadic, eta4() * asym_lower), zero_sigma(dyadic), chart);
    const double expect = max_abs(Mat4(asym_lower - asym_lower.transpose()));
    return std::abs(conservation_check(mp, o.scheme).angular - expect);
  });
  check(r, "conservation.transform_matches_tensor_law", 1e-12, [&] {
    double m = 0.0;
    for (int i = 0; i < 200; ++i) {
      const PoincareTransform t = s.poincare();
      MSample sample;
      for (auto& x : sample) {
        Mat5 a;
        for (int c = 0; c < 5; ++c) a.col(c) = s.vec5();
        x = a - a.transpose();
      }
      const MSample a = transform_m_sample(sample, t, kappa);
      const MSample b = transform_m_sample_tensor_law(sample, t, kappa);
      for (int mu = 0; mu < 4; ++mu) m = std::max(m, rel(a[mu], b[mu]));
    }
    return m;
  });
  check(r, "conservation.transform_roundtrip", 1e-9, [&] {
    const MTensorField mp = plane_wave_m(9, k, BasisFlag::P, kappa);
    const PoincareTransform t = s.poincare();
    const MTensorField back = transform_m(transform_m(mp, t), inverse(t));
    double m = 0.0;
    for (std::size_t i = 0; i < mp.m.size(); ++i)
      for (int mu = 0; mu < 4; ++mu) m = std::max(m, rel(back.m[i][mu], mp.m[i][mu]));
    return m;
  });
  return r;
}

SuiteReport run_suite(Suite suite, const VerifyOptions& o) {
  o.tol.validate();
  if (o.kappa == 0.0 || !std::isfinite(o.kappa)) throw Error(ErrorCode::InvalidArgument, "kappa must be finite and nonzero");
  if (o.grid < 5) throw Error(ErrorCode::InvalidArgument, "grid needs at least 5 samples per axis");
  using Fn = SuiteReport (*)(const VerifyOptions&);
  const std::array<std::pair<Suite, Fn>, 6> all{{{Suite::Algebra, verify_algebra},
                                                 {Suite::Bases, verify_bases},
                                                 {Suite::Clifford, verify_clifford},
                                                 {Suite::Connection, verify_connection},
                                                 {Suite::Poincare, verify_poincare},
                                                 {Suite::Conservation, verify_conservation}}};
  if (suite != Suite::All) {
    for (const auto& [id, fn] : all)
      if (id == suite) return fn(o);
  }
  SuiteReport out;
  if (o.jobs <= 1) {
    for (const auto& [id, fn] : all) out.append(fn(o));
    return out;
  }
  std::vector<std::future<SuiteReport>> pending;
  for (const auto& [id, fn] : all) pending.push_back(std::async(std::launch::async, fn, std::cref(o)));
  for (auto& f : pending) out.append(f.get());
  return out;
}

}  // namespace fivevec
