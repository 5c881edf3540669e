#include <gtest/gtest.h>

#include <cmath>

#include "sasaki/sasaki.hpp"
#include "support/oracles.hpp"

using namespace sasaki;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd v2(double a, double b) { return (VectorXd(2) << a, b).finished(); }
VectorXd v4(double a, double b, double c, double d) { return (VectorXd(4) << a, b, c, d).finished(); }

BundlePoint bp(const VectorXd& x, const VectorXd& xi) { return {Point{x}, xi}; }

std::vector<ChartedManifold> charts_under_test() {
  return {charts::euclidean(2), charts::conformal(2, 1.0), charts::conformal(3, -1.0), charts::sphere_band()};
}

}  // namespace

TEST(Split, FlatRawIsAlreadySplit) {
  auto z = bp(v2(0.3, 0.1), v2(1, 2));
  BundleTangent t = split(charts::euclidean(2), z, v4(1, 0, 0, 1));
  EXPECT_EQ(t.H, v2(1, 0));
  EXPECT_EQ(t.V, v2(0, 1));
}

TEST(Split, ConformalVerticalPartPicksUpChristoffels) {
  // V^a = Gamma^a_b1 xi^b with xi = e1 at x = (2, 0): (-1/2, 0).
  auto z = bp(v2(2, 0), v2(1, 0));
  BundleTangent t = split(charts::conformal(2, 1.0), z, v4(1, 0, 0, 0));
  EXPECT_EQ(t.H, v2(1, 0));
  EXPECT_NEAR(t.V[0], -0.5, 1e-15);
  EXPECT_NEAR(t.V[1], 0.0, 1e-15);
}

TEST(Split, RoundTrip) {
  oracles::Rng rng(21);
  for (const auto& m : charts_under_test())
    for (int k = 0; k < 25; ++k) {
      const int n = m.dim();
      auto z = bp(rng.vec(n, -0.6, 0.6), rng.vec(n, -2, 2));
      VectorXd raw = rng.vec(2 * n, -3, 3);
      BundleTangent t = split(m, z, raw);
      EXPECT_LT((assemble(m, z, t.H, t.V) - raw).cwiseAbs().maxCoeff(), 1e-12);
      VectorXd H = rng.vec(n, -1, 1), V = rng.vec(n, -1, 1);
      BundleTangent back = split(m, z, assemble(m, z, H, V));
      EXPECT_LT((back.H - H).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LT((back.V - V).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Assemble, FlatLifts) {
  auto m = charts::euclidean(2);
  auto z = bp(v2(0, 0), v2(0.5, 0.5));
  EXPECT_EQ(assemble(m, z, v2(1, 0), v2(0, 0)), v4(1, 0, 0, 0));
  EXPECT_EQ(assemble(m, z, v2(0, 0), v2(0, 1)), v4(0, 0, 0, 1));
}

TEST(Lifts, ProjectionIdentitiesAreExact) {
  oracles::Rng rng(22);
  for (const auto& m : charts_under_test()) {
    const int n = m.dim();
    auto z = bp(rng.vec(n, -0.5, 0.5), rng.vec(n, -1, 1));
    VectorXd X = rng.vec(n, -1, 1);
    BundleTangent h = horizontal_lift(z, X), v = vertical_lift(z, X);
    EXPECT_EQ(h.H, X);
    EXPECT_EQ(h.V, VectorXd::Zero(n));
    EXPECT_EQ(v.H, VectorXd::Zero(n));
    EXPECT_EQ(v.V, X);
    // and through raw coordinates
    BundleTangent hr = split(m, z, assemble(m, z, X, VectorXd::Zero(n)));
    EXPECT_LT(hr.V.cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(SasakiInner, Examples) {
  auto flat = charts::euclidean(2);
  auto z = bp(v2(0, 0), v2(0, 0));
  EXPECT_DOUBLE_EQ(sasaki_inner(flat, z, horizontal_lift(z, v2(1, 0)), horizontal_lift(z, v2(1, 0))), 1.0);
  oracles::Rng rng(23);
  for (const auto& m : charts_under_test()) {
    const int n = m.dim();
    auto w = bp(rng.vec(n, -0.5, 0.5), rng.vec(n, -1, 1));
    EXPECT_EQ(sasaki_inner(m, w, horizontal_lift(w, rng.vec(n, -1, 1)), vertical_lift(w, rng.vec(n, -1, 1))), 0.0);
  }
}

TEST(SasakiInner, MatchesRawQuadraticForm) {
  oracles::Rng rng(24);
  for (const auto& m : charts_under_test())
    for (int k = 0; k < 20; ++k) {
      const int n = m.dim();
      auto z = bp(rng.vec(n, -0.6, 0.6), rng.vec(n, -1.5, 1.5));
      VectorXd a = rng.vec(2 * n, -1, 1), b = rng.vec(2 * n, -1, 1);
      double ref = a.dot(sasaki_matrix(m, z) * b);
      EXPECT_NEAR(sasaki_inner(m, z, split(m, z, a), split(m, z, b)), ref, 1e-12 * (1 + std::abs(ref)));
    }
}

TEST(SasakiInner, RejectsForeignBase) {
  auto m = charts::euclidean(2);
  auto z = bp(v2(0, 0), v2(0, 0));
  auto w = bp(v2(0, 0), v2(1, 0));
  EXPECT_THROW(sasaki_inner(m, z, horizontal_lift(w, v2(1, 0)), horizontal_lift(z, v2(1, 0))), ContractViolation);
}

TEST(SasakiMatrix, Examples) {
  EXPECT_TRUE(sasaki_matrix(charts::euclidean(3), bp(VectorXd::Zero(3), VectorXd::Ones(3))).isApprox(MatrixXd::Identity(6, 6)));
  auto conf = charts::conformal(2, 1.0);
  MatrixXd g0 = conf.metric(v2(0, 0));
  MatrixXd G = sasaki_matrix(conf, bp(v2(0, 0), v2(0, 0)));
  EXPECT_TRUE(G.topLeftCorner(2, 2).isApprox(g0));
  EXPECT_TRUE(G.bottomRightCorner(2, 2).isApprox(g0));
  EXPECT_EQ(G.topRightCorner(2, 2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SasakiMatrix, GramOfCoordinateBasis) {
  auto m = charts::conformal(2, 1.0);
  auto z = bp(v2(1, 0), v2(0, 2));
  MatrixXd G = sasaki_matrix(m, z);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double gram = sasaki_inner(m, z, split(m, z, VectorXd::Unit(4, i)), split(m, z, VectorXd::Unit(4, j)));
      EXPECT_NEAR(G(i, j), gram, 1e-14);
    }
  EXPECT_TRUE(G.isApprox(G.transpose()));
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixXd>(G).eigenvalues().minCoeff(), 0.0);
}

TEST(Kowalski, VerticalVerticalVanishes) {
  oracles::Rng rng(25);
  for (const auto& m : charts_under_test()) {
    const int n = m.dim();
    auto z = bp(rng.vec(n, -0.5, 0.5), rng.vec(n, -1, 1));
    auto Y = oracles::TestField::random(rng, n);
    BundleTangent r = kowalski_nabla(m, z, LiftPair::vv, {z.x, rng.vec(n, -1, 1)}, Y.map());
    EXPECT_EQ(r.H.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(r.V.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Kowalski, FlatConstantFieldHorizontal) {
  auto m = charts::euclidean(2);
  auto z = bp(v2(0.2, 0.4), v2(1, -1));
  auto Y = SmoothMap::forward(2, 2, [](const auto& x) {
    using S = typename std::decay_t<decltype(x)>::value_type;
    return std::vector<S>{S(3.0) + S(0.0) * x[0], S(-1.0)};
  });
  BundleTangent r = kowalski_nabla(m, z, LiftPair::hh, {z.x, v2(1, 2)}, Y);
  EXPECT_EQ(r.H.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(r.V.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Kowalski, MatchesLeviCivitaOfSasakiMatrix) {
  oracles::Rng rng(26);
  std::vector<ChartedManifold> ms{charts::euclidean(2), charts::conformal(2, 1.0), charts::conformal(2, -1.0)};
  for (const auto& m : ms)
    for (int k = 0; k < 6; ++k) {
      auto z = bp(rng.vec(2, -0.6, 0.6), rng.vec(2, -1, 1));
      VectorXd X = rng.vec(2, -1, 1);
      auto Y = oracles::TestField::random(rng, 2);
      for (LiftPair kind : {LiftPair::hh, LiftPair::vh, LiftPair::hv, LiftPair::vv}) {
        BundleTangent lib = kowalski_nabla(m, z, kind, {z.x, X}, Y.map());
        BundleTangent ref = oracles::kowalski_oracle(m, z, kind, X, Y);
        EXPECT_LE(oracles::sasaki_relative_error(m, z, lib, ref), 1e-4) << m.name() << " " << to_string(kind);
      }
    }
}

TEST(Kowalski, SasakiMetricCompatibility) {
  // X^h g_s(Y^h, Z^v) = 0 = g_s(nabla Y^h, Z^v) + g_s(Y^h, nabla Z^v), at any z.
  oracles::Rng rng(27);
  auto m = charts::conformal(2, 1.0);
  for (int k = 0; k < 10; ++k) {
    auto z = bp(rng.vec(2, -0.6, 0.6), rng.vec(2, -1, 1));
    VectorXd X = rng.vec(2, -1, 1);
    auto Y = oracles::TestField::random(rng, 2), Z = oracles::TestField::random(rng, 2);
    BundleTangent yh{z, Y(z.x.coords), VectorXd::Zero(2)};
    BundleTangent zv{z, VectorXd::Zero(2), Z(z.x.coords)};
    double lhs = sasaki_inner(m, z, kowalski_nabla(m, z, LiftPair::hh, {z.x, X}, Y.map()), zv) +
                 sasaki_inner(m, z, yh, kowalski_nabla(m, z, LiftPair::hv, {z.x, X}, Z.map()));
    EXPECT_NEAR(lhs, 0.0, 1e-12);
  }
}

TEST(Kowalski, RejectsForeignBase) {
  auto m = charts::euclidean(2);
  auto z = bp(v2(0, 0), v2(0, 0));
  oracles::Rng rng(28);
  auto Y = oracles::TestField::random(rng, 2).map();
  EXPECT_THROW(kowalski_nabla(m, z, LiftPair::hh, {Point{v2(1, 0)}, v2(1, 0)}, Y), ContractViolation);
}
