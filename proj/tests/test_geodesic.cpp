#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sasaki/sasaki.hpp"
#include "support/oracles.hpp"

using namespace sasaki;
using Eigen::VectorXd;

namespace {

VectorXd v2(double a, double b) { return (VectorXd(2) << a, b).finished(); }

double state_diff(const BundleGeodesicState& a, const BundleGeodesicState& b) {
  return (a.pack() - b.pack()).cwiseAbs().maxCoeff();
}

BundleGeodesicState random_state(oracles::Rng& rng, int n, double spread) {
  return {rng.vec(n, -spread, spread), rng.vec(n, -0.5, 0.5), rng.vec(n, -1, 1), rng.vec(n, -0.5, 0.5)};
}

}  // namespace

TEST(Geodesic, FlatPlaneIsAffine) {
  BundleGeodesicState s0{v2(0, 0), v2(1, 0), v2(0, 0), v2(0, 1)};
  Trace t = integrate(charts::euclidean(2), s0, 1.0, 1e-3);
  ASSERT_FALSE(t.boundary_exit);
  EXPECT_EQ(t.records.size(), 1001u);
  EXPECT_DOUBLE_EQ(t.back().sigma, 1.0);
  EXPECT_LT((t.back().state.x - v2(1, 0)).norm(), 1e-14);
  EXPECT_LT((t.back().state.xi - v2(0, 1)).norm(), 1e-14);
  EXPECT_NEAR(t.back().energy, 2.0, 1e-14);
}

TEST(Geodesic, EnergyIsConserved) {
  oracles::Rng rng(41);
  for (const auto& m : {charts::conformal(2, 1.0), charts::conformal(2, -1.0), charts::sphere_band()}) {
    for (int k = 0; k < 3; ++k) {
      BundleGeodesicState s0 = random_state(rng, 2, 0.3);
      Trace t = integrate(m, s0, 1.0, 1e-3);
      ASSERT_FALSE(t.boundary_exit) << m.name();
      EXPECT_LE(t.energy_drift, 1e-8) << m.name();
    }
  }
}

TEST(Geodesic, MatchesTwoNDimensionalGeodesicOfSasakiMatrix) {
  oracles::Rng rng(42);
  struct Case {
    ChartedManifold m;
    double tol;
  };
  for (const auto& c : {Case{charts::euclidean(2), 1e-10}, Case{charts::conformal(2, 1.0), 1e-6},
                        Case{charts::conformal(2, -1.0), 1e-6}, Case{charts::sphere_band(), 1e-6}}) {
    BundleGeodesicState s0 = random_state(rng, 2, 0.3);
    Trace t = integrate(c.m, s0, 0.5, 1e-3);
    ASSERT_FALSE(t.boundary_exit);
    BundleGeodesicState ref = oracles::geodesic_2n(c.m, s0, 0.5, 500);
    EXPECT_LE(state_diff(t.back().state, ref), c.tol) << c.m.name();
  }
}

TEST(Geodesic, LibraryOracleAgrees) {
  oracles::Rng rng(43);
  auto m = charts::conformal(2, 1.0);
  BundleGeodesicState s0 = random_state(rng, 2, 0.3);
  Trace a = integrate(m, s0, 0.3, 1e-3);
  Trace b = oracle_integrate(m, s0, 0.3, 1e-3, 1e-3);
  ASSERT_EQ(a.records.size(), b.records.size());
  EXPECT_LE(max_state_divergence(a, b), 1e-6);
}

TEST(Geodesic, ParallelFieldProjectsToBaseGeodesic) {
  // xi' = 0 along x makes x a geodesic of the base.
  oracles::Rng rng(44);
  for (const auto& m : {charts::conformal(2, 1.0), charts::sphere_band()}) {
    VectorXd x0 = rng.vec(2, -0.3, 0.3), v0 = rng.vec(2, -0.7, 0.7), xi0 = rng.vec(2, -1, 1);
    LocalGeometry geo = m.geometry(x0, false);
    BundleGeodesicState s0{x0, v0, xi0, -geo.gamma_contract(v0, xi0)};
    Trace t = integrate(m, s0, 1.0, 1e-3);
    auto base = integrate_base(m, x0, v0, 1.0, 1e-3);
    ASSERT_EQ(base.size(), t.records.size());
    double d = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k)
      d = std::max(d, (base[k].second.head(2) - t.records[k].state.x).cwiseAbs().maxCoeff());
    EXPECT_LE(d, 1e-8) << m.name();
  }
}

TEST(Geodesic, FourthOrderConvergence) {
  auto m = charts::conformal(2, 1.0);
  BundleGeodesicState s0{v2(0.1, -0.2), v2(0.8, 0.5), v2(1.0, 0.5), v2(-0.3, 0.6)};
  BundleGeodesicState ref = integrate(m, s0, 1.0, 1e-3).back().state;
  double e1 = state_diff(integrate(m, s0, 1.0, 0.1).back().state, ref);
  double e2 = state_diff(integrate(m, s0, 1.0, 0.05).back().state, ref);
  EXPECT_GE(e1 / e2, 12.0);
  EXPECT_LE(e1 / e2, 20.0);
}

TEST(Geodesic, StopsAtChartBoundary) {
  BundleGeodesicState s0{v2(0, 0), v2(1, 0), v2(0, 0), v2(0, 0)};
  Trace t = integrate(charts::euclidean(2, 0.5), s0, 2.0, 1e-2);
  EXPECT_TRUE(t.boundary_exit);
  EXPECT_LT(t.back().sigma, 0.51);
  EXPECT_LE(t.back().state.x[0], 0.5);
}

TEST(Geodesic, EffectiveStepDividesInterval) {
  BundleGeodesicState s0{v2(0, 0), v2(1, 0), v2(0, 0), v2(0, 0)};
  Trace t = integrate(charts::euclidean(2), s0, 1.0, 0.3);
  EXPECT_EQ(t.records.size(), 5u);
  EXPECT_DOUBLE_EQ(t.back().sigma, 1.0);
}

TEST(Geodesic, RejectsBadInput) {
  auto m = charts::euclidean(2, 1.0);
  BundleGeodesicState ok{v2(0, 0), v2(1, 0), v2(0, 0), v2(0, 0)};
  EXPECT_THROW(integrate(m, {v2(2, 0), v2(1, 0), v2(0, 0), v2(0, 0)}, 1.0), DomainError);
  EXPECT_THROW(integrate(m, {v2(0, 0), VectorXd::Zero(3), v2(0, 0), v2(0, 0)}, 1.0), ContractViolation);
  EXPECT_THROW(integrate(m, ok, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(integrate(m, ok, -1.0), std::invalid_argument);
}

TEST(TraceCsv, HeaderAndRows) {
  BundleGeodesicState s0{v2(0, 0), v2(1, 0), v2(0, 0), v2(0, 1)};
  Trace t = integrate(charts::euclidean(2), s0, 0.5, 0.25);
  std::ostringstream os;
  write_trace_csv(os, t);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "sigma,x1,x2,xdot1,xdot2,xi1,xi2,xidot1,xidot2,energy");
  std::getline(is, line);
  EXPECT_EQ(line, "0,0,0,1,0,0,0,0,1,2");
  int rows = 1;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(os.str().back(), '\n');
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}
