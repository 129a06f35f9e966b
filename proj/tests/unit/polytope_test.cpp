#include <gtest/gtest.h>

#include <numbers>

#include "wnl/bellfamily.hpp"
#include "wnl/polytope.hpp"

using namespace wnl;

namespace {

constexpr double kPi = std::numbers::pi;

PCritCertificate zx_certificate(const VertexSet& vs) {
  PCritSolver solver(vs);
  return pcrit_at_angles(solver, MeasurementAngles::pauli_zx());
}

}  // namespace

TEST(PCritLp, FourPartyPauliThreshold) {
  const VertexSet vs(4, 2);
  const PCritCertificate cert = zx_certificate(vs);
  EXPECT_NEAR(cert.p_crit, 2.0 / 9.0, 1e-9);
  EXPECT_TRUE(cert.verified);
  EXPECT_FALSE(cert.null_facet());
  const VerificationReport r = verify_certificate(cert, vs);
  EXPECT_TRUE(r.passed) << r.message;
  EXPECT_EQ(r.exact_max, cert.facet.beta);
  EXPECT_GT(r.gap_below, 0);
}

TEST(PCritLp, IdenticalPointsAreLocal) {
  const VertexSet vs(4, 2);
  const auto vac = product_point(4, MeasurementAngles::pauli_zx());
  const PCritCertificate cert = pcrit_lp(vac, vac, vs);
  EXPECT_EQ(cert.p_crit, 0.0);
  EXPECT_TRUE(cert.null_facet());
  EXPECT_TRUE(cert.verified);
}

TEST(PCritLp, LocalInteriorPointHasNullFacet) {
  const VertexSet vs(5, 2);
  const MeasurementAngles ang({0.4, 1.3});
  const auto w = w_point(5, ang);
  const auto vac = product_point(5, ang);
  const auto inside = mix(w, vac, 0.8);
  const PCritCertificate cert = pcrit_lp(inside, vac, vs);
  EXPECT_LE(cert.p_crit, 1e-9);
  EXPECT_TRUE(cert.null_facet());
  EXPECT_TRUE(cert.verified);
  EXPECT_FALSE(cert.witness.support.empty());
}

TEST(PCritLp, MatchesFamilyForEvenParties) {
  for (int n : {6, 8}) {
    const VertexSet vs(n, 2);
    const PCritCertificate cert = zx_certificate(vs);
    EXPECT_NEAR(cert.p_crit, pcrit_family_formula(n).get_d(), 1e-7) << n;
    EXPECT_TRUE(cert.verified);
  }
}

TEST(PCritLp, OddPartiesAreNonlocal) {
  const VertexSet vs(3, 2);
  SearchConfig cfg;
  const PCritCertificate cert = optimize_angles(vs, cfg);
  EXPECT_GT(cert.p_crit, 0.25);
  EXPECT_TRUE(cert.verified);
}

TEST(PCritLp, ColumnGenerationAgreesWithFullLoad) {
  const VertexSet vs(6, 2);
  LpOptions gen;
  gen.full_load_limit = 0;
  gen.batch = 4;
  PCritSolver full(vs);
  PCritSolver lazy(vs, gen);
  const MeasurementAngles ang({0.5, 2.3});
  const auto w = w_point(6, ang);
  const auto vac = product_point(6, ang);
  const PCritCertificate a = full.solve(w, vac);
  const PCritCertificate b = lazy.solve(w, vac);
  EXPECT_NEAR(a.p_crit, b.p_crit, 1e-8);
  EXPECT_TRUE(a.verified);
  EXPECT_TRUE(b.verified);
  EXPECT_GT(b.witness.pricing_rounds, 0);
}

TEST(Certificate, CorruptedFacetFails) {
  const VertexSet vs(4, 2);
  const PCritCertificate cert = zx_certificate(vs);
  for (std::size_t i = 0; i < cert.facet.alpha.size(); ++i) {
    for (int delta : {-1, 1}) {
      PCritCertificate bad = cert;
      bad.facet.alpha[i] += delta;
      EXPECT_FALSE(verify_certificate(bad, vs).passed) << "coefficient " << i << " delta " << delta;
    }
  }
}

TEST(Certificate, NullFacetAtZeroPasses) {
  const VertexSet vs(4, 2);
  const auto w = w_point(4, MeasurementAngles::pauli_zx());
  const auto vac = product_point(4, MeasurementAngles::pauli_zx());
  PCritCertificate cert(w, vac);
  cert.n = 4;
  cert.m = 2;
  EXPECT_TRUE(verify_certificate(cert, vs).passed);
  cert.p_crit = 0.1;
  EXPECT_FALSE(verify_certificate(cert, vs).passed);
}

TEST(Certificate, ScaledFacetStillVerifies) {
  const VertexSet vs(4, 2);
  PCritCertificate cert = zx_certificate(vs);
  for (auto& a : cert.facet.alpha) a *= 3;
  cert.facet.beta *= 3;
  EXPECT_TRUE(verify_certificate(cert, vs).passed);
}

TEST(Certificate, WrongBoundFails) {
  const VertexSet vs(4, 2);
  PCritCertificate cert = zx_certificate(vs);
  cert.facet.beta += 1;
  const VerificationReport r = verify_certificate(cert, vs);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.bound_valid);
  EXPECT_FALSE(r.bound_attained);
}

TEST(Certificate, NoisierPointsAreViolated) {
  const VertexSet vs(6, 2);
  const PCritCertificate cert = zx_certificate(vs);
  const auto just_below = mix(cert.p1, cert.p0, cert.p_crit - 1e-6);
  EXPECT_GT(apply_functional(cert.facet, just_below), to_long_double(cert.facet.beta));
  const auto above = mix(cert.p1, cert.p0, cert.p_crit + 1e-3);
  EXPECT_LT(apply_functional(cert.facet, above), to_long_double(cert.facet.beta));
}

TEST(Search, CanonicalAngles) {
  const auto a = canonical_angles(std::vector<double>{2.0, 0.5});
  const auto b = canonical_angles(std::vector<double>{0.5 + kPi, 2.0 - 2 * kPi});
  const auto c = canonical_angles(std::vector<double>{kPi - 2.0, kPi - 0.5});
  EXPECT_EQ(a.size(), 2u);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_NEAR(a[j], b[j], 1e-12);
    EXPECT_NEAR(a[j], c[j], 1e-12);
  }
  EXPECT_LE(a[0], a[1]);
}

TEST(Search, NeverWorseThanPauliSettings) {
  const PCritCertificate cert = optimize_angles(4, 2);
  EXPECT_GE(cert.p_crit, 2.0 / 9.0 - 1e-7);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.angles.size(), 2u);
}

TEST(Search, TwoPartiesViolateWithTunedAngles) {
  const PCritCertificate cert = optimize_angles(2, 2);
  EXPECT_GT(cert.p_crit, 0.0);
  EXPECT_TRUE(cert.verified);
}

TEST(Search, SeedDeterminesResult) {
  SearchConfig cfg;
  cfg.seed = 42;
  const PCritCertificate a = optimize_angles(5, 2, cfg);
  const PCritCertificate b = optimize_angles(5, 2, cfg);
  EXPECT_EQ(a.p_crit, b.p_crit);
  EXPECT_EQ(a.angles, b.angles);
}

TEST(FunctionalMax, FamilyBoundAtFourParties) {
  const VertexSet vs(4, 2);
  const auto [value, argmax] = functional_max(family_coefficients(4), vs);
  EXPECT_EQ(value, 168);
  EXPECT_EQ(vs.strategy(argmax), StrategyCounts::from_tuple(4, 0, 0, 0));
}
