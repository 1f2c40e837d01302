#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "opconvex/combine.hpp"

using namespace opconvex;
using test_helpers::random_ucp;

namespace {

KrausMap compression_map() {
  return KrausMap(2, {matrix_units(2, 1, 1), matrix_units(2, 2, 1)});
}

}  // namespace

TEST_CASE("op_convex_combine basics") {
  SUBCASE("singleton identity coefficient is neutral") {
    std::mt19937_64 rng(10);
    KrausMap phi = random_ucp(3, 2, rng);
    OperationalPartition one({CMat::Identity(3, 3)});
    CHECK(map_distance(op_convex_combine(one, {phi}), phi) <= 1e-12);
  }

  SUBCASE("scalar coefficients reduce to ordinary convexity") {
    std::mt19937_64 rng(11);
    KrausMap phi1 = random_ucp(2, 2, rng);
    KrausMap phi2 = random_ucp(2, 2, rng);
    double lambda = 0.35;
    CMat eye = CMat::Identity(2, 2);
    OperationalPartition coeffs({(std::sqrt(lambda) * eye).eval(),
                                 (std::sqrt(1.0 - lambda) * eye).eval()});
    KrausMap combined = op_convex_combine(coeffs, {phi1, phi2});

    // Oracle: the ordinary convex combination via Kraus scaling.
    std::vector<CMat> mixture;
    for (const CMat& v : phi1.kraus)
      mixture.push_back((std::sqrt(lambda) * v).eval());
    for (const CMat& v : phi2.kraus)
      mixture.push_back((std::sqrt(1.0 - lambda) * v).eval());
    CHECK(map_distance(combined, KrausMap(2, mixture)) <= 1e-12);
  }

  SUBCASE("bridged combination of two conjugations hits a third") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
      int n = 2 + static_cast<int>(rng() % 3);
      CMat u = random_unitary(n, rng);
      CMat v = random_unitary(n, rng);
      CMat w = random_unitary(n, rng);
      double lambda = 0.05 + 0.9 * (static_cast<double>(rng() % 1000) / 1000.0);
      auto coeffs = bridge_coefficients(u, v, w, lambda);
      KrausMap combined = op_convex_combine(coeffs, {ad(v), ad(w)});
      CHECK(map_distance(combined, ad(u)) <= 1e-9);
    }
  }

  SUBCASE("defining identity holds on the matrix-unit basis") {
    std::mt19937_64 rng(13);
    int n = 3;
    auto coeffs = bridge_coefficients(random_unitary(n, rng), random_unitary(n, rng),
                                      random_unitary(n, rng), 0.42);
    std::vector<KrausMap> maps{random_ucp(n, 2, rng), random_ucp(n, 3, rng)};
    KrausMap combined = op_convex_combine(coeffs, maps);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        CMat eij = matrix_units(n, i, j);
        CMat expected = CMat::Zero(n, n);
        for (std::size_t k = 0; k < maps.size(); ++k) {
          expected += coeffs.members[k] * opconvex::apply(maps[k], eij) *
                      coeffs.members[k].adjoint();
        }
        CHECK(frobenius_distance(opconvex::apply(combined, eij), expected) <= 1e-12);
      }
    }
  }

  SUBCASE("ucp inputs give a ucp output") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 10; ++trial) {
      int n = 2 + static_cast<int>(rng() % 3);
      auto coeffs = bridge_coefficients(random_unitary(n, rng), random_unitary(n, rng),
                                        random_unitary(n, rng), 0.6);
      KrausMap combined =
          op_convex_combine(coeffs, {random_ucp(n, 2, rng), random_ucp(n, 2, rng)});
      ChannelFlags f = classify(combined, 1e-8);
      CHECK(f.cp);
      CHECK(f.unital_defect <= 2e-9 * coeffs.size());
      CHECK(f.unital);
    }
  }

  SUBCASE("rejects non-partitions and mismatched lists") {
    KrausMap phi = identity_map(2);
    OperationalPartition bad({matrix_units(2, 1, 1), matrix_units(2, 1, 2)});
    CHECK_THROWS_AS(op_convex_combine(bad, {phi, phi}), std::invalid_argument);

    OperationalPartition good({matrix_units(2, 1, 1), matrix_units(2, 2, 1)});
    CHECK_THROWS_AS(op_convex_combine(good, {phi}), std::invalid_argument);
    CHECK_THROWS_AS(op_convex_combine(good, {phi, identity_map(3)}),
                    std::invalid_argument);
  }
}

TEST_CASE("validate_witness on the compression map") {
  KrausMap phi = compression_map();
  CMat e11 = matrix_units(2, 1, 1);
  CMat e22 = matrix_units(2, 2, 2);
  CMat flip = matrix_units(2, 1, 2) + matrix_units(2, 2, 1);
  DecompositionWitness w{e11, identity_map(2), e22, ad(flip)};

  WitnessVerdict verdict = validate_witness(phi, w);
  CHECK(verdict.valid);
  CHECK(verdict.residuals.fop_defect <= 1e-14);
  CHECK(verdict.residuals.reconstruction <= 1e-12);
  CHECK(verdict.phi1_ucp);
  CHECK(verdict.phi2_ucp);

  // aa^* = e_11 is a projection, not a scalar; the decomposition does not
  // trivialize even though it is exact.
  CHECK_FALSE(verdict.trivializing);
  CHECK(verdict.residuals.aa_scalar > 0.1);
  REQUIRE(verdict.lambda.has_value());
  CHECK(*verdict.lambda == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("validate_witness on bridged automorphism decompositions") {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    CMat u = random_unitary(n, rng);
    CMat v = random_unitary(n, rng);
    CMat w = random_unitary(n, rng);
    double lambda = 0.05 + 0.9 * (static_cast<double>(rng() % 1000) / 1000.0);

    CMat a = std::sqrt(lambda) * u * v.adjoint();
    CMat b = std::sqrt(1.0 - lambda) * u * w.adjoint();
    DecompositionWitness wit{a, ad(v), b, ad(w)};
    WitnessVerdict verdict = validate_witness(ad(u), wit, 1e-8);

    CHECK(verdict.valid);
    CHECK(verdict.trivializing);
    REQUIRE(verdict.lambda.has_value());
    CHECK(*verdict.lambda == doctest::Approx(lambda).epsilon(1e-10));
    CHECK(verdict.residuals.aa_scalar <= 1e-10);
    CHECK(verdict.residuals.bb_scalar <= 1e-10);
    CHECK(verdict.residuals.proportionality <= 1e-8);
  }
}

TEST_CASE("validate_witness flags tampered coefficients") {
  std::mt19937_64 rng(21);
  CMat u = random_unitary(2, rng);
  CMat v = random_unitary(2, rng);
  CMat w = random_unitary(2, rng);
  CMat a = std::sqrt(0.5) * u * v.adjoint();
  CMat b = std::sqrt(0.5) * u * w.adjoint();

  DecompositionWitness tampered{a, ad(v), (0.9 * b).eval(), ad(w)};
  WitnessVerdict verdict = validate_witness(ad(u), tampered);
  CHECK_FALSE(verdict.valid);
  CHECK(verdict.residuals.fop_defect > 1e-3);
  CHECK_FALSE(verdict.trivializing);
  // Trivialization was not evaluable, so no lambda and a NaN residual.
  CHECK_FALSE(verdict.lambda.has_value());
  CHECK(std::isnan(verdict.residuals.proportionality));
}

TEST_CASE("validate_witness requires ucp inner maps") {
  std::mt19937_64 rng(22);
  CMat u = random_unitary(2, rng);
  // Coefficients stay an exact partition, but the first inner map is the
  // non-unital compression in disguise: its reconstruction may even match,
  // yet the witness must fail the ucp gate.
  CMat a = std::sqrt(0.5) * u;
  CMat b = std::sqrt(0.5) * u;
  KrausMap not_unital(2, {matrix_units(2, 1, 1)});
  DecompositionWitness wit{a, not_unital, b, identity_map(2)};
  WitnessVerdict verdict = validate_witness(ad(u), wit);
  CHECK_FALSE(verdict.phi1_ucp);
  CHECK_FALSE(verdict.valid);
}

TEST_CASE("validate_witness rejects dimension mismatch") {
  DecompositionWitness wit{CMat::Identity(3, 3), identity_map(3),
                           CMat::Identity(3, 3), identity_map(3)};
  CHECK_THROWS_AS(validate_witness(identity_map(2), wit), std::invalid_argument);
}

TEST_CASE("scalar_witness embeds ordinary convexity") {
  SUBCASE("a map mixed with itself trivializes") {
    std::mt19937_64 rng(23);
    KrausMap phi = random_ucp(2, 2, rng);
    DecompositionWitness wit = scalar_witness(0.5, phi, phi);
    WitnessVerdict verdict = validate_witness(phi, wit);
    CHECK(verdict.valid);
    CHECK(verdict.trivializing);
    REQUIRE(verdict.lambda.has_value());
    CHECK(*verdict.lambda == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("a proper mixture of distinct maps does not trivialize") {
    CMat x = matrix_units(2, 1, 2) + matrix_units(2, 2, 1);
    KrausMap phi1 = identity_map(2);
    KrausMap phi2 = ad(x);
    DecompositionWitness wit = scalar_witness(0.5, phi1, phi2);
    KrausMap target = op_convex_combine(
        OperationalPartition({wit.a, wit.b}), {phi1, phi2});

    WitnessVerdict verdict = validate_witness(target, wit);
    CHECK(verdict.valid);
    CHECK_FALSE(verdict.trivializing);
    // The coefficients are scalar; only the proportionality identity fails.
    CHECK(verdict.residuals.aa_scalar <= 1e-14);
    CHECK(verdict.residuals.bb_scalar <= 1e-14);
    CHECK(verdict.residuals.proportionality > 0.1);
  }

  SUBCASE("boundary mixing weights rejected") {
    KrausMap phi = identity_map(2);
    CHECK_THROWS_AS(scalar_witness(0.0, phi, phi), std::invalid_argument);
    CHECK_THROWS_AS(scalar_witness(1.0, phi, phi), std::invalid_argument);
    CHECK_THROWS_AS(scalar_witness(-0.5, phi, phi), std::invalid_argument);
    CHECK_THROWS_AS(scalar_witness(0.5, phi, identity_map(3)),
                    std::invalid_argument);
  }
}

TEST_CASE("trivializing witnesses are always valid") {
  std::mt19937_64 rng(24);
  int trivializing_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    CMat u = random_unitary(n, rng);
    CMat v = random_unitary(n, rng);
    CMat w = random_unitary(n, rng);
    double lambda = 0.1 + 0.8 * (static_cast<double>(rng() % 1000) / 1000.0);
    DecompositionWitness wit{(std::sqrt(lambda) * u * v.adjoint()).eval(), ad(v),
                             (std::sqrt(1.0 - lambda) * u * w.adjoint()).eval(), ad(w)};
    WitnessVerdict verdict = validate_witness(ad(u), wit, 1e-8);
    if (verdict.trivializing) {
      ++trivializing_seen;
      CHECK(verdict.valid);
      CHECK(verdict.lambda.has_value());
    }
  }
  CHECK(trivializing_seen == 40);
}
