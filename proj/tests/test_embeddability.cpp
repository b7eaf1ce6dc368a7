#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "embedlab/embeddability.hpp"
#include "test_support.hpp"

using namespace embedlab;
namespace et = embedlab::testing;

namespace {

StochasticMatrix two_level(double stay0, double stay1) {
  Matrix m(2, 2);
  m << stay0, 1.0 - stay1, 1.0 - stay0, stay1;
  return StochasticMatrix(std::move(m));
}

Matrix reproduce(const EmbedVerdict& v, int d) {
  REQUIRE(v.witness.has_value());
  return propagate_classical(*v.witness, d).mat();
}

}  // namespace

TEST_CASE("necessary test rejects negative determinants", "[embeddability]") {
  // the flattest doubly stochastic mixer flips more often than it holds
  Matrix m(2, 2);
  m << 1.0 / 3, 2.0 / 3, 2.0 / 3, 1.0 / 3;
  EmbedVerdict v = check_goodman(StochasticMatrix(m));
  REQUIRE(v.status == EmbedStatus::NotEmbeddable);
  REQUIRE_FALSE(v.witness.has_value());
}

TEST_CASE("necessary test passes anything generated by a rate matrix",
          "[embeddability]") {
  auto g = et::rng(314);
  for (int d : {2, 3, 4, 6}) {
    for (int rep = 0; rep < 6; ++rep) {
      GeneratorMatrix gen = et::random_generator(g, d);
      StochasticMatrix p = expm(gen, 0.2 + 0.4 * rep);
      REQUIRE(check_goodman(p).status == EmbedStatus::NecessaryOnlyPass);
    }
  }
}

TEST_CASE("necessary test flags a holding-probability violation beyond d = 2",
          "[embeddability]") {
  Matrix m(3, 3);
  m << 0.1, 0.8, 0.1,
       0.1, 0.1, 0.8,
       0.8, 0.1, 0.1;
  // determinant is positive here but the diagonal product cannot cover it
  EmbedVerdict v = check_goodman(StochasticMatrix(m));
  REQUIRE(v.status == EmbedStatus::NotEmbeddable);
  REQUIRE(v.reason.find("diagonal product") != std::string::npos);
}

TEST_CASE("two-level verdicts come with reproducing witnesses", "[embeddability]") {
  auto g = et::rng(55);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int embeddable_seen = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const double s0 = u01(g), s1 = u01(g);
    StochasticMatrix p = two_level(s0, s1);
    EmbedVerdict v = check_embeddable_2x2(p);
    if (s0 + s1 < 1.0 - 1e-9) {
      REQUIRE(v.status == EmbedStatus::NotEmbeddable);
    } else if (s0 + s1 > 1.0 + 1e-9) {
      REQUIRE(v.status == EmbedStatus::Embeddable);
      REQUIRE((reproduce(v, 2) - p.mat()).cwiseAbs().maxCoeff() < 1e-8);
      ++embeddable_seen;
    }
  }
  REQUIRE(embeddable_seen > 50);
}

TEST_CASE("singular two-level targets embed only in the infinite-time limit",
          "[embeddability]") {
  Matrix m(2, 2);
  m << 0.3, 0.3, 0.7, 0.7;
  EmbedVerdict v = check_embeddable_2x2(StochasticMatrix(m));
  REQUIRE(v.status == EmbedStatus::Embeddable);
  REQUIRE(v.witness->front().infinite);
  REQUIRE((reproduce(v, 2) - m).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("two-level decision coincides with the necessary test on a fine grid",
          "[embeddability]") {
  // at d = 2 the necessary inequalities are also sufficient
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      StochasticMatrix p = two_level(i / 100.0, j / 100.0);
      const bool necessary_ok =
          check_goodman(p).status == EmbedStatus::NecessaryOnlyPass;
      const bool decided =
          check_embeddable_2x2(p).status == EmbedStatus::Embeddable;
      REQUIRE(necessary_ok == decided);
    }
}

TEST_CASE("detailed-balance threshold matches the closed form", "[embeddability]") {
  const double e1 = std::exp(1.0);
  REQUIRE(detailed_balance_threshold(1.0) == Catch::Approx(e1 / (1.0 + e1)).epsilon(1e-15));
  REQUIRE(detailed_balance_threshold(0.0) == Catch::Approx(0.5));
  // threshold is exactly where the detailed-balanced family turns singular
  for (double beta_e : {0.3, 1.0, 2.5}) {
    const double thr = detailed_balance_threshold(beta_e);
    Matrix m(2, 2);
    m << 1.0 - thr * std::exp(-beta_e), thr, thr * std::exp(-beta_e), 1.0 - thr;
    REQUIRE(std::abs(StochasticMatrix(m).mat().determinant()) < 1e-12);
  }
}

TEST_CASE("three-level circulant verdicts at the marked corners", "[embeddability]") {
  REQUIRE(check_circulant3(0.0, 0.0).status == EmbedStatus::Embeddable);
  REQUIRE(check_circulant3(1.0, 0.0).status == EmbedStatus::NotEmbeddable);
  REQUIRE(check_circulant3(0.0, 1.0).status == EmbedStatus::NotEmbeddable);
  REQUIRE(check_circulant3(1.0 / 3, 1.0 / 3).status == EmbedStatus::Embeddable);
  REQUIRE(check_circulant3(0.5, 0.5).status == EmbedStatus::NotEmbeddable);
}

TEST_CASE("three-level circulant witnesses reproduce their targets",
          "[embeddability]") {
  int embeddable_seen = 0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; i + j <= 40; ++j) {
      const double a = i / 40.0, b = j / 40.0;
      EmbedVerdict v = check_circulant3(a, b);
      if (v.status != EmbedStatus::Embeddable) continue;
      ++embeddable_seen;
      REQUIRE((reproduce(v, 3) - circulant3_matrix(a, b).mat())
                  .cwiseAbs()
                  .maxCoeff() < 1e-8);
    }
  REQUIRE(embeddable_seen > 80);
}

TEST_CASE("circulant accepts imply the necessary test passes", "[embeddability]") {
  for (int i = 0; i <= 30; ++i)
    for (int j = 0; i + j <= 30; ++j) {
      const double a = i / 30.0, b = j / 30.0;
      if (check_circulant3(a, b).status != EmbedStatus::Embeddable) continue;
      REQUIRE(check_goodman(circulant3_matrix(a, b)).status ==
              EmbedStatus::NecessaryOnlyPass);
    }
}

TEST_CASE("column-overlap links decide the marked circulant points",
          "[embeddability]") {
  REQUIRE(check_unistochastic_circulant3(1.0 / 3, 1.0 / 3));
  REQUIRE(check_unistochastic_circulant3(0.0, 0.0));
  // links 0, 0, 1/2 cannot close a triangle
  REQUIRE_FALSE(check_unistochastic_circulant3(0.5, 0.5));
}

TEST_CASE("unitary search certifies the flat two-level mixer", "[embeddability]") {
  Matrix m(2, 2);
  m << 1.0 / 3, 2.0 / 3, 2.0 / 3, 1.0 / 3;
  UnistochasticSearch s = check_unistochastic_search(StochasticMatrix(m), 17);
  REQUIRE(s.unistochastic);
  REQUIRE(s.residual < 1e-10);
  // squared moduli of the witness must mirror the matrix in transposed slots
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      REQUIRE(std::norm(s.witness(j, i)) == Catch::Approx(m(i, j)).margin(1e-8));
}

TEST_CASE("unitary search resolves the marked circulant points", "[embeddability]") {
  UnistochasticSearch flat =
      check_unistochastic_search(circulant3_matrix(1.0 / 3, 1.0 / 3), 3);
  REQUIRE(flat.unistochastic);

  UnistochasticSearch blocked =
      check_unistochastic_search(circulant3_matrix(0.5, 0.5), 3);
  REQUIRE_FALSE(blocked.unistochastic);
  REQUIRE(blocked.residual > 1e-8);
}

TEST_CASE("unitary search cannot certify a non-bistochastic matrix",
          "[embeddability]") {
  Matrix m(2, 2);
  m << 0.9, 0.3, 0.1, 0.7;
  UnistochasticSearch s = check_unistochastic_search(StochasticMatrix(m), 11);
  REQUIRE_FALSE(s.unistochastic);
}

TEST_CASE("unitary search refuses dimensions past four", "[embeddability]") {
  auto g = et::rng(4);
  REQUIRE_THROWS_AS(check_unistochastic_search(et::random_stochastic(g, 5)),
                    std::invalid_argument);
}

TEST_CASE("links criterion and unitary search agree on random circulants",
          "[embeddability]") {
  auto g = et::rng(0xa8d1);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int rep = 0; rep < 60; ++rep) {
    double a = u01(g), b = u01(g);
    if (a + b > 1.0) {
      a = 1.0 - a;
      b = 1.0 - b;
    }
    const bool links = check_unistochastic_circulant3(a, b);
    UnistochasticSearch s =
        check_unistochastic_search(circulant3_matrix(a, b), 1000 + rep);
    INFO("a=" << a << " b=" << b << " links=" << links
              << " residual=" << s.residual);
    REQUIRE(links == s.unistochastic);
  }
}
