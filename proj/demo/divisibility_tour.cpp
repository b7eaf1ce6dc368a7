// quick tour of the divisibility checkers: a two-level family crossing its
// threshold, a measured transition profile no rate matrix can produce, and
// the unitary that produces it anyway

#include <embedlab/embedlab.hpp>

#include <cstdio>

using namespace embedlab;

namespace {

StochasticMatrix detailed_balanced(double decay_prob, double beta_e) {
  Matrix m(2, 2);
  m << 1.0 - decay_prob * std::exp(-beta_e), decay_prob,
      decay_prob * std::exp(-beta_e), 1.0 - decay_prob;
  return StochasticMatrix(std::move(m));
}

}  // namespace

int main() {
  std::printf("two-level detailed-balanced family, decay probability sweep:\n");
  for (double x : {0.2, 0.5, 0.73, 0.7311, 0.9, 1.0}) {
    const EmbedVerdict v = check_embeddable_2x2(detailed_balanced(x, 1.0));
    std::printf("  x = %-7.4f %-15s %s\n", x, to_string(v.status), v.reason.c_str());
  }
  const double threshold = detailed_balance_threshold(1.0);
  std::printf("closed-form threshold: %.10f\n\n", threshold);

  Matrix measured(2, 2);
  measured << 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0;
  const StochasticMatrix p{std::move(measured)};
  const EmbedVerdict classical = check_goodman(p);
  std::printf("measured profile (1/3, 2/3 mixing): %s -- %s\n",
              to_string(classical.status), classical.reason.c_str());

  const UnistochasticSearch search = check_unistochastic_search(p, 0, 24);
  require(search.unistochastic, "expected a unitary realization");
  const MarkovianRealization r = unistochastic_channel(search.witness);
  std::printf("a recovered unitary reproduces it with extraction error %.2e\n",
              r.achieved_error);
  std::printf("so the profile is quantum-reachable even though no classical\n"
              "rate matrix generates it\n\n");

  std::printf("three-level cyclic family, one slice at b = 0.1:\n");
  for (double a : {0.05, 0.25, 0.55, 0.85}) {
    std::printf("  a = %-5.2f %s\n", a,
                to_string(classify_circulant_point(a, 0.1)));
  }
  return 0;
}
