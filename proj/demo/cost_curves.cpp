// sequential-step cost against memory budget for the two named update rules,
// plus the statistics of a typical random rule at matching size

#include <embedlab/embedlab.hpp>

#include <cstdio>

using namespace embedlab;

namespace {

void print_table(const char* name, const FunctionStats& stats,
                 const std::vector<std::int64_t>& budgets) {
  std::printf("%s: domain %lld, image %lld, fixed points %lld\n", name,
              static_cast<long long>(stats.domain),
              static_cast<long long>(stats.image_size),
              static_cast<long long>(stats.fixed_points));
  std::printf("  %-10s %-22s %-s\n", "memory", "classical steps", "quantum steps");
  for (const CostReport& r : tradeoff_table(stats, budgets)) {
    if (r.infinite)
      std::printf("  %-10lld %-22s %d (0 quantum memory)\n",
                  static_cast<long long>(r.m), "unbounded", r.quantum_cost);
    else
      std::printf("  %-10lld [%lld, %lld]%*s %d (0 quantum memory)\n",
                  static_cast<long long>(r.m),
                  static_cast<long long>(r.interval_lo),
                  static_cast<long long>(r.interval_hi),
                  static_cast<int>(18 - std::to_string(r.interval_lo).size() -
                                   std::to_string(r.interval_hi).size()),
                  "", r.quantum_cost);
  }
  std::printf("\n");
}

}  // namespace

int main() {
  const std::vector<std::int64_t> budgets{0, 1, 2, 4, 16, 64, 256};
  print_table("cyclic increment, 8 bits",
              named_function_stats(NamedFunction::AddOneModD, 8), budgets);
  print_table("saturating shift, 8 bits",
              named_function_stats(NamedFunction::SaturatingShift, 8), budgets);

  const TypicalitySample t = typicality_sample(256, 400, 1);
  std::printf("random rules on 256 states (400 samples):\n");
  std::printf("  mean image size   %8.2f   (predicted %8.2f)\n", t.mean_image,
              t.predicted_image_mean);
  std::printf("  mean fixed points %8.2f   (predicted %8.2f)\n", t.mean_fixed,
              t.predicted_fixed_mean);
  std::printf("a typical rule is far from bijective, so the classical cost of\n"
              "an exact one-shot implementation explodes while two quantum\n"
              "stages always suffice\n");
  return 0;
}
