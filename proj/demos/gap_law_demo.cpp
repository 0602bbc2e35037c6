// Compares the closed-form law of the gap between the first two record
// times against direct simulation: P(D_2 = k) = 1/(k(k+1)) no matter which
// continuous law generates the data.

#include <cstdio>

#include "recordkit/laws.hpp"
#include "recordkit/mc.hpp"

int main() {
  using namespace recordkit;

  const auto dists = {DistributionSpec::uniform(0, 1), DistributionSpec::exponential(2.0)};
  std::printf("%4s %12s %14s %14s\n", "k", "law", "unif(0,1) MC", "exp(2) MC");
  for (std::int64_t k = 1; k <= 8; ++k) {
    const double law = laws::interrecord_joint_pmf({k}).value;
    double est[2];
    int i = 0;
    for (const auto& d : dists) {
      const auto cells = mc::count_delta_single(d, 8, {200000, 16, 12345, {}});
      est[i++] = static_cast<double>(cells.counts[k - 1]) / static_cast<double>(cells.trials);
    }
    std::printf("%4lld %12.6f %14.6f %14.6f\n", static_cast<long long>(k), law, est[0], est[1]);
  }
  return 0;
}
