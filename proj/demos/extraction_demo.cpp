// Extracts the four record kinds from a small sequence and prints the
// events, then shows a 2-dimensional componentwise-order extraction where
// incomparable observations never become records.

#include <cstdio>
#include <vector>

#include "recordkit/extract.hpp"
#include "recordkit/io.hpp"

int main() {
  using namespace recordkit;

  const std::vector<double> seq = {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5};
  for (RecordKind kind : {RecordKind::StrongUpper, RecordKind::WeakUpper,
                          RecordKind::StrongLower, RecordKind::WeakLower}) {
    const auto rs = extract_all(seq, kind);
    std::printf("%-12s:", to_string(kind));
    for (const auto& ev : rs.events)
      std::printf(" (n=%zu t=%zu x=%g)", ev.ordinal, ev.time_index, ev.value);
    std::printf("\n");
  }

  const std::vector<std::vector<double>> planar = {
      {1, 1}, {2, 0}, {2, 2}, {0, 3}, {3, 3}, {4, 1}};
  const auto rs = extract_all(planar, RecordKind::StrongUpper, VectorSpace{2});
  std::printf("\ncomponentwise strong-upper records:\n%s",
              io::record_sequence_to_csv(rs).c_str());
  return 0;
}
