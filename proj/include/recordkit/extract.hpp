#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "recordkit/errors.hpp"
#include "recordkit/order.hpp"

namespace recordkit {

template <class Element>
struct RecordEvent {
  std::size_t ordinal;     // n-th record
  std::size_t time_index;  // realized record time U(n)
  Element value;           // record value X^(n)

  friend bool operator==(const RecordEvent&, const RecordEvent&) = default;
};

template <class Element>
struct RecordSequence {
  RecordKind kind;
  std::vector<RecordEvent<Element>> events;
  std::size_t observations_consumed = 0;

  std::size_t count() const { return events.size(); }

  /// Gaps U(n) - U(n-1) for n >= 2; empty when fewer than two records.
  std::vector<std::size_t> deltas() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < events.size(); ++i)
      out.push_back(events[i].time_index - events[i - 1].time_index);
    return out;
  }

  friend bool operator==(const RecordSequence&, const RecordSequence&) = default;
};

/// Streaming record extractor. The first observation is unconditionally the
/// first record (every kind); afterwards an observation becomes a record iff
/// it beats the incumbent. Incomparable observations are skipped and never
/// update the incumbent. The extractor never terminates on its own; callers
/// impose horizons.
template <OrderedSpace S>
class Extractor {
 public:
  using Element = typename S::Element;

  Extractor(S space, RecordKind kind) : space_(std::move(space)), kind_(kind) {}

  /// Consumes one observation; returns the new record event if one occurred.
  std::optional<RecordEvent<Element>> feed(const Element& x) {
    if (!space_.valid(x)) throw InvalidElement("observation rejected: NaN or wrong dimension");
    ++clock_;
    if (!incumbent_ || beats(space_, kind_, x, *incumbent_)) {
      incumbent_ = x;
      return RecordEvent<Element>{next_ordinal_++, clock_, x};
    }
    return std::nullopt;
  }

  const std::optional<Element>& incumbent() const { return incumbent_; }
  std::size_t next_ordinal() const { return next_ordinal_; }
  std::size_t clock() const { return clock_; }
  RecordKind kind() const { return kind_; }
  const S& space() const { return space_; }

 private:
  S space_;
  RecordKind kind_;
  std::optional<Element> incumbent_;
  std::size_t next_ordinal_ = 1;
  std::size_t clock_ = 0;
};

template <OrderedSpace S>
RecordSequence<typename S::Element> extract_all(const std::vector<typename S::Element>& seq,
                                                RecordKind kind, const S& space) {
  if (seq.empty()) throw EmptyInput("cannot extract records from an empty sequence");
  Extractor<S> ex(space, kind);
  RecordSequence<typename S::Element> out{kind, {}, 0};
  for (const auto& x : seq)
    if (auto ev = ex.feed(x)) out.events.push_back(std::move(*ev));
  out.observations_consumed = ex.clock();
  return out;
}

inline RecordSequence<double> extract_all(const std::vector<double>& seq, RecordKind kind) {
  return extract_all(seq, kind, RealSpace{});
}

/// Inter-record gaps of an extracted sequence; requires at least two records.
template <class Element>
std::vector<std::size_t> inter_record_gaps(const RecordSequence<Element>& rs) {
  if (rs.count() < 2) throw TooFewRecords("need >= 2 records to form gaps");
  return rs.deltas();
}

}  // namespace recordkit
