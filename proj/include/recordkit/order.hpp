#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "recordkit/errors.hpp"

namespace recordkit {

enum class ComparisonOutcome { Less, Equal, Greater, Incomparable };

enum class RecordKind { StrongUpper, WeakUpper, StrongLower, WeakLower };

inline const char* to_string(ComparisonOutcome o) {
  switch (o) {
    case ComparisonOutcome::Less: return "less";
    case ComparisonOutcome::Equal: return "equal";
    case ComparisonOutcome::Greater: return "greater";
    case ComparisonOutcome::Incomparable: return "incomparable";
  }
  return "?";
}

inline const char* to_string(RecordKind k) {
  switch (k) {
    case RecordKind::StrongUpper: return "strong-upper";
    case RecordKind::WeakUpper: return "weak-upper";
    case RecordKind::StrongLower: return "strong-lower";
    case RecordKind::WeakLower: return "weak-lower";
  }
  return "?";
}

inline RecordKind parse_record_kind(const std::string& s) {
  if (s == "strong-upper") return RecordKind::StrongUpper;
  if (s == "weak-upper") return RecordKind::WeakUpper;
  if (s == "strong-lower") return RecordKind::StrongLower;
  if (s == "weak-lower") return RecordKind::WeakLower;
  throw ParseError("unknown record kind: " + s);
}

/// Total order on the real line. Equality is exact value comparison, no epsilon.
struct RealSpace {
  using Element = double;

  std::size_t dimension() const { return 1; }

  bool valid(double x) const { return !std::isnan(x); }

  ComparisonOutcome compare(double x, double y) const {
    if (x < y) return ComparisonOutcome::Less;
    if (x > y) return ComparisonOutcome::Greater;
    return ComparisonOutcome::Equal;
  }
};

/// Componentwise partial order on R^d. Less/Greater require weak agreement in
/// every coordinate and strict in at least one; mixed directions are Incomparable.
class VectorSpace {
 public:
  using Element = std::vector<double>;

  explicit VectorSpace(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw DomainError("VectorSpace dimension must be positive");
  }

  std::size_t dimension() const { return dim_; }

  bool valid(const Element& x) const {
    if (x.size() != dim_) return false;
    for (double c : x)
      if (std::isnan(c)) return false;
    return true;
  }

  ComparisonOutcome compare(const Element& x, const Element& y) const {
    if (x.size() != dim_ || y.size() != dim_)
      throw InvalidElement("dimension mismatch in VectorSpace::compare");
    bool some_less = false, some_greater = false;
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] < y[i])
        some_less = true;
      else if (x[i] > y[i])
        some_greater = true;
    }
    if (some_less && some_greater) return ComparisonOutcome::Incomparable;
    if (some_less) return ComparisonOutcome::Less;
    if (some_greater) return ComparisonOutcome::Greater;
    return ComparisonOutcome::Equal;
  }

 private:
  std::size_t dim_;
};

template <class S>
concept OrderedSpace = requires(const S s, const typename S::Element& a, const typename S::Element& b) {
  { s.compare(a, b) } -> std::same_as<ComparisonOutcome>;
  { s.valid(a) } -> std::same_as<bool>;
  { s.dimension() } -> std::convertible_to<std::size_t>;
};

/// Whether `candidate` displaces `incumbent` as the next record of the given
/// kind. Incomparable never beats.
template <OrderedSpace S>
bool beats(const S& space, RecordKind kind, const typename S::Element& candidate,
           const typename S::Element& incumbent) {
  const ComparisonOutcome o = space.compare(candidate, incumbent);
  switch (kind) {
    case RecordKind::StrongUpper: return o == ComparisonOutcome::Greater;
    case RecordKind::WeakUpper:
      return o == ComparisonOutcome::Greater || o == ComparisonOutcome::Equal;
    case RecordKind::StrongLower: return o == ComparisonOutcome::Less;
    case RecordKind::WeakLower:
      return o == ComparisonOutcome::Less || o == ComparisonOutcome::Equal;
  }
  return false;
}

}  // namespace recordkit
