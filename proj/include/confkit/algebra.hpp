#pragma once

// Interval arithmetic over N ∪ {∞} and the set-expression algebra used by
// abstract component identifiers.

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace confkit {

using Natural = std::uint64_t;

/// A natural number or infinity. Infinity absorbs addition and compares
/// greater than every finite value.
class NatInf {
public:
  constexpr NatInf() = default;
  constexpr NatInf(Natural value) : value_(value) {}  // NOLINT: implicit by design of N ⊂ N∪{∞}

  static constexpr NatInf infinity() {
    NatInf n;
    n.infinite_ = true;
    return n;
  }

  constexpr bool is_infinite() const { return infinite_; }
  // Undefined for infinity; callers check is_infinite() first.
  constexpr Natural value() const { return value_; }

  friend constexpr NatInf operator+(NatInf a, NatInf b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return NatInf(a.value_ + b.value_);
  }

  friend constexpr bool operator==(const NatInf&, const NatInf&) = default;
  friend constexpr auto operator<=>(const NatInf&, const NatInf&) = default;

  std::string to_string() const;

private:
  // Member order matters for the defaulted comparison: finite < infinite.
  bool infinite_ = false;
  Natural value_ = 0;
};

/// [lo, hi] with lo ≤ hi; hi may be infinite.
class Interval {
public:
  constexpr Interval() = default;
  // Throws Error(InvalidInterval) when lo > hi.
  Interval(Natural lo, NatInf hi);

  static Interval exactly(Natural n) { return Interval(n, n); }
  static Interval at_least(Natural n) { return Interval(n, NatInf::infinity()); }

  constexpr Natural lo() const { return lo_; }
  constexpr NatInf hi() const { return hi_; }

  bool contains(Natural n) const { return lo_ <= n && NatInf(n) <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;

  std::string to_string() const;  // "[2,*]"

private:
  Natural lo_ = 0;
  NatInf hi_ = 0;
};

Interval interval_sum(const Interval& a, const Interval& b);
inline Interval operator+(const Interval& a, const Interval& b) { return interval_sum(a, b); }

/// Left fold of interval_sum; the empty sum is [0,0].
Interval interval_fold_sum(std::span<const Interval> xs);

/// Inclusion: a.lo ≥ b.lo and a.hi ≤ b.hi.
bool interval_included(const Interval& a, const Interval& b);

// ---------------------------------------------------------------------------
// Set expressions

struct NamePattern {
  std::string text;
  bool prefix = false;  // true: every name starting with `text`

  bool matches(std::string_view name) const;
  // Every name matched by *this is matched by `other`.
  bool covered_by(const NamePattern& other) const;

  friend bool operator==(const NamePattern&, const NamePattern&) = default;
  friend auto operator<=>(const NamePattern&, const NamePattern&) = default;
};

/// Any, or a finite union of literal names and prefix patterns. The pattern
/// list is kept reduced (no member covered by another member), so equal
/// denotations have equal representations.
class NameSet {
public:
  NameSet() = default;  // the empty set
  static NameSet any();
  static NameSet literal(std::string name);
  static NameSet prefix(std::string prefix);
  static NameSet of(std::vector<NamePattern> patterns);

  bool is_any() const { return any_; }
  const std::set<NamePattern>& patterns() const { return patterns_; }

  bool contains(std::string_view name) const;
  bool subset_of(const NameSet& other) const;
  NameSet merge(const NameSet& other) const;

  friend bool operator==(const NameSet&, const NameSet&) = default;
  friend auto operator<=>(const NameSet&, const NameSet&) = default;

  std::string to_string() const;

private:
  void reduce();

  bool any_ = false;
  std::set<NamePattern> patterns_;
};

class OriginSet {
public:
  OriginSet() = default;
  static OriginSet any();
  static OriginSet of(std::set<std::string> origins);
  static OriginSet literal(std::string origin) { return of({std::move(origin)}); }

  bool is_any() const { return any_; }
  const std::set<std::string>& origins() const { return origins_; }

  bool contains(std::string_view origin) const;
  bool subset_of(const OriginSet& other) const;
  OriginSet merge(const OriginSet& other) const;

  friend bool operator==(const OriginSet&, const OriginSet&) = default;
  friend auto operator<=>(const OriginSet&, const OriginSet&) = default;

  std::string to_string() const;

private:
  bool any_ = false;
  std::set<std::string> origins_;
};

/// Set of naturals stored as sorted, disjoint, non-adjacent ranges. Finite
/// sets, closed ranges, right-infinite ranges and Any ([0,∞]) all share this
/// normal form.
class VersionSet {
public:
  struct Range {
    Natural lo = 0;
    NatInf hi = 0;
    friend bool operator==(const Range&, const Range&) = default;
    friend auto operator<=>(const Range&, const Range&) = default;
  };

  VersionSet() = default;  // the empty set
  static VersionSet any();
  static VersionSet of(std::set<Natural> versions);
  static VersionSet literal(Natural v) { return of({v}); }
  static VersionSet range(Natural lo, NatInf hi);
  static VersionSet of_ranges(std::vector<Range> ranges);

  bool is_any() const;
  const std::vector<Range>& ranges() const { return ranges_; }

  bool contains(Natural v) const;
  bool subset_of(const VersionSet& other) const;
  VersionSet merge(const VersionSet& other) const;

  friend bool operator==(const VersionSet&, const VersionSet&) = default;
  friend auto operator<=>(const VersionSet&, const VersionSet&) = default;

  std::string to_string() const;

private:
  void normalize();

  std::vector<Range> ranges_;
};

// ---------------------------------------------------------------------------
// Identifiers

/// Concrete identity (type, name, origin, version) of one installed component.
struct ComponentId {
  std::string ctype;
  std::string name;
  std::string origin;
  Natural version = 0;

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
  friend auto operator<=>(const ComponentId&, const ComponentId&) = default;

  std::string to_string() const;  // "(Bin, bin1, IMsk, 1)"
};

/// A component type plus the admissible names, origins and versions.
struct AbstractComponentId {
  std::string ctype;
  NameSet names = NameSet::any();
  OriginSet origins = OriginSet::any();
  VersionSet versions = VersionSet::any();

  static AbstractComponentId any_of(std::string ctype) { return {std::move(ctype)}; }

  friend bool operator==(const AbstractComponentId&, const AbstractComponentId&) = default;
  friend auto operator<=>(const AbstractComponentId&, const AbstractComponentId&) = default;

  std::string to_string() const;
};

AbstractComponentId ci2aci(const ComponentId& ci);
std::set<AbstractComponentId> ci2aci(const std::set<ComponentId>& cis);

/// Componentwise union. Throws Error(TypeMismatch) on differing ctypes.
AbstractComponentId aci_merge(const AbstractComponentId& a, const AbstractComponentId& b);

/// Same ctype and componentwise (pattern-aware) subset.
bool aci_leq(const AbstractComponentId& a, const AbstractComponentId& b);

bool ci_in_aci(const ComponentId& ci, const AbstractComponentId& aci);

}  // namespace confkit
