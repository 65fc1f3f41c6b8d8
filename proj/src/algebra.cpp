#include "confkit/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "confkit/error.hpp"

namespace confkit {

std::string NatInf::to_string() const {
  return infinite_ ? "*" : std::to_string(value_);
}

Interval::Interval(Natural lo, NatInf hi) : lo_(lo), hi_(hi) {
  if (NatInf(lo) > hi) {
    throw Error(ErrorKind::InvalidInterval,
                "interval lower bound " + std::to_string(lo) + " exceeds upper bound " +
                    hi.to_string());
  }
}

std::string Interval::to_string() const {
  return "[" + std::to_string(lo_) + "," + hi_.to_string() + "]";
}

Interval interval_sum(const Interval& a, const Interval& b) {
  return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval interval_fold_sum(std::span<const Interval> xs) {
  return std::accumulate(xs.begin(), xs.end(), Interval(), interval_sum);
}

bool interval_included(const Interval& a, const Interval& b) {
  return a.lo() >= b.lo() && a.hi() <= b.hi();
}

// ---------------------------------------------------------------------------

bool NamePattern::matches(std::string_view name) const {
  return prefix ? name.starts_with(text) : name == text;
}

bool NamePattern::covered_by(const NamePattern& other) const {
  if (!other.prefix) return !prefix && text == other.text;
  // p* ⊆ q* iff q is a prefix of p; a literal n ⊆ q* iff q is a prefix of n.
  return std::string_view(text).starts_with(other.text);
}

NameSet NameSet::any() {
  NameSet s;
  s.any_ = true;
  return s;
}

NameSet NameSet::literal(std::string name) {
  return of({NamePattern{std::move(name), false}});
}

NameSet NameSet::prefix(std::string prefix) {
  return of({NamePattern{std::move(prefix), true}});
}

NameSet NameSet::of(std::vector<NamePattern> patterns) {
  NameSet s;
  for (auto& p : patterns) {
    if (p.prefix && p.text.empty()) {
      // The empty prefix denotes every name.
      return any();
    }
    s.patterns_.insert(std::move(p));
  }
  s.reduce();
  return s;
}

void NameSet::reduce() {
  if (any_) {
    patterns_.clear();
    return;
  }
  for (auto it = patterns_.begin(); it != patterns_.end();) {
    const bool redundant = std::any_of(patterns_.begin(), patterns_.end(), [&](const NamePattern& q) {
      return !(q == *it) && it->covered_by(q);
    });
    it = redundant ? patterns_.erase(it) : std::next(it);
  }
}

bool NameSet::contains(std::string_view name) const {
  return any_ || std::any_of(patterns_.begin(), patterns_.end(),
                             [&](const NamePattern& p) { return p.matches(name); });
}

bool NameSet::subset_of(const NameSet& other) const {
  if (other.any_) return true;
  if (any_) return false;
  return std::all_of(patterns_.begin(), patterns_.end(), [&](const NamePattern& p) {
    return std::any_of(other.patterns_.begin(), other.patterns_.end(),
                       [&](const NamePattern& q) { return p.covered_by(q); });
  });
}

NameSet NameSet::merge(const NameSet& other) const {
  if (any_ || other.any_) return any();
  NameSet s = *this;
  s.patterns_.insert(other.patterns_.begin(), other.patterns_.end());
  s.reduce();
  return s;
}

std::string NameSet::to_string() const {
  if (any_) return "Names";
  std::string out = "{";
  bool first = true;
  for (const auto& p : patterns_) {
    if (!first) out += ",";
    first = false;
    out += p.text;
    if (p.prefix) out += "*";
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

OriginSet OriginSet::any() {
  OriginSet s;
  s.any_ = true;
  return s;
}

OriginSet OriginSet::of(std::set<std::string> origins) {
  OriginSet s;
  s.origins_ = std::move(origins);
  return s;
}

bool OriginSet::contains(std::string_view origin) const {
  return any_ || origins_.contains(std::string(origin));
}

bool OriginSet::subset_of(const OriginSet& other) const {
  if (other.any_) return true;
  if (any_) return false;
  return std::includes(other.origins_.begin(), other.origins_.end(), origins_.begin(),
                       origins_.end());
}

OriginSet OriginSet::merge(const OriginSet& other) const {
  if (any_ || other.any_) return any();
  OriginSet s = *this;
  s.origins_.insert(other.origins_.begin(), other.origins_.end());
  return s;
}

std::string OriginSet::to_string() const {
  if (any_) return "Origins";
  std::string out = "{";
  bool first = true;
  for (const auto& o : origins_) {
    if (!first) out += ",";
    first = false;
    out += o;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

VersionSet VersionSet::any() { return range(0, NatInf::infinity()); }

VersionSet VersionSet::of(std::set<Natural> versions) {
  VersionSet s;
  for (Natural v : versions) s.ranges_.push_back({v, v});
  s.normalize();
  return s;
}

VersionSet VersionSet::range(Natural lo, NatInf hi) {
  if (NatInf(lo) > hi) {
    throw Error(ErrorKind::InvalidInterval, "empty version range " + std::to_string(lo) +
                                                ".." + hi.to_string());
  }
  VersionSet s;
  s.ranges_.push_back({lo, hi});
  return s;
}

VersionSet VersionSet::of_ranges(std::vector<Range> ranges) {
  VersionSet s;
  for (const auto& r : ranges) {
    if (NatInf(r.lo) > r.hi) {
      throw Error(ErrorKind::InvalidInterval,
                  "empty version range " + std::to_string(r.lo) + ".." + r.hi.to_string());
    }
  }
  s.ranges_ = std::move(ranges);
  s.normalize();
  return s;
}

void VersionSet::normalize() {
  std::sort(ranges_.begin(), ranges_.end());
  std::vector<Range> out;
  for (const auto& r : ranges_) {
    if (!out.empty()) {
      auto& last = out.back();
      // Overlapping or adjacent: [1,2] ∪ [3,5] = [1,5].
      if (last.hi.is_infinite() || r.lo <= last.hi.value() + 1) {
        last.hi = std::max(last.hi, r.hi);
        continue;
      }
    }
    out.push_back(r);
  }
  ranges_ = std::move(out);
}

bool VersionSet::is_any() const {
  return ranges_.size() == 1 && ranges_[0].lo == 0 && ranges_[0].hi.is_infinite();
}

bool VersionSet::contains(Natural v) const {
  return std::any_of(ranges_.begin(), ranges_.end(),
                     [&](const Range& r) { return r.lo <= v && NatInf(v) <= r.hi; });
}

bool VersionSet::subset_of(const VersionSet& other) const {
  // The other side's ranges are disjoint and non-adjacent, so each of our
  // ranges must sit inside a single one of them.
  return std::all_of(ranges_.begin(), ranges_.end(), [&](const Range& r) {
    return std::any_of(other.ranges_.begin(), other.ranges_.end(),
                       [&](const Range& o) { return o.lo <= r.lo && r.hi <= o.hi; });
  });
}

VersionSet VersionSet::merge(const VersionSet& other) const {
  VersionSet s = *this;
  s.ranges_.insert(s.ranges_.end(), other.ranges_.begin(), other.ranges_.end());
  s.normalize();
  return s;
}

std::string VersionSet::to_string() const {
  if (is_any()) return "N";
  std::string out = "{";
  bool first = true;
  for (const auto& r : ranges_) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(r.lo);
    if (!(r.hi == NatInf(r.lo))) out += ".." + r.hi.to_string();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

std::string ComponentId::to_string() const {
  std::ostringstream os;
  os << "(" << ctype << ", " << name << ", " << origin << ", " << version << ")";
  return os.str();
}

std::string AbstractComponentId::to_string() const {
  return "(" + ctype + ", " + names.to_string() + ", " + origins.to_string() + ", " +
         versions.to_string() + ")";
}

AbstractComponentId ci2aci(const ComponentId& ci) {
  return {ci.ctype, NameSet::literal(ci.name), OriginSet::literal(ci.origin),
          VersionSet::literal(ci.version)};
}

std::set<AbstractComponentId> ci2aci(const std::set<ComponentId>& cis) {
  std::set<AbstractComponentId> out;
  for (const auto& ci : cis) out.insert(ci2aci(ci));
  return out;
}

AbstractComponentId aci_merge(const AbstractComponentId& a, const AbstractComponentId& b) {
  if (a.ctype != b.ctype) {
    throw Error(ErrorKind::TypeMismatch,
                "cannot merge identifiers of types " + a.ctype + " and " + b.ctype);
  }
  return {a.ctype, a.names.merge(b.names), a.origins.merge(b.origins),
          a.versions.merge(b.versions)};
}

bool aci_leq(const AbstractComponentId& a, const AbstractComponentId& b) {
  return a.ctype == b.ctype && a.names.subset_of(b.names) && a.origins.subset_of(b.origins) &&
         a.versions.subset_of(b.versions);
}

bool ci_in_aci(const ComponentId& ci, const AbstractComponentId& aci) {
  return aci_leq(ci2aci(ci), aci);
}

}  // namespace confkit
