#pragma once

// Unification of specifications and type inference of the minimal
// specification satisfied by a configuration.

#include <map>
#include <set>
#include <string>

#include "confkit/model.hpp"

namespace confkit {

/// Component specifications keyed by type, at most one per type. Unlike a
/// ConfigurationSpec it need not satisfy closure, root or interval-sum
/// conditions: intermediate and final inference results routinely don't.
struct SpecSet {
  std::map<std::string, ComponentSpec> specs;

  const ComponentSpec* find(const std::string& ctype) const;
  bool empty() const { return specs.empty(); }
  std::size_t size() const { return specs.size(); }

  static SpecSet single(ComponentSpec spec);
  /// Throws Error(InvalidSpec) if two specs share a type.
  static SpecSet from(const ConfigurationSpec& cs);
  ConfigurationSpec to_configuration_spec(std::string name = {}) const;

  friend bool operator==(const SpecSet&, const SpecSet&) = default;
};

using ChildEntries = std::map<AbstractComponentId, Interval>;

enum class LeafRule {
  // Leaves infer total [0,0], matching the worked inference results.
  Merged,
  // Leaves infer total [1,1], the rule as literally written.
  Faithful,
};

struct InferenceOptions {
  LeafRule leaf_rule = LeafRule::Merged;
};

/// Type-disjoint entries pass through; same-type entries are merged.
/// Each side must hold at most one entry per type (std::invalid_argument).
std::set<AbstractComponentId> unify_dependencies(const std::set<AbstractComponentId>& a,
                                                 const std::set<AbstractComponentId>& b);

/// One-sided entries are widened to lower bound 0; same-type entries merge
/// identifiers and take [min lo, max hi].
ChildEntries unify_children(const ChildEntries& a, const ChildEntries& b);

SpecSet unify(const SpecSet& a, const SpecSet& b);

/// Rules for a single component. Dependencies and children are grouped by
/// type and each group folded with ⊕.
SpecSet infer_component(const Component& c, const InferenceOptions& options = {});

/// Fold of unify over every component. Throws ValidationError
/// (NotAConfiguration) on a malformed configuration.
SpecSet infer(const Configuration& c, const InferenceOptions& options = {});

/// infer() for a configuration already known to be well formed.
SpecSet infer_unchecked(const Configuration& c, const InferenceOptions& options = {});

}  // namespace confkit
