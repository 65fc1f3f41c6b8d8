#pragma once

// Components, configurations (trees of components), component
// specifications and configuration specifications, together with the
// structural well-formedness checks for both.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "confkit/algebra.hpp"
#include "confkit/error.hpp"

namespace confkit {

/// Payload of a leaf component: opaque element names (usually files).
struct Elements {
  std::set<std::string> names;
  friend bool operator==(const Elements&, const Elements&) = default;
  friend auto operator<=>(const Elements&, const Elements&) = default;
};

/// Payload of a composite component: the identifiers of its children.
struct Children {
  std::set<ComponentId> ids;
  friend bool operator==(const Children&, const Children&) = default;
  friend auto operator<=>(const Children&, const Children&) = default;
};

struct Component {
  ComponentId id;
  std::set<ComponentId> dependencies;
  std::variant<Elements, Children> payload;

  static Component leaf(ComponentId id, std::set<std::string> elements,
                        std::set<ComponentId> dependencies = {});
  static Component composite(ComponentId id, std::set<ComponentId> children,
                             std::set<ComponentId> dependencies = {});

  bool is_leaf() const { return std::holds_alternative<Elements>(payload); }
  bool is_composite() const { return !is_leaf(); }
  // Empty for leaves.
  const std::set<ComponentId>& children() const;

  friend bool operator==(const Component&, const Component&) = default;
  friend auto operator<=>(const Component&, const Component&) = default;
};

/// A set of components. Stored in the order given; equality compares the
/// canonical (sorted) component sets and ignores the label.
struct Configuration {
  std::string name;
  std::vector<Component> components;

  const Component* find(const ComponentId& id) const;
  std::set<ComponentId> cis() const;
  Configuration canonical() const;

  friend bool operator==(const Configuration& a, const Configuration& b);
};

struct ComponentSpec {
  AbstractComponentId aci;
  std::set<AbstractComponentId> dependencies;
  std::map<AbstractComponentId, Interval> children;
  Interval total;

  const std::string& type() const { return aci.ctype; }
  const Interval* child_interval(std::string_view ctype) const;
  const AbstractComponentId* child_aci(std::string_view ctype) const;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
  friend auto operator<=>(const ComponentSpec&, const ComponentSpec&) = default;
};

struct ConfigurationSpec {
  std::string name;
  std::vector<ComponentSpec> specs;

  std::set<AbstractComponentId> acis() const;

  friend bool operator==(const ConfigurationSpec& a, const ConfigurationSpec& b);
};

// ---------------------------------------------------------------------------
// Validation

enum class Condition {
  // configurations
  DuplicateId,
  DependencyChildOverlap,
  ChildrenClosure,
  DependencyClosure,
  UniqueRoot,
  TreeShape,
  Unreachable,
  // configuration specifications
  DistinctTypes,
  DuplicateChildType,
  DependencyChildType,
  DuplicateDependencyType,
  DependencyCoverage,
  IntervalSum,
  RootDeclaration,
  // warnings only
  SuccessorIntervals,
};

std::string_view to_string(Condition c);

struct Violation {
  Condition condition;
  std::vector<std::string> subjects;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // Non-fatal findings; never affect ok().
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
  bool has(Condition c) const;
  const Violation* first(Condition c) const;
};

class ValidationError : public Error {
public:
  ValidationError(ErrorKind kind, const std::string& message, ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// Checks closure of children and dependencies, unique root, tree shape,
/// distinct ids, disjoint children/dependencies and reachability from the
/// root. Violations are data; this never throws.
ValidationReport validate_configuration(const Configuration& c);

/// Checks the six configuration-specification conditions plus the
/// child/dependency type disjointness and one-dependency-per-type rules.
ValidationReport validate_spec(const ConfigurationSpec& cs);

/// Throws ValidationError(NotAConfiguration) when `c` is not well formed.
const Component& root_of(const Configuration& c);

/// The first component that is nobody's child, without validating `c`.
const Component* find_root(const Configuration& c);

const ComponentSpec* spec_node_for_type(const ConfigurationSpec& cs, std::string_view ctype);

/// The spec whose identifier occurs in no children set. Throws
/// ValidationError(InvalidSpec) if there is not exactly one.
const ComponentSpec& root_spec(const ConfigurationSpec& cs);

/// Stable 64-bit digest of the canonical component set (label excluded).
std::uint64_t fingerprint(const Configuration& c);

}  // namespace confkit
