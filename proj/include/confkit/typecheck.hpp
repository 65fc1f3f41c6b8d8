#pragma once

// Subtyping between specifications, compliance of a configuration with a
// specification, and compatibility between configurations.

#include <string>
#include <vector>

#include "confkit/inference.hpp"

namespace confkit {

bool cs_leq(const ComponentSpec& a, const ComponentSpec& b);
bool spec_leq(const SpecSet& a, const SpecSet& b);
bool spec_leq(const SpecSet& a, const ConfigurationSpec& b);

struct CheckOptions {
  LeafRule leaf_rule = LeafRule::Merged;
  // Also require every spec child with a positive lower bound to occur.
  bool strict_lower_bounds = false;
};

enum class Clause {
  UnknownType,   // no spec node of this type
  Identity,      // identifier not within the spec identifier
  Dependency,    // a dependency not covered by any spec dependency
  Child,         // a child group without a matching spec child entry
  Total,         // child count outside the node interval
  MissingChild,  // strict mode: mandatory child type absent
};

std::string_view to_string(Clause c);

struct ComplianceFailure {
  std::string subject;  // the spec node type
  Clause clause;
  std::string detail;

  friend bool operator==(const ComplianceFailure&, const ComplianceFailure&) = default;
};

struct ComplianceVerdict {
  bool compliant = true;
  std::vector<ComplianceFailure> failures;
};

/// infer(c) ≤ cs, with the first failing clause of each node reported
/// depth-first from the root, siblings ordered by type. Throws
/// ValidationError with kind NotAConfiguration or InvalidSpec.
ComplianceVerdict compliant(const Configuration& c, const ConfigurationSpec& cs,
                            const CheckOptions& options = {});

/// Independent structural checker with the same semantics as compliant():
/// walks the configuration type by type and checks membership, counts and
/// dependencies directly, without unification or subtyping.
ComplianceVerdict direct_check(const Configuration& c, const ConfigurationSpec& cs,
                               const CheckOptions& options = {});

// ---------------------------------------------------------------------------
// Compatibility

enum class NameMode {
  // Names of composite components are labels and are not compared.
  Relaxed,
  // Type, name and origin must all be equal.
  Strict,
};

bool ci_compat_leq(const ComponentId& a, const ComponentId& b, bool composite_a,
                   NameMode mode = NameMode::Relaxed);

/// Every component of `a` has a counterpart in `b`. In relaxed mode the
/// counterpart must also be of the same kind (leaf or composite).
bool config_leq(const Configuration& a, const Configuration& b, NameMode mode = NameMode::Relaxed);

enum class CompatCause { NoCounterpart, VersionRegression, NotCompliantA, NotCompliantB };

std::string_view to_string(CompatCause c);

struct CompatReason {
  std::string subject;
  CompatCause cause;

  friend bool operator==(const CompatReason&, const CompatReason&) = default;
};

struct CompatVerdict {
  bool compatible = true;
  std::vector<CompatReason> reasons;
};

struct CompatOptions {
  NameMode names = NameMode::Relaxed;
  CheckOptions check;
};

/// `b` is compatible with `a`: both comply with `cs` and a ⊑ b.
CompatVerdict compatible(const Configuration& a, const Configuration& b,
                         const ConfigurationSpec& cs, const CompatOptions& options = {});

}  // namespace confkit
