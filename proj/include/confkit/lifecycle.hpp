#pragma once

// Update, extension and removal as pure, specification-gated and reversible
// transformations of configurations.

#include <cstdint>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "confkit/typecheck.hpp"

namespace confkit {

/// Replace components by newer ones of the same type. References to an old
/// id (children and dependencies) are rewritten to its replacement.
struct UpdateChange {
  std::vector<std::pair<ComponentId, Component>> replacements;
  friend bool operator==(const UpdateChange&, const UpdateChange&) = default;
};

struct Attachment {
  ComponentId root;    // root of a new fragment
  ComponentId parent;  // existing composite that receives it
  friend bool operator==(const Attachment&, const Attachment&) = default;
};

/// Add components. New components may form subtrees among themselves; each
/// fragment root is attached to an existing composite.
struct ExtendChange {
  std::vector<Component> components;
  std::vector<Attachment> attachments;
  friend bool operator==(const ExtendChange&, const ExtendChange&) = default;
};

/// Remove components together with their subtrees.
struct RemoveChange {
  std::vector<ComponentId> ids;
  friend bool operator==(const RemoveChange&, const RemoveChange&) = default;
};

using ChangeSet = std::variant<ExtendChange, UpdateChange, RemoveChange>;

struct JournalEntry {
  ChangeSet change;
  ChangeSet inverse;
  std::uint64_t sequence = 0;
  // fingerprint() of the configuration before and after the change
  std::uint64_t before = 0;
  std::uint64_t after = 0;

  friend bool operator==(const JournalEntry&, const JournalEntry&) = default;
};

struct Applied {
  Configuration config;
  JournalEntry entry;
};

// Every operation is atomic: on error nothing is returned and the input is
// untouched. Results are validated and must comply with `cs`, otherwise
// Error(WouldViolateSpec) is thrown with the failures as details.

Applied extend(const Configuration& c, const ExtendChange& change, const ConfigurationSpec& cs,
               const CheckOptions& options = {}, std::uint64_t sequence = 0);

Applied update(const Configuration& c, const UpdateChange& change, const ConfigurationSpec& cs,
               const CheckOptions& options = {}, std::uint64_t sequence = 0);

/// Refuses to remove the root (RootRemoval) or anything another remaining
/// component depends on (DependencyGuard, dependents as details).
Applied remove(const Configuration& c, const std::set<ComponentId>& ids,
               const ConfigurationSpec& cs, const CheckOptions& options = {},
               std::uint64_t sequence = 0);

Applied apply(const Configuration& c, const ChangeSet& change, const ConfigurationSpec& cs,
              const CheckOptions& options = {}, std::uint64_t sequence = 0);

/// Restores the configuration `entry` was applied to. Throws
/// Error(JournalMismatch) unless `c` is exactly the result of `entry`.
Configuration undo(const Configuration& c, const JournalEntry& entry);

}  // namespace confkit
