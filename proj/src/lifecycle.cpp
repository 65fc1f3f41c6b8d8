#include "confkit/lifecycle.hpp"

#include <algorithm>
#include <map>

namespace confkit {

namespace {

struct Outcome {
  Configuration config;
  ChangeSet inverse;
};

Component* find_mut(Configuration& c, const ComponentId& id) {
  auto it = std::find_if(c.components.begin(), c.components.end(),
                         [&](const Component& x) { return x.id == id; });
  return it == c.components.end() ? nullptr : &*it;
}

std::set<ComponentId> rewrite(const std::set<ComponentId>& ids,
                              const std::map<ComponentId, ComponentId>& renames) {
  std::set<ComponentId> out;
  for (const auto& id : ids) {
    auto it = renames.find(id);
    out.insert(it == renames.end() ? id : it->second);
  }
  return out;
}

Outcome extend_unchecked(const Configuration& c, const ExtendChange& change) {
  std::set<ComponentId> existing = c.cis();
  std::set<ComponentId> added;
  for (const auto& comp : change.components) {
    if (existing.contains(comp.id) || !added.insert(comp.id).second) {
      throw Error(ErrorKind::DuplicateComponentId, comp.id.to_string() + " is already present",
                  {comp.id.to_string()});
    }
  }

  std::set<ComponentId> fragment_roots = added;
  for (const auto& comp : change.components) {
    for (const auto& child : comp.children()) fragment_roots.erase(child);
  }

  Configuration out = c;
  std::set<ComponentId> attached;
  for (const auto& a : change.attachments) {
    if (!fragment_roots.contains(a.root)) {
      throw Error(ErrorKind::UnknownComponent,
                  a.root.to_string() + " is not the root of a new fragment", {a.root.to_string()});
    }
    if (!attached.insert(a.root).second) {
      throw Error(ErrorKind::UnknownParent, a.root.to_string() + " is attached more than once",
                  {a.root.to_string()});
    }
    Component* parent = find_mut(out, a.parent);
    if (parent == nullptr || parent->is_leaf()) {
      throw Error(ErrorKind::UnknownParent,
                  a.parent.to_string() + (parent == nullptr ? " is not in the configuration"
                                                            : " is a leaf and cannot hold children"),
                  {a.parent.to_string()});
    }
    std::get<Children>(parent->payload).ids.insert(a.root);
  }
  for (const auto& root : fragment_roots) {
    if (!attached.contains(root)) {
      throw Error(ErrorKind::UnknownParent, "no attachment parent for " + root.to_string(),
                  {root.to_string()});
    }
  }
  out.components.insert(out.components.end(), change.components.begin(), change.components.end());

  RemoveChange inverse;
  inverse.ids.assign(fragment_roots.begin(), fragment_roots.end());
  return {std::move(out), std::move(inverse)};
}

// Removes `ids` and their subtrees; the inverse re-attaches each removed
// subtree top to its former parent.
Outcome remove_unchecked(const Configuration& c, const std::set<ComponentId>& ids) {
  std::map<ComponentId, ComponentId> parent_of;
  for (const auto& comp : c.components) {
    for (const auto& child : comp.children()) parent_of.emplace(child, comp.id);
  }

  std::set<ComponentId> doomed;
  std::vector<ComponentId> stack;
  for (const auto& id : ids) {
    if (c.find(id) == nullptr) {
      throw Error(ErrorKind::UnknownComponent, id.to_string() + " is not in the configuration",
                  {id.to_string()});
    }
    stack.push_back(id);
  }
  while (!stack.empty()) {
    ComponentId id = stack.back();
    stack.pop_back();
    if (!doomed.insert(id).second) continue;
    if (const Component* comp = c.find(id)) {
      stack.insert(stack.end(), comp->children().begin(), comp->children().end());
    }
  }

  ExtendChange inverse;
  Configuration out{c.name, {}};
  for (const auto& comp : c.components) {
    if (doomed.contains(comp.id)) {
      inverse.components.push_back(comp);
      auto p = parent_of.find(comp.id);
      if (p != parent_of.end() && !doomed.contains(p->second)) {
        inverse.attachments.push_back({comp.id, p->second});
      }
      continue;
    }
    Component kept = comp;
    if (auto* children = std::get_if<Children>(&kept.payload)) {
      for (const auto& id : doomed) children->ids.erase(id);
    }
    out.components.push_back(std::move(kept));
  }
  return {std::move(out), std::move(inverse)};
}

Outcome update_unchecked(const Configuration& c, const UpdateChange& change) {
  std::map<ComponentId, ComponentId> renames;
  std::map<ComponentId, const Component*> replacement_for;
  for (const auto& [old_id, next] : change.replacements) {
    if (c.find(old_id) == nullptr) {
      throw Error(ErrorKind::UnknownComponent, old_id.to_string() + " is not in the configuration",
                  {old_id.to_string()});
    }
    if (next.id.ctype != old_id.ctype) {
      throw Error(ErrorKind::TypeChanged,
                  "replacement " + next.id.to_string() + " changes the type of " + old_id.to_string(),
                  {old_id.to_string(), next.id.to_string()});
    }
    if (!replacement_for.emplace(old_id, &next).second) {
      throw Error(ErrorKind::DuplicateComponentId, old_id.to_string() + " is replaced twice",
                  {old_id.to_string()});
    }
    if (!(next.id == old_id)) renames.emplace(old_id, next.id);
  }

  std::set<ComponentId> resulting;
  for (const auto& comp : c.components) {
    auto it = replacement_for.find(comp.id);
    const ComponentId& id = it == replacement_for.end() ? comp.id : it->second->id;
    if (!resulting.insert(id).second) {
      throw Error(ErrorKind::DuplicateComponentId, id.to_string() + " would occur twice",
                  {id.to_string()});
    }
  }

  UpdateChange inverse;
  Configuration out{c.name, {}};
  for (const auto& comp : c.components) {
    auto it = replacement_for.find(comp.id);
    Component next = it == replacement_for.end() ? comp : *it->second;
    if (it != replacement_for.end()) inverse.replacements.emplace_back(next.id, comp);
    next.dependencies = rewrite(next.dependencies, renames);
    if (auto* children = std::get_if<Children>(&next.payload)) {
      children->ids = rewrite(children->ids, renames);
    }
    out.components.push_back(std::move(next));
  }
  return {std::move(out), std::move(inverse)};
}

Outcome apply_unchecked(const Configuration& c, const ChangeSet& change) {
  return std::visit(
      [&](const auto& ch) -> Outcome {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, ExtendChange>) {
          return extend_unchecked(c, ch);
        } else if constexpr (std::is_same_v<T, UpdateChange>) {
          return update_unchecked(c, ch);
        } else {
          return remove_unchecked(c, std::set<ComponentId>(ch.ids.begin(), ch.ids.end()));
        }
      },
      change);
}

void require_configuration(const Configuration& c) {
  auto report = validate_configuration(c);
  if (!report.ok()) {
    throw ValidationError(ErrorKind::NotAConfiguration, "not a configuration", std::move(report));
  }
}

Applied finish(const Configuration& before, Outcome outcome, ChangeSet change,
               const ConfigurationSpec& cs, const CheckOptions& options, std::uint64_t sequence) {
  auto report = validate_configuration(outcome.config);
  if (!report.ok()) {
    throw ValidationError(ErrorKind::ConfigInvalid, "change produces a malformed configuration",
                          std::move(report));
  }
  auto verdict = compliant(outcome.config, cs, options);
  if (!verdict.compliant) {
    std::vector<std::string> details;
    std::string message = "change would violate the specification";
    for (const auto& f : verdict.failures) {
      details.push_back(f.subject + ": " + std::string(to_string(f.clause)) + ": " + f.detail);
    }
    if (!details.empty()) message += " (" + details.front() + ")";
    throw Error(ErrorKind::WouldViolateSpec, message, std::move(details));
  }
  JournalEntry entry{std::move(change), std::move(outcome.inverse), sequence, fingerprint(before),
                     fingerprint(outcome.config)};
  return {std::move(outcome.config), std::move(entry)};
}

}  // namespace

Applied extend(const Configuration& c, const ExtendChange& change, const ConfigurationSpec& cs,
               const CheckOptions& options, std::uint64_t sequence) {
  require_configuration(c);
  return finish(c, extend_unchecked(c, change), change, cs, options, sequence);
}

Applied update(const Configuration& c, const UpdateChange& change, const ConfigurationSpec& cs,
               const CheckOptions& options, std::uint64_t sequence) {
  require_configuration(c);
  return finish(c, update_unchecked(c, change), change, cs, options, sequence);
}

Applied remove(const Configuration& c, const std::set<ComponentId>& ids,
               const ConfigurationSpec& cs, const CheckOptions& options, std::uint64_t sequence) {
  require_configuration(c);
  const ComponentId& root = root_of(c).id;
  if (ids.contains(root)) {
    throw Error(ErrorKind::RootRemoval, "cannot remove the root " + root.to_string(),
                {root.to_string()});
  }
  Outcome outcome = remove_unchecked(c, ids);

  std::set<ComponentId> gone;
  for (const auto& comp : std::get<ExtendChange>(outcome.inverse).components) gone.insert(comp.id);
  std::vector<std::string> dependents;
  std::string message;
  for (const auto& comp : outcome.config.components) {
    for (const auto& dep : comp.dependencies) {
      if (!gone.contains(dep)) continue;
      dependents.push_back(comp.id.to_string());
      if (message.empty()) {
        message = dep.to_string() + " is required by " + comp.id.to_string();
      }
      break;
    }
  }
  if (!dependents.empty()) {
    throw Error(ErrorKind::DependencyGuard, message, std::move(dependents));
  }
  return finish(c, std::move(outcome), RemoveChange{{ids.begin(), ids.end()}}, cs, options, sequence);
}

Applied apply(const Configuration& c, const ChangeSet& change, const ConfigurationSpec& cs,
              const CheckOptions& options, std::uint64_t sequence) {
  return std::visit(
      [&](const auto& ch) -> Applied {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, ExtendChange>) {
          return extend(c, ch, cs, options, sequence);
        } else if constexpr (std::is_same_v<T, UpdateChange>) {
          return update(c, ch, cs, options, sequence);
        } else {
          return remove(c, std::set<ComponentId>(ch.ids.begin(), ch.ids.end()), cs, options,
                        sequence);
        }
      },
      change);
}

Configuration undo(const Configuration& c, const JournalEntry& entry) {
  if (fingerprint(c) != entry.after) {
    throw Error(ErrorKind::JournalMismatch,
                "configuration is not the result of journal entry " + std::to_string(entry.sequence));
  }
  Configuration restored;
  try {
    restored = apply_unchecked(c, entry.inverse).config;
  } catch (const Error& e) {
    throw Error(ErrorKind::JournalMismatch,
                "journal entry " + std::to_string(entry.sequence) + " cannot be reverted: " + e.what());
  }
  if (fingerprint(restored) != entry.before) {
    throw Error(ErrorKind::JournalMismatch,
                "reverting journal entry " + std::to_string(entry.sequence) +
                    " does not restore the recorded configuration");
  }
  return restored;
}

}  // namespace confkit
