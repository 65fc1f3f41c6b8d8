#include "confkit/typecheck.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace confkit {

std::string_view to_string(Clause c) {
  switch (c) {
    case Clause::UnknownType: return "unknown-type";
    case Clause::Identity: return "identity";
    case Clause::Dependency: return "dependency";
    case Clause::Child: return "child";
    case Clause::Total: return "total";
    case Clause::MissingChild: return "missing-child";
  }
  return "unknown";
}

std::string_view to_string(CompatCause c) {
  switch (c) {
    case CompatCause::NoCounterpart: return "no-counterpart";
    case CompatCause::VersionRegression: return "version-regression";
    case CompatCause::NotCompliantA: return "not-compliant-A";
    case CompatCause::NotCompliantB: return "not-compliant-B";
  }
  return "unknown";
}

bool cs_leq(const ComponentSpec& a, const ComponentSpec& b) {
  if (!aci_leq(a.aci, b.aci)) return false;
  for (const auto& dep : a.dependencies) {
    if (std::none_of(b.dependencies.begin(), b.dependencies.end(),
                     [&](const AbstractComponentId& d) { return aci_leq(dep, d); })) {
      return false;
    }
  }
  for (const auto& [aci, itv] : a.children) {
    if (std::none_of(b.children.begin(), b.children.end(), [&](const auto& entry) {
          return aci_leq(aci, entry.first) && interval_included(itv, entry.second);
        })) {
      return false;
    }
  }
  return interval_included(a.total, b.total);
}

bool spec_leq(const SpecSet& a, const SpecSet& b) {
  return std::all_of(a.specs.begin(), a.specs.end(), [&](const auto& entry) {
    const ComponentSpec* other = b.find(entry.first);
    return other != nullptr && cs_leq(entry.second, *other);
  });
}

bool spec_leq(const SpecSet& a, const ConfigurationSpec& b) {
  return std::all_of(a.specs.begin(), a.specs.end(), [&](const auto& entry) {
    return std::any_of(b.specs.begin(), b.specs.end(),
                       [&](const ComponentSpec& s) { return cs_leq(entry.second, s); });
  });
}

namespace {

void require_valid(const Configuration& c, const ConfigurationSpec& cs) {
  auto spec_report = validate_spec(cs);
  if (!spec_report.ok()) {
    throw ValidationError(ErrorKind::InvalidSpec, "invalid specification", std::move(spec_report));
  }
  auto config_report = validate_configuration(c);
  if (!config_report.ok()) {
    throw ValidationError(ErrorKind::NotAConfiguration, "not a configuration",
                          std::move(config_report));
  }
}

// Depth-first over types from `root`, siblings in type order, each type
// visited once.
void visit_types(const std::string& root,
                 const std::function<std::set<std::string>(const std::string&)>& child_types,
                 const std::function<void(const std::string&)>& visit) {
  std::set<std::string> seen;
  std::function<void(const std::string&)> go = [&](const std::string& t) {
    if (!seen.insert(t).second) return;
    visit(t);
    for (const auto& u : child_types(t)) go(u);
  };
  go(root);
}

std::optional<ComplianceFailure> check_node(const ComponentSpec& inferred,
                                            const ConfigurationSpec& cs,
                                            const CheckOptions& options) {
  const ComponentSpec* spec = spec_node_for_type(cs, inferred.type());
  const std::string& t = inferred.type();
  if (spec == nullptr) {
    return ComplianceFailure{t, Clause::UnknownType, "no specification for type " + t};
  }
  if (!aci_leq(inferred.aci, spec->aci)) {
    return ComplianceFailure{t, Clause::Identity,
                             inferred.aci.to_string() + " not within " + spec->aci.to_string()};
  }
  for (const auto& dep : inferred.dependencies) {
    if (std::none_of(spec->dependencies.begin(), spec->dependencies.end(),
                     [&](const AbstractComponentId& d) { return aci_leq(dep, d); })) {
      return ComplianceFailure{t, Clause::Dependency,
                               "dependency " + dep.to_string() + " is not allowed"};
    }
  }
  for (const auto& [aci, itv] : inferred.children) {
    const auto match = std::find_if(spec->children.begin(), spec->children.end(), [&](const auto& e) {
      return aci_leq(aci, e.first) && interval_included(itv, e.second);
    });
    if (match == spec->children.end()) {
      const Interval* allowed = spec->child_interval(aci.ctype);
      std::string detail = "children " + aci.to_string() + " " + itv.to_string();
      if (allowed == nullptr) {
        detail += ": type " + aci.ctype + " is not an allowed child";
      } else if (!interval_included(itv, *allowed)) {
        detail += " not within " + allowed->to_string();
      } else {
        detail += " not within " + spec->child_aci(aci.ctype)->to_string();
      }
      return ComplianceFailure{t, Clause::Child, detail};
    }
  }
  if (!interval_included(inferred.total, spec->total)) {
    return ComplianceFailure{t, Clause::Total,
                             "total " + inferred.total.to_string() + " not within " +
                                 spec->total.to_string()};
  }
  if (options.strict_lower_bounds) {
    for (const auto& [aci, itv] : spec->children) {
      if (itv.lo() > 0 && inferred.child_interval(aci.ctype) == nullptr) {
        return ComplianceFailure{t, Clause::MissingChild,
                                 "mandatory child type " + aci.ctype + " " + itv.to_string() +
                                     " is absent"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ComplianceVerdict compliant(const Configuration& c, const ConfigurationSpec& cs,
                            const CheckOptions& options) {
  require_valid(c, cs);
  const SpecSet inferred = infer_unchecked(c, {options.leaf_rule});

  ComplianceVerdict verdict;
  visit_types(
      find_root(c)->id.ctype,
      [&](const std::string& t) {
        std::set<std::string> out;
        for (const auto& entry : inferred.find(t)->children) out.insert(entry.first.ctype);
        return out;
      },
      [&](const std::string& t) {
        if (auto failure = check_node(*inferred.find(t), cs, options)) {
          verdict.failures.push_back(std::move(*failure));
        }
      });
  verdict.compliant = verdict.failures.empty();
  return verdict;
}

ComplianceVerdict direct_check(const Configuration& c, const ConfigurationSpec& cs,
                               const CheckOptions& options) {
  require_valid(c, cs);

  std::map<std::string, std::vector<const Component*>> instances;
  for (const auto& comp : c.components) instances[comp.id.ctype].push_back(&comp);

  auto child_types = [&](const std::string& t) {
    std::set<std::string> out;
    for (const Component* comp : instances.at(t)) {
      for (const auto& child : comp->children()) out.insert(child.ctype);
    }
    return out;
  };

  ComplianceVerdict verdict;
  auto fail = [&](const std::string& t, Clause clause, std::string detail) {
    verdict.failures.push_back({t, clause, std::move(detail)});
  };

  visit_types(find_root(c)->id.ctype, child_types, [&](const std::string& t) {
    const auto& group = instances.at(t);
    const ComponentSpec* spec = spec_node_for_type(cs, t);
    if (spec == nullptr) {
      return fail(t, Clause::UnknownType, "no specification for type " + t);
    }
    for (const Component* comp : group) {
      if (!ci_in_aci(comp->id, spec->aci)) {
        return fail(t, Clause::Identity, comp->id.to_string() + " not in " + spec->aci.to_string());
      }
    }
    for (const Component* comp : group) {
      for (const auto& dep : comp->dependencies) {
        if (std::none_of(spec->dependencies.begin(), spec->dependencies.end(),
                         [&](const AbstractComponentId& d) { return ci_in_aci(dep, d); })) {
          return fail(t, Clause::Dependency,
                      comp->id.to_string() + " may not depend on " + dep.to_string());
        }
      }
    }

    Natural total = 0;
    for (const auto& u : child_types(t)) {
      const Interval* allowed = spec->child_interval(u);
      const AbstractComponentId* allowed_id = spec->child_aci(u);
      if (allowed == nullptr) {
        return fail(t, Clause::Child, "type " + u + " is not an allowed child");
      }
      Natural fewest = ~Natural{0};
      Natural most = 0;
      for (const Component* comp : group) {
        Natural count = 0;
        for (const auto& child : comp->children()) {
          if (child.ctype != u) continue;
          ++count;
          if (!ci_in_aci(child, *allowed_id)) {
            return fail(t, Clause::Child, child.to_string() + " not in " + allowed_id->to_string());
          }
        }
        fewest = std::min(fewest, count);
        most = std::max(most, count);
      }
      if (fewest < allowed->lo() || NatInf(most) > allowed->hi()) {
        return fail(t, Clause::Child,
                    "between " + std::to_string(fewest) + " and " + std::to_string(most) + " " + u +
                        " children, allowed " + allowed->to_string());
      }
    }
    for (const Component* comp : group) {
      if (comp->is_leaf()) {
        total += options.leaf_rule == LeafRule::Faithful ? 1 : 0;
      } else {
        total += comp->children().size();
      }
    }
    if (!spec->total.contains(total)) {
      return fail(t, Clause::Total,
                  std::to_string(total) + " children in total, allowed " + spec->total.to_string());
    }
    if (options.strict_lower_bounds) {
      const auto present = child_types(t);
      for (const auto& [aci, itv] : spec->children) {
        if (itv.lo() > 0 && !present.contains(aci.ctype)) {
          return fail(t, Clause::MissingChild, "mandatory child type " + aci.ctype + " is absent");
        }
      }
    }
  });
  verdict.compliant = verdict.failures.empty();
  return verdict;
}

// ---------------------------------------------------------------------------

bool ci_compat_leq(const ComponentId& a, const ComponentId& b, bool composite_a, NameMode mode) {
  const bool names_ok = a.name == b.name || (mode == NameMode::Relaxed && composite_a);
  return a.ctype == b.ctype && names_ok && a.origin == b.origin && a.version <= b.version;
}

namespace {

bool counterpart(const Component& a, const Component& b, NameMode mode) {
  if (mode == NameMode::Relaxed && a.is_composite() != b.is_composite()) return false;
  return ci_compat_leq(a.id, b.id, a.is_composite(), mode);
}

}  // namespace

bool config_leq(const Configuration& a, const Configuration& b, NameMode mode) {
  return std::all_of(a.components.begin(), a.components.end(), [&](const Component& x) {
    return std::any_of(b.components.begin(), b.components.end(),
                       [&](const Component& y) { return counterpart(x, y, mode); });
  });
}

CompatVerdict compatible(const Configuration& a, const Configuration& b,
                         const ConfigurationSpec& cs, const CompatOptions& options) {
  CompatVerdict verdict;
  if (!compliant(a, cs, options.check).compliant) {
    verdict.reasons.push_back({root_of(a).id.to_string(), CompatCause::NotCompliantA});
  }
  if (!compliant(b, cs, options.check).compliant) {
    verdict.reasons.push_back({root_of(b).id.to_string(), CompatCause::NotCompliantB});
  }
  for (const auto& x : a.canonical().components) {
    const bool found = std::any_of(b.components.begin(), b.components.end(),
                                   [&](const Component& y) { return counterpart(x, y, options.names); });
    if (found) continue;
    const bool older = std::any_of(b.components.begin(), b.components.end(), [&](const Component& y) {
      ComponentId raised = y.id;
      raised.version = x.id.version;
      Component probe = y;
      probe.id = raised;
      return counterpart(x, probe, options.names);
    });
    verdict.reasons.push_back(
        {x.id.to_string(), older ? CompatCause::VersionRegression : CompatCause::NoCounterpart});
  }
  verdict.compatible = verdict.reasons.empty();
  return verdict;
}

}  // namespace confkit
