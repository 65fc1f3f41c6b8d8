#include "confkit/model.hpp"

#include <algorithm>
#include <deque>

namespace confkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::NotAConfiguration: return "NotAConfiguration";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::WouldViolateSpec: return "WouldViolateSpec";
    case ErrorKind::UnknownParent: return "UnknownParent";
    case ErrorKind::UnknownComponent: return "UnknownComponent";
    case ErrorKind::DuplicateComponentId: return "DuplicateComponentId";
    case ErrorKind::TypeChanged: return "TypeChanged";
    case ErrorKind::DependencyGuard: return "DependencyGuard";
    case ErrorKind::RootRemoval: return "RootRemoval";
    case ErrorKind::JournalMismatch: return "JournalMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SpecInvalid: return "SpecInvalid";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::DuplicateId: return "duplicate-id";
    case Condition::DependencyChildOverlap: return "dependency-child-overlap";
    case Condition::ChildrenClosure: return "children-closure";
    case Condition::DependencyClosure: return "dependency-closure";
    case Condition::UniqueRoot: return "unique-root";
    case Condition::TreeShape: return "tree-shape";
    case Condition::Unreachable: return "unreachable";
    case Condition::DistinctTypes: return "distinct-types";
    case Condition::DuplicateChildType: return "duplicate-child-type";
    case Condition::DependencyChildType: return "dependency-child-type";
    case Condition::DuplicateDependencyType: return "duplicate-dependency-type";
    case Condition::DependencyCoverage: return "dependency-coverage";
    case Condition::IntervalSum: return "interval-sum";
    case Condition::RootDeclaration: return "root-declaration";
    case Condition::SuccessorIntervals: return "successor-intervals";
  }
  return "unknown";
}

Component Component::leaf(ComponentId id, std::set<std::string> elements,
                          std::set<ComponentId> dependencies) {
  return {std::move(id), std::move(dependencies), Elements{std::move(elements)}};
}

Component Component::composite(ComponentId id, std::set<ComponentId> children,
                               std::set<ComponentId> dependencies) {
  return {std::move(id), std::move(dependencies), Children{std::move(children)}};
}

const std::set<ComponentId>& Component::children() const {
  static const std::set<ComponentId> none;
  if (const auto* c = std::get_if<Children>(&payload)) return c->ids;
  return none;
}

const Component* Configuration::find(const ComponentId& id) const {
  auto it = std::find_if(components.begin(), components.end(),
                         [&](const Component& c) { return c.id == id; });
  return it == components.end() ? nullptr : &*it;
}

std::set<ComponentId> Configuration::cis() const {
  std::set<ComponentId> out;
  for (const auto& c : components) out.insert(c.id);
  return out;
}

Configuration Configuration::canonical() const {
  Configuration out = *this;
  std::sort(out.components.begin(), out.components.end());
  return out;
}

bool operator==(const Configuration& a, const Configuration& b) {
  return a.canonical().components == b.canonical().components;
}

const Interval* ComponentSpec::child_interval(std::string_view ctype) const {
  for (const auto& [aci, itv] : children) {
    if (aci.ctype == ctype) return &itv;
  }
  return nullptr;
}

const AbstractComponentId* ComponentSpec::child_aci(std::string_view ctype) const {
  for (const auto& entry : children) {
    if (entry.first.ctype == ctype) return &entry.first;
  }
  return nullptr;
}

std::set<AbstractComponentId> ConfigurationSpec::acis() const {
  std::set<AbstractComponentId> out;
  for (const auto& s : specs) out.insert(s.aci);
  return out;
}

bool operator==(const ConfigurationSpec& a, const ConfigurationSpec& b) {
  auto sa = a.specs;
  auto sb = b.specs;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

bool ValidationReport::has(Condition c) const { return first(c) != nullptr; }

const Violation* ValidationReport::first(Condition c) const {
  for (const auto& v : violations) {
    if (v.condition == c) return &v;
  }
  return nullptr;
}

namespace {

std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.violations) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.condition)) + ": " + v.message;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(ErrorKind kind, const std::string& message,
                                 ValidationReport report)
    : Error(kind, message + (report.ok() ? "" : " (" + describe(report) + ")")),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------

namespace {

// Orders pointers by the pointed-to value, so that maps and sets can be keyed
// by identifiers without copying them.
struct DerefLess {
  using is_transparent = void;
  template <class T>
  bool operator()(const T* a, const T* b) const { return *a < *b; }
};

}  // namespace

ValidationReport validate_configuration(const Configuration& c) {
  ValidationReport report;
  auto add = [&](Condition cond, std::vector<std::string> subjects, std::string msg) {
    report.violations.push_back({cond, std::move(subjects), std::move(msg)});
  };

  std::map<const ComponentId*, int, DerefLess> seen;
  for (const auto& comp : c.components) ++seen[&comp.id];
  for (const auto& [idp, n] : seen) {
    const ComponentId& id = *idp;
    if (n > 1) {
      add(Condition::DuplicateId, {id.to_string()},
          id.to_string() + " occurs " + std::to_string(n) + " times");
    }
  }

  std::map<const ComponentId*, std::vector<const ComponentId*>, DerefLess> parents;
  for (const auto& comp : c.components) {
    for (const auto& dep : comp.dependencies) {
      if (comp.children().contains(dep)) {
        add(Condition::DependencyChildOverlap, {comp.id.to_string(), dep.to_string()},
            comp.id.to_string() + " depends on its own child " + dep.to_string());
      }
    }
    for (const auto& child : comp.children()) {
      if (!seen.contains(&child)) {
        add(Condition::ChildrenClosure, {comp.id.to_string(), child.to_string()},
            "child " + child.to_string() + " of " + comp.id.to_string() +
                " is not in the configuration");
      }
      parents[&child].push_back(&comp.id);
    }
    for (const auto& dep : comp.dependencies) {
      if (!seen.contains(&dep)) {
        add(Condition::DependencyClosure, {comp.id.to_string(), dep.to_string()},
            "dependency " + dep.to_string() + " of " + comp.id.to_string() +
                " is not in the configuration");
      }
    }
  }

  std::vector<ComponentId> roots;
  for (const auto& [idp, n] : seen) {
    const ComponentId& id = *idp;
    auto it = parents.find(idp);
    if (it == parents.end()) {
      roots.push_back(id);
    } else if (it->second.size() > 1) {
      std::vector<std::string> subjects{id.to_string()};
      for (const auto* p : it->second) subjects.push_back(p->to_string());
      add(Condition::TreeShape, subjects,
          id.to_string() + " is a child of " + std::to_string(it->second.size()) +
              " components");
    }
  }

  if (roots.size() != 1) {
    std::vector<std::string> subjects;
    for (const auto& r : roots) subjects.push_back(r.to_string());
    add(Condition::UniqueRoot, subjects,
        roots.empty() ? std::string("no root component")
                      : std::to_string(roots.size()) + " root components");
  } else {
    // With one root and at most one parent each, anything unreachable from
    // the root sits on a cycle.
    std::set<const ComponentId*, DerefLess> reached{&roots.front()};
    std::deque<const ComponentId*> queue{&roots.front()};
    while (!queue.empty()) {
      const Component* comp = c.find(*queue.front());
      queue.pop_front();
      if (comp == nullptr) continue;
      for (const auto& child : comp->children()) {
        if (reached.insert(&child).second) queue.push_back(&child);
      }
    }
    std::vector<std::string> stranded;
    for (const auto& [idp, n] : seen) {
      if (!reached.contains(idp)) stranded.push_back(idp->to_string());
    }
    if (!stranded.empty()) {
      add(Condition::Unreachable, stranded,
          std::to_string(stranded.size()) + " component(s) unreachable from the root");
    }
  }
  return report;
}

ValidationReport validate_spec(const ConfigurationSpec& cs) {
  ValidationReport report;
  auto add = [&](Condition cond, std::vector<std::string> subjects, std::string msg) {
    report.violations.push_back({cond, std::move(subjects), std::move(msg)});
  };

  std::map<std::string, int> types;
  for (const auto& s : cs.specs) ++types[s.type()];
  for (const auto& [t, n] : types) {
    if (n > 1) add(Condition::DistinctTypes, {t}, "type " + t + " is specified " + std::to_string(n) + " times");
  }

  std::set<const AbstractComponentId*, DerefLess> acis;
  for (const auto& s : cs.specs) acis.insert(&s.aci);
  std::map<const AbstractComponentId*, std::vector<std::string>, DerefLess> parents;
  for (const auto& s : cs.specs) {
    std::set<std::string> child_types;
    for (const auto& [aci, itv] : s.children) {
      if (!child_types.insert(aci.ctype).second) {
        add(Condition::DuplicateChildType, {s.type(), aci.ctype},
            s.type() + " has more than one child entry of type " + aci.ctype);
      }
      if (!acis.contains(&aci)) {
        add(Condition::ChildrenClosure, {s.type(), aci.ctype},
            "child " + aci.to_string() + " of " + s.type() + " is not a specified identifier");
      }
      parents[&aci].push_back(s.type());
    }
    std::set<std::string> dep_types;
    for (const auto& dep : s.dependencies) {
      if (!dep_types.insert(dep.ctype).second) {
        add(Condition::DuplicateDependencyType, {s.type(), dep.ctype},
            s.type() + " has more than one dependency of type " + dep.ctype);
      }
      if (child_types.contains(dep.ctype)) {
        add(Condition::DependencyChildType, {s.type(), dep.ctype},
            s.type() + " both contains and depends on type " + dep.ctype);
      }
      const bool covered = std::any_of(acis.begin(), acis.end(),
                                       [&](const AbstractComponentId* a) { return aci_leq(dep, *a); });
      if (!covered) {
        add(Condition::DependencyCoverage, {s.type(), dep.ctype},
            "dependency " + dep.to_string() + " of " + s.type() +
                " is not covered by any specified identifier");
      }
    }

    std::vector<Interval> intervals;
    for (const auto& entry : s.children) intervals.push_back(entry.second);
    const Interval sum = interval_fold_sum(intervals);
    if (!interval_included(sum, s.total)) {
      add(Condition::IntervalSum, {s.type()},
          "children of " + s.type() + " sum to " + sum.to_string() + ", not within " +
              s.total.to_string());
    }
    // The informal reading Σlo ≤ lo ≤ hi ≤ Σhi is only reported.
    if (!s.children.empty() && !interval_included(s.total, sum)) {
      report.warnings.push_back({Condition::SuccessorIntervals, {s.type()},
                                 "total " + s.total.to_string() + " of " + s.type() +
                                     " is not within the children sum " + sum.to_string()});
    }
  }

  std::vector<const ComponentSpec*> roots;
  for (const auto& s : cs.specs) {
    auto it = parents.find(&s.aci);
    if (it == parents.end()) {
      roots.push_back(&s);
    } else if (it->second.size() > 1) {
      std::vector<std::string> subjects{s.type()};
      subjects.insert(subjects.end(), it->second.begin(), it->second.end());
      add(Condition::TreeShape, subjects,
          s.type() + " is a child of " + std::to_string(it->second.size()) + " specifications");
    }
  }
  if (roots.size() != 1) {
    std::vector<std::string> subjects;
    for (const auto* r : roots) subjects.push_back(r->type());
    add(Condition::UniqueRoot, subjects,
        roots.empty() ? std::string("no root specification")
                      : std::to_string(roots.size()) + " root specifications");
  } else {
    std::set<const AbstractComponentId*, DerefLess> reached{&roots.front()->aci};
    std::deque<const ComponentSpec*> queue{roots.front()};
    while (!queue.empty()) {
      const ComponentSpec* s = queue.front();
      queue.pop_front();
      for (const auto& entry : s->children) {
        if (!reached.insert(&entry.first).second) continue;
        for (const auto& candidate : cs.specs) {
          if (candidate.aci == entry.first) queue.push_back(&candidate);
        }
      }
    }
    std::vector<std::string> stranded;
    for (const auto& s : cs.specs) {
      if (!reached.contains(&s.aci)) stranded.push_back(s.type());
    }
    if (!stranded.empty()) {
      add(Condition::Unreachable, stranded,
          std::to_string(stranded.size()) + " specification(s) unreachable from the root");
    }
  }
  return report;
}

const Component& root_of(const Configuration& c) {
  auto report = validate_configuration(c);
  if (!report.ok()) {
    throw ValidationError(ErrorKind::NotAConfiguration, "not a configuration", std::move(report));
  }
  if (const Component* root = find_root(c)) return *root;
  throw Error(ErrorKind::NotAConfiguration, "no root component");  // unreachable after validation
}

const Component* find_root(const Configuration& c) {
  std::set<ComponentId> referenced;
  for (const auto& comp : c.components) referenced.insert(comp.children().begin(), comp.children().end());
  for (const auto& comp : c.components) {
    if (!referenced.contains(comp.id)) return &comp;
  }
  return nullptr;
}

const ComponentSpec* spec_node_for_type(const ConfigurationSpec& cs, std::string_view ctype) {
  for (const auto& s : cs.specs) {
    if (s.type() == ctype) return &s;
  }
  return nullptr;
}

const ComponentSpec& root_spec(const ConfigurationSpec& cs) {
  std::set<AbstractComponentId> referenced;
  for (const auto& s : cs.specs) {
    for (const auto& entry : s.children) referenced.insert(entry.first);
  }
  const ComponentSpec* root = nullptr;
  int count = 0;
  for (const auto& s : cs.specs) {
    if (!referenced.contains(s.aci)) {
      root = &s;
      ++count;
    }
  }
  if (count != 1) {
    ValidationReport report;
    report.violations.push_back({Condition::UniqueRoot, {}, std::to_string(count) + " root specifications"});
    throw ValidationError(ErrorKind::InvalidSpec, "specification has no unique root", std::move(report));
  }
  return *root;
}

namespace {

class Fnv1a {
public:
  void add(std::string_view s) {
    for (unsigned char ch : s) {
      hash_ ^= ch;
      hash_ *= 0x100000001b3ULL;
    }
    // Field separator so that ("ab","c") and ("a","bc") differ.
    hash_ ^= 0xff;
    hash_ *= 0x100000001b3ULL;
  }
  void add(const ComponentId& id) {
    add(id.ctype);
    add(id.name);
    add(id.origin);
    add(std::to_string(id.version));
  }
  std::uint64_t value() const { return hash_; }

private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t fingerprint(const Configuration& c) {
  Fnv1a h;
  for (const auto& comp : c.canonical().components) {
    h.add("component");
    h.add(comp.id);
    if (const auto* e = std::get_if<Elements>(&comp.payload)) {
      h.add("files");
      for (const auto& f : e->names) h.add(f);
    } else {
      h.add("contains");
      for (const auto& id : comp.children()) h.add(id);
    }
    h.add("depends");
    for (const auto& id : comp.dependencies) h.add(id);
  }
  return h.value();
}

}  // namespace confkit
