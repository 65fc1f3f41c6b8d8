#include "confkit/inference.hpp"

#include <algorithm>
#include <stdexcept>

namespace confkit {

const ComponentSpec* SpecSet::find(const std::string& ctype) const {
  auto it = specs.find(ctype);
  return it == specs.end() ? nullptr : &it->second;
}

SpecSet SpecSet::single(ComponentSpec spec) {
  SpecSet out;
  auto type = spec.type();
  out.specs.emplace(std::move(type), std::move(spec));
  return out;
}

SpecSet SpecSet::from(const ConfigurationSpec& cs) {
  SpecSet out;
  for (const auto& s : cs.specs) {
    if (!out.specs.emplace(s.type(), s).second) {
      throw Error(ErrorKind::InvalidSpec, "type " + s.type() + " is specified more than once");
    }
  }
  return out;
}

ConfigurationSpec SpecSet::to_configuration_spec(std::string name) const {
  ConfigurationSpec cs{std::move(name), {}};
  for (const auto& entry : specs) cs.specs.push_back(entry.second);
  return cs;
}

namespace {

template <class T, class TypeOf>
std::map<std::string, T> by_type(const auto& entries, TypeOf type_of, const char* what) {
  std::map<std::string, T> out;
  for (const auto& e : entries) {
    if (!out.emplace(type_of(e), e).second) {
      throw std::invalid_argument(std::string("more than one ") + what + " of type " + type_of(e));
    }
  }
  return out;
}

}  // namespace

std::set<AbstractComponentId> unify_dependencies(const std::set<AbstractComponentId>& a,
                                                 const std::set<AbstractComponentId>& b) {
  auto type_of = [](const AbstractComponentId& x) { return x.ctype; };
  auto left = by_type<AbstractComponentId>(a, type_of, "dependency");
  const auto right = by_type<AbstractComponentId>(b, type_of, "dependency");
  for (const auto& [type, aci] : right) {
    auto it = left.find(type);
    if (it == left.end()) {
      left.emplace(type, aci);
    } else {
      it->second = aci_merge(it->second, aci);
    }
  }
  std::set<AbstractComponentId> out;
  for (auto& entry : left) out.insert(std::move(entry.second));
  return out;
}

ChildEntries unify_children(const ChildEntries& a, const ChildEntries& b) {
  using Entry = std::pair<AbstractComponentId, Interval>;
  auto type_of = [](const auto& e) { return e.first.ctype; };
  const auto left = by_type<Entry>(a, type_of, "child entry");
  const auto right = by_type<Entry>(b, type_of, "child entry");

  ChildEntries out;
  for (const auto& [type, entry] : left) {
    auto it = right.find(type);
    if (it == right.end()) {
      out.emplace(entry.first, Interval(0, entry.second.hi()));
    } else {
      const auto& other = it->second;
      out.emplace(aci_merge(entry.first, other.first),
                  Interval(std::min(entry.second.lo(), other.second.lo()),
                           std::max(entry.second.hi(), other.second.hi())));
    }
  }
  for (const auto& [type, entry] : right) {
    if (!left.contains(type)) out.emplace(entry.first, Interval(0, entry.second.hi()));
  }
  return out;
}

namespace {

void unify_into(SpecSet& acc, const SpecSet& b) {
  for (const auto& [type, spec] : b.specs) {
    auto it = acc.specs.find(type);
    if (it == acc.specs.end()) {
      acc.specs.emplace(type, spec);
      continue;
    }
    ComponentSpec& mine = it->second;
    mine.aci = aci_merge(mine.aci, spec.aci);
    if (!spec.dependencies.empty()) {
      mine.dependencies = unify_dependencies(mine.dependencies, spec.dependencies);
    }
    if (!mine.children.empty() || !spec.children.empty()) {
      mine.children = unify_children(mine.children, spec.children);
    }
    mine.total = interval_sum(mine.total, spec.total);
  }
}

}  // namespace

SpecSet unify(const SpecSet& a, const SpecSet& b) {
  SpecSet out = a;
  unify_into(out, b);
  return out;
}

namespace {

// ⊕-fold of ci2aci over each same-type group.
std::map<std::string, std::pair<AbstractComponentId, Natural>> group_by_type(
    const std::set<ComponentId>& ids) {
  std::map<std::string, std::pair<AbstractComponentId, Natural>> groups;
  for (const auto& id : ids) {
    auto it = groups.find(id.ctype);
    if (it == groups.end()) {
      groups.emplace(id.ctype, std::pair{ci2aci(id), Natural{1}});
    } else {
      it->second.first = aci_merge(it->second.first, ci2aci(id));
      ++it->second.second;
    }
  }
  return groups;
}

}  // namespace

SpecSet infer_component(const Component& c, const InferenceOptions& options) {
  ComponentSpec spec;
  spec.aci = ci2aci(c.id);
  for (auto& [type, group] : group_by_type(c.dependencies)) spec.dependencies.insert(group.first);

  if (c.is_leaf()) {
    spec.total = options.leaf_rule == LeafRule::Faithful ? Interval::exactly(1) : Interval::exactly(0);
  } else {
    for (auto& [type, group] : group_by_type(c.children())) {
      spec.children.emplace(group.first, Interval::exactly(group.second));
    }
    spec.total = Interval::exactly(c.children().size());
  }
  return SpecSet::single(std::move(spec));
}

SpecSet infer(const Configuration& c, const InferenceOptions& options) {
  auto report = validate_configuration(c);
  if (!report.ok()) {
    throw ValidationError(ErrorKind::NotAConfiguration, "cannot infer a specification",
                          std::move(report));
  }
  return infer_unchecked(c, options);
}

SpecSet infer_unchecked(const Configuration& c, const InferenceOptions& options) {
  SpecSet out;
  for (const auto& comp : c.components) unify_into(out, infer_component(comp, options));
  return out;
}

}  // namespace confkit
