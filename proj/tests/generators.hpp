#pragma once

// Seeded random generators for property tests. Every generator takes the
// engine by reference so that a failing case is reproducible from its seed.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "confkit/lifecycle.hpp"

namespace gen {

using namespace confkit;

using Rng = std::mt19937_64;

inline std::size_t below(Rng& r, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(r); }
inline bool chance(Rng& r, double p) { return std::bernoulli_distribution(p)(r); }

template <class T>
const T& pick(Rng& r, const std::vector<T>& xs) {
  return xs[below(r, xs.size())];
}

// Names include characters the text format has to escape.
inline const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> pool{"a", "ab", "abc", "b", "ba", "x1", "q\"uote", "back\\slash", "sp ace"};
  return pool;
}
inline const std::vector<std::string>& origin_pool() {
  static const std::vector<std::string> pool{"o1", "o2", "IMsk", "Jane", "J\"x"};
  return pool;
}

inline NatInf gen_bound(Rng& r, Natural lo, Natural span) {
  if (chance(r, 0.2)) return NatInf::infinity();
  return NatInf(lo + below(r, span + 1));
}

inline Interval gen_interval(Rng& r) {
  const Natural lo = below(r, 4);
  return Interval(lo, gen_bound(r, lo, 3));
}

inline Interval weaken(Rng& r, const Interval& i) {
  const Natural lo = i.lo() - below(r, i.lo() + 1);
  NatInf hi = i.hi();
  if (!hi.is_infinite()) hi = chance(r, 0.1) ? NatInf::infinity() : NatInf(hi.value() + below(r, 3));
  return Interval(lo, hi);
}

inline NameSet gen_names(Rng& r) {
  if (chance(r, 0.2)) return NameSet::any();
  std::vector<NamePattern> patterns;
  const std::size_t n = 1 + below(r, 3);
  for (std::size_t i = 0; i < n; ++i) patterns.push_back({pick(r, name_pool()), chance(r, 0.3)});
  return NameSet::of(std::move(patterns));
}

inline OriginSet gen_origins(Rng& r) {
  if (chance(r, 0.25)) return OriginSet::any();
  std::set<std::string> origins;
  const std::size_t n = 1 + below(r, 2);
  for (std::size_t i = 0; i < n; ++i) origins.insert(pick(r, origin_pool()));
  return OriginSet::of(std::move(origins));
}

inline VersionSet gen_versions(Rng& r) {
  if (chance(r, 0.2)) return VersionSet::any();
  std::vector<VersionSet::Range> ranges;
  const std::size_t n = 1 + below(r, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Natural lo = below(r, 6);
    ranges.push_back({lo, chance(r, 0.5) ? NatInf(lo) : gen_bound(r, lo, 2)});
  }
  return VersionSet::of_ranges(std::move(ranges));
}

inline AbstractComponentId gen_aci(Rng& r, const std::string& type) {
  return {type, gen_names(r), gen_origins(r), gen_versions(r)};
}

/// An identifier at least as permissive as `a`.
inline AbstractComponentId weaken(Rng& r, const AbstractComponentId& a) {
  if (chance(r, 0.3)) return a;
  return aci_merge(a, gen_aci(r, a.ctype));
}

inline ComponentId gen_id(Rng& r, const std::vector<std::string>& types) {
  return {pick(r, types), pick(r, name_pool()), pick(r, origin_pool()), below(r, 4)};
}

/// A component spec with at most one dependency and child entry per type.
inline ComponentSpec gen_component_spec(Rng& r, const std::string& type) {
  static const std::vector<std::string> types{"A", "B", "C", "D"};
  ComponentSpec cs{gen_aci(r, type), {}, {}, gen_interval(r)};
  std::vector<std::string> shuffled = types;
  std::shuffle(shuffled.begin(), shuffled.end(), r);
  const std::size_t n_children = below(r, 3);
  const std::size_t n_deps = below(r, 3);
  for (std::size_t i = 0; i < n_children; ++i) cs.children.emplace(gen_aci(r, shuffled[i]), gen_interval(r));
  for (std::size_t i = 0; i < n_deps; ++i) cs.dependencies.insert(gen_aci(r, shuffled[shuffled.size() - 1 - i]));
  return cs;
}

inline ComponentSpec weaken(Rng& r, const ComponentSpec& cs) {
  ComponentSpec out{weaken(r, cs.aci), {}, {}, weaken(r, cs.total)};
  std::set<std::string> dep_types;
  for (const auto& d : cs.dependencies) {
    out.dependencies.insert(weaken(r, d));
    dep_types.insert(d.ctype);
  }
  std::set<std::string> child_types;
  for (const auto& [a, itv] : cs.children) {
    out.children.emplace(weaken(r, a), weaken(r, itv));
    child_types.insert(a.ctype);
  }
  for (const std::string t : {"A", "B", "C", "D"}) {
    if (!dep_types.contains(t) && !child_types.contains(t) && chance(r, 0.15)) {
      out.dependencies.insert(gen_aci(r, t));
    }
  }
  return out;
}

inline SpecSet gen_specset(Rng& r) {
  SpecSet out;
  for (const std::string t : {"A", "B", "C", "D"}) {
    if (chance(r, 0.6)) out.specs.emplace(t, gen_component_spec(r, t));
  }
  return out;
}

inline SpecSet weaken(Rng& r, const SpecSet& s) {
  SpecSet out;
  for (const auto& [t, cs] : s.specs) out.specs.emplace(t, weaken(r, cs));
  for (const std::string t : {"A", "B", "C", "D"}) {
    if (!out.specs.contains(t) && chance(r, 0.2)) out.specs.emplace(t, gen_component_spec(r, t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configurations

/// A well-formed configuration of 1..max_size components. Dependencies point
/// anywhere except at the component itself or its children.
inline Configuration gen_config(Rng& r, std::size_t max_size,
                                const std::vector<std::string>& types = {"A", "B", "C"}) {
  const std::size_t n = 1 + below(r, max_size);
  std::vector<ComponentId> ids;
  std::set<ComponentId> used;
  while (ids.size() < n) {
    ComponentId id = gen_id(r, types);
    if (used.insert(id).second) ids.push_back(id);
  }
  std::vector<int> parent(n, -1);
  std::vector<bool> composite(n, false);
  for (std::size_t i = 1; i < n; ++i) {
    parent[i] = static_cast<int>(below(r, i));
    composite[parent[i]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!composite[i] && chance(r, 0.15)) composite[i] = true;
  }
  Configuration c{"generated", {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::set<ComponentId> children;
    for (std::size_t j = 0; j < n; ++j) {
      if (parent[j] == static_cast<int>(i)) children.insert(ids[j]);
    }
    std::set<ComponentId> deps;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && parent[j] != static_cast<int>(i) && chance(r, 0.12)) deps.insert(ids[j]);
    }
    if (composite[i]) {
      c.components.push_back(Component::composite(ids[i], std::move(children), std::move(deps)));
    } else {
      std::set<std::string> files;
      const std::size_t k = below(r, 3);
      for (std::size_t f = 0; f < k; ++f) files.insert(pick(r, name_pool()) + ".f");
      c.components.push_back(Component::leaf(ids[i], std::move(files), std::move(deps)));
    }
  }
  std::shuffle(c.components.begin(), c.components.end(), r);
  return c;
}

// ---------------------------------------------------------------------------
// Specifications

/// A configuration specification that passes validate_spec: a random tree of
/// 1..5 types, totals that include the sum of their child intervals and
/// dependencies no wider than the node of their type.
inline ConfigurationSpec gen_valid_spec(Rng& r) {
  const std::size_t n = 1 + below(r, 5);
  std::vector<std::string> types;
  for (std::size_t i = 0; i < n; ++i) types.push_back("T" + std::to_string(i));
  std::vector<AbstractComponentId> acis;
  for (const auto& t : types) acis.push_back(gen_aci(r, t));

  std::vector<ComponentSpec> specs;
  for (std::size_t i = 0; i < n; ++i) specs.push_back({acis[i], {}, {}, Interval::exactly(0)});
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t p = below(r, i);
    specs[p].children.emplace(acis[i], gen_interval(r));
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = specs[i];
    std::vector<Interval> itvs;
    for (const auto& entry : s.children) itvs.push_back(entry.second);
    s.total = weaken(r, interval_fold_sum(itvs));
    for (std::size_t j = 0; j < n; ++j) {
      if (s.child_interval(types[j]) != nullptr || !chance(r, 0.25)) continue;
      AbstractComponentId dep = acis[j];
      if (chance(r, 0.5)) {
        if (dep.names.is_any()) dep.names = NameSet::literal(pick(r, name_pool()));
        if (dep.origins.is_any()) dep.origins = OriginSet::literal(pick(r, origin_pool()));
        if (dep.versions.is_any()) dep.versions = VersionSet::literal(below(r, 4));
      }
      s.dependencies.insert(std::move(dep));
    }
  }
  std::shuffle(specs.begin(), specs.end(), r);
  return ConfigurationSpec{"generated", std::move(specs)};
}

// ---------------------------------------------------------------------------
// Lifecycle

/// A permissive specification for lifecycle sequences:
///   R contains P and L; P contains Q; Q depends on L; L depends on Q.
inline ConfigurationSpec open_spec() {
  const auto R = AbstractComponentId::any_of("R");
  const auto P = AbstractComponentId::any_of("P");
  const auto Q = AbstractComponentId::any_of("Q");
  const auto L = AbstractComponentId::any_of("L");
  const Interval many = Interval::at_least(0);
  return ConfigurationSpec{"open",
                           {{R, {}, {{P, many}, {L, many}}, many},
                            {P, {}, {{Q, many}}, many},
                            {Q, {L}, {}, Interval::exactly(0)},
                            {L, {Q}, {}, Interval::exactly(0)}}};
}

inline Configuration open_seed() {
  return Configuration{"seed", {Component::composite({"R", "root", "o1", 1}, {})}};
}

/// A change that is expected to apply to `c` under open_spec(), or nullopt
/// when the configuration offers nothing to do for the chosen kind.
inline std::optional<ChangeSet> gen_valid_change(Rng& r, const Configuration& c) {
  auto fresh_id = [&](const std::string& type) {
    for (;;) {
      ComponentId id{type, pick(r, name_pool()), pick(r, origin_pool()), below(r, 5)};
      if (c.find(id) == nullptr) return id;
    }
  };
  std::vector<const Component*> of_type[4];
  const std::vector<std::string> kinds{"R", "P", "Q", "L"};
  for (const auto& comp : c.components) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      if (comp.id.ctype == kinds[k]) of_type[k].push_back(&comp);
    }
  }
  std::set<ComponentId> depended_on;
  for (const auto& comp : c.components) depended_on.insert(comp.dependencies.begin(), comp.dependencies.end());

  switch (below(r, 3)) {
    case 0: {  // extend
      ExtendChange ch;
      const ComponentId root = of_type[0].front()->id;
      const std::size_t what = below(r, 3);
      if (what == 0) {
        ComponentId p = fresh_id("P");
        std::set<ComponentId> qs;
        for (std::size_t i = below(r, 3); i > 0; --i) {
          ComponentId q = fresh_id("Q");
          if (qs.contains(q) || q == p) continue;
          qs.insert(q);
          ch.components.push_back(Component::leaf(q, {"q"}));
        }
        ch.components.push_back(Component::composite(p, qs));
        ch.attachments.push_back({p, root});
      } else if (what == 1) {
        std::set<ComponentId> deps;
        if (!of_type[2].empty() && chance(r, 0.5)) deps.insert(pick(r, of_type[2])->id);
        ComponentId l = fresh_id("L");
        ch.components.push_back(Component::leaf(l, {"l"}, deps));
        ch.attachments.push_back({l, root});
      } else {
        if (of_type[1].empty()) return std::nullopt;
        std::set<ComponentId> deps;
        if (!of_type[3].empty() && chance(r, 0.5)) deps.insert(pick(r, of_type[3])->id);
        ComponentId q = fresh_id("Q");
        ch.components.push_back(Component::leaf(q, {"q"}, deps));
        ch.attachments.push_back({q, pick(r, of_type[1])->id});
      }
      return ch;
    }
    case 1: {  // update
      const Component& old = c.components[below(r, c.components.size())];
      Component next = old;
      next.id = fresh_id(old.id.ctype);
      if (auto* e = std::get_if<Elements>(&next.payload)) e->names.insert("v" + std::to_string(next.id.version));
      return UpdateChange{{{old.id, next}}};
    }
    default: {  // remove
      std::vector<ComponentId> candidates;
      for (const auto& comp : c.components) {
        if (comp.id.ctype == "R") continue;
        bool needed = depended_on.contains(comp.id);
        for (const auto& child : comp.children()) needed = needed || depended_on.contains(child);
        if (!needed) candidates.push_back(comp.id);
      }
      if (candidates.empty()) return std::nullopt;
      return RemoveChange{{pick(r, candidates)}};
    }
  }
}

// ---------------------------------------------------------------------------
// Text fuzzing

/// A few random edits of `text`: byte deletions, duplications, swaps with
/// grammar-significant characters and splices of other slices.
inline std::string mutate_text(Rng& r, std::string text) {
  static const std::string alphabet = "{}[]();:,|*.\"#\\ \n0123456789az_-";
  static const std::vector<std::string> words{"node", "root", "contains", "depends", "files", "any", "total",
                                              "component", "config", "spec", "..", "*", "\"", "18446744073709551616"};
  const std::size_t edits = 1 + below(r, 4);
  for (std::size_t e = 0; e < edits; ++e) {
    const std::size_t at = text.empty() ? 0 : below(r, text.size());
    switch (below(r, 6)) {
      case 0:
        if (!text.empty()) text.erase(at, 1 + below(r, 8));
        break;
      case 1:
        text.insert(at, 1, alphabet[below(r, alphabet.size())]);
        break;
      case 2:
        if (!text.empty()) text[at] = alphabet[below(r, alphabet.size())];
        break;
      case 3:
        text.insert(at, pick(r, words));
        break;
      case 4:
        if (!text.empty()) {
          const std::size_t from = below(r, text.size());
          text.insert(at, text.substr(from, below(r, 24)));
        }
        break;
      default:
        text.resize(at);
        break;
    }
  }
  return text;
}

}  // namespace gen
