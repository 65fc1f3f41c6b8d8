#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "confkit/textfmt.hpp"

namespace confkit {

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out + "\"";
}

std::string sanitize_ident(std::string_view s, std::string_view fallback) {
  std::string out;
  for (char ch : s) {
    const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-';
    out += ok ? ch : '_';
  }
  if (out.empty()) return std::string(fallback);
  if (!(std::isalpha(static_cast<unsigned char>(out[0])) || out[0] == '_')) out.insert(0, "_");
  return out;
}

std::string print_names(const NameSet& s) {
  if (s.is_any()) return "any";
  if (s.patterns().empty()) throw Error(ErrorKind::InvalidSpec, "an empty name set has no textual form");
  std::string out;
  for (const auto& p : s.patterns()) {
    if (!out.empty()) out += " | ";
    out += quote(p.text);
    if (p.prefix) out += "*";
  }
  return out;
}

std::string print_origins(const OriginSet& s) {
  if (s.is_any()) return "any";
  if (s.origins().empty()) throw Error(ErrorKind::InvalidSpec, "an empty origin set has no textual form");
  std::string out;
  for (const auto& o : s.origins()) {
    if (!out.empty()) out += " | ";
    out += quote(o);
  }
  return out;
}

std::string print_interval(const Interval& itv) {
  return std::to_string(itv.lo()) + ".." + itv.hi().to_string();
}

std::string print_versions(const VersionSet& s) {
  if (s.is_any()) return "any";
  if (s.ranges().empty()) throw Error(ErrorKind::InvalidSpec, "an empty version set has no textual form");
  std::string out;
  for (const auto& r : s.ranges()) {
    if (!out.empty()) out += " | ";
    out += std::to_string(r.lo);
    if (!(r.hi == NatInf(r.lo))) out += ".." + r.hi.to_string();
  }
  return out;
}

// Writes nodes in type order. `node_of` resolves a type to the identifier of
// its node, which is the default for unspecified dependency fields.
void write_nodes(std::ostream& os, const std::vector<const ComponentSpec*>& nodes) {
  std::map<std::string, const AbstractComponentId*> node_of;
  for (const auto* n : nodes) node_of.emplace(n->type(), &n->aci);

  for (const auto* n : nodes) {
    os << "  node " << n->type() << " {\n";
    os << "    name: " << print_names(n->aci.names) << ";\n";
    os << "    origin: " << print_origins(n->aci.origins) << ";\n";
    os << "    version: " << print_versions(n->aci.versions) << ";\n";
    if (!n->children.empty()) {
      os << "    contains { ";
      bool first = true;
      for (const auto& [aci, itv] : n->children) {
        if (!first) os << ", ";
        first = false;
        os << aci.ctype << ": " << print_interval(itv);
      }
      os << " }\n";
    }
    if (!n->dependencies.empty()) {
      os << "    depends { ";
      bool first = true;
      for (const auto& dep : n->dependencies) {
        if (!first) os << ", ";
        first = false;
        os << dep.ctype;
        auto it = node_of.find(dep.ctype);
        const AbstractComponentId base =
            it != node_of.end() ? *it->second : AbstractComponentId::any_of(dep.ctype);
        std::string fields;
        if (!(dep.names == base.names)) fields += "name: " + print_names(dep.names) + "; ";
        if (!(dep.origins == base.origins)) fields += "origin: " + print_origins(dep.origins) + "; ";
        if (!(dep.versions == base.versions)) fields += "version: " + print_versions(dep.versions) + "; ";
        if (!fields.empty()) {
          fields.pop_back();
          os << "(" << fields << ")";
        }
      }
      os << " }\n";
    }
    os << "    total: " << print_interval(n->total) << ";\n";
    os << "  }\n";
  }
}

bool canonical_less(const ComponentId& a, const ComponentId& b) {
  return std::tie(a.ctype, a.name, a.version, a.origin) < std::tie(b.ctype, b.name, b.version, b.origin);
}

std::vector<const Component*> canonical_order(const Configuration& c) {
  std::vector<const Component*> out;
  for (const auto& comp : c.components) out.push_back(&comp);
  std::sort(out.begin(), out.end(), [](const Component* a, const Component* b) {
    return canonical_less(a->id, b->id);
  });
  return out;
}

std::vector<ComponentId> canonical_ids(const std::set<ComponentId>& ids) {
  std::vector<ComponentId> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

std::string print_spec(const ConfigurationSpec& cs) {
  const std::string root = root_spec(cs).type();
  std::vector<const ComponentSpec*> nodes;
  for (const auto& s : cs.specs) nodes.push_back(&s);
  std::sort(nodes.begin(), nodes.end(),
            [](const ComponentSpec* a, const ComponentSpec* b) { return a->type() < b->type(); });

  std::ostringstream os;
  os << "spec " << sanitize_ident(cs.name, "spec") << " {\n";
  write_nodes(os, nodes);
  os << "  root " << root << ";\n";
  os << "}\n";
  return os.str();
}

std::string print_specset(const SpecSet& specs, std::string_view name,
                          std::optional<std::string> root_type) {
  std::vector<const ComponentSpec*> nodes;
  for (const auto& entry : specs.specs) nodes.push_back(&entry.second);

  std::ostringstream os;
  os << "# inferred specification, not validated\n";
  os << "spec " << sanitize_ident(name, "inferred") << " {\n";
  write_nodes(os, nodes);
  if (root_type) os << "  root " << *root_type << ";\n";
  os << "}\n";
  return os.str();
}

std::vector<std::pair<ComponentId, std::string>> assign_handles(const Configuration& c) {
  std::vector<std::pair<ComponentId, std::string>> out;
  std::set<std::string> taken;
  for (const Component* comp : canonical_order(c)) {
    const ComponentId& id = comp->id;
    const std::string base = sanitize_ident(id.name, "c");
    std::vector<std::string> candidates{
        base, base + "_v" + std::to_string(id.version),
        base + "_" + sanitize_ident(id.ctype, "t") + "_v" + std::to_string(id.version)};
    std::string handle;
    for (const auto& cand : candidates) {
      if (!taken.contains(cand)) {
        handle = cand;
        break;
      }
    }
    for (int n = 2; handle.empty(); ++n) {
      auto cand = candidates.back() + "_" + std::to_string(n);
      if (!taken.contains(cand)) handle = cand;
    }
    taken.insert(handle);
    out.emplace_back(id, std::move(handle));
  }
  return out;
}

std::string print_config(const Configuration& c) {
  std::map<ComponentId, std::string> handle;
  for (auto& [id, h] : assign_handles(c)) handle.emplace(id, std::move(h));
  auto handle_of = [&](const ComponentId& id) {
    auto it = handle.find(id);
    return it == handle.end() ? id.to_string() : it->second;
  };

  std::ostringstream os;
  os << "config " << sanitize_ident(c.name, "config") << " {\n";
  for (const Component* comp : canonical_order(c)) {
    const ComponentId& id = comp->id;
    os << "  component " << handle_of(id) << " : " << id.ctype << " (" << quote(id.name) << ", "
       << quote(id.origin) << ", " << id.version << ")";
    if (const auto* e = std::get_if<Elements>(&comp->payload)) {
      os << " files [";
      bool first = true;
      for (const auto& f : e->names) {
        if (!first) os << ", ";
        first = false;
        os << quote(f);
      }
      os << "]";
    } else {
      os << " contains [";
      bool first = true;
      for (const auto& child : canonical_ids(comp->children())) {
        if (!first) os << ", ";
        first = false;
        os << handle_of(child);
      }
      os << "]";
    }
    if (!comp->dependencies.empty()) {
      os << " depends [";
      bool first = true;
      for (const auto& dep : canonical_ids(comp->dependencies)) {
        if (!first) os << ", ";
        first = false;
        os << handle_of(dep);
      }
      os << "]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out + "\"";
}

std::string dot_node_id(const ComponentId& id) {
  return dot_quote(id.ctype + ":" + id.name + ":" + id.origin + ":" + std::to_string(id.version));
}

// Labels use DOT's "\n" line break; the parts are escaped separately.
std::string dot_label(const std::vector<std::string>& lines) {
  std::string out = "\"";
  bool first = true;
  for (const auto& line : lines) {
    if (!first) out += "\\n";
    first = false;
    const std::string q = dot_quote(line);
    out += q.substr(1, q.size() - 2);
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Configuration& c) {
  const auto order = canonical_order(c);
  std::ostringstream os;
  os << "digraph " << dot_quote(c.name) << " {\n";
  os << "  node [shape=box];\n";
  for (const Component* comp : order) {
    const ComponentId& id = comp->id;
    os << "  " << dot_node_id(id) << " [label="
       << dot_label({id.name + " : " + id.ctype,
                     "(" + id.origin + ", v" + std::to_string(id.version) + ")"})
       << "];\n";
  }
  for (const Component* comp : order) {
    for (const auto& child : canonical_ids(comp->children())) {
      os << "  " << dot_node_id(comp->id) << " -> " << dot_node_id(child) << ";\n";
    }
  }
  for (const Component* comp : order) {
    for (const auto& dep : canonical_ids(comp->dependencies)) {
      os << "  " << dot_node_id(comp->id) << " -> " << dot_node_id(dep) << " [style=dashed];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const ConfigurationSpec& cs) {
  std::vector<const ComponentSpec*> nodes;
  for (const auto& s : cs.specs) nodes.push_back(&s);
  std::sort(nodes.begin(), nodes.end(),
            [](const ComponentSpec* a, const ComponentSpec* b) { return a->type() < b->type(); });
  std::map<std::string, const AbstractComponentId*> node_of;
  for (const auto* n : nodes) node_of.emplace(n->type(), &n->aci);

  std::ostringstream os;
  os << "digraph " << dot_quote(cs.name) << " {\n";
  os << "  node [shape=box];\n";
  for (const auto* n : nodes) {
    os << "  " << dot_quote(n->type()) << " [label="
       << dot_label({n->type() + " [" + print_interval(n->total) + "]",
                     "name: " + print_names(n->aci.names),
                     "origin: " + print_origins(n->aci.origins),
                     "version: " + print_versions(n->aci.versions)})
       << "];\n";
  }
  for (const auto* n : nodes) {
    for (const auto& [aci, itv] : n->children) {
      os << "  " << dot_quote(n->type()) << " -> " << dot_quote(aci.ctype)
         << " [label=" << dot_quote(print_interval(itv)) << "];\n";
    }
  }
  for (const auto* n : nodes) {
    for (const auto& dep : n->dependencies) {
      os << "  " << dot_quote(n->type()) << " -> " << dot_quote(dep.ctype) << " [style=dashed";
      auto it = node_of.find(dep.ctype);
      if (it == node_of.end() || !(*it->second == dep)) {
        os << ", label=" << dot_label({"name: " + print_names(dep.names),
                                       "origin: " + print_origins(dep.origins),
                                       "version: " + print_versions(dep.versions)});
      }
      os << "];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace confkit
