#include "confkit/json_io.hpp"

#include <cstdio>

namespace confkit {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::ParseError, "malformed JSON: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) malformed(std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) malformed(std::string("\"") + key + "\" must be an array");
  return v;
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::uint64_t unhex(const std::string& s) {
  if (s.empty() || s.size() > 16) malformed("bad fingerprint \"" + s + "\"");
  std::uint64_t x = 0;
  for (char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9') d = ch - '0';
    else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
    else malformed("bad fingerprint \"" + s + "\"");
    x = x << 4 | static_cast<std::uint64_t>(d);
  }
  return x;
}

Json ids_json(const std::set<ComponentId>& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(to_json(id));
  return out;
}

}  // namespace

Json to_json(const ComponentId& id) {
  return Json{{"type", id.ctype}, {"name", id.name}, {"origin", id.origin}, {"version", id.version}};
}

Json to_json(const Component& c) {
  Json out{{"id", to_json(c.id)}};
  if (const auto* e = std::get_if<Elements>(&c.payload)) {
    out["files"] = e->names;
  } else {
    out["contains"] = ids_json(c.children());
  }
  out["depends"] = ids_json(c.dependencies);
  return out;
}

Json to_json(const ChangeSet& change) {
  return std::visit(
      [](const auto& ch) -> Json {
        using T = std::decay_t<decltype(ch)>;
        if constexpr (std::is_same_v<T, ExtendChange>) {
          Json components = Json::array();
          for (const auto& c : ch.components) components.push_back(to_json(c));
          Json attach = Json::array();
          for (const auto& a : ch.attachments) {
            attach.push_back(Json{{"root", to_json(a.root)}, {"parent", to_json(a.parent)}});
          }
          return Json{{"kind", "extend"}, {"components", components}, {"attach", attach}};
        } else if constexpr (std::is_same_v<T, UpdateChange>) {
          Json replace = Json::array();
          for (const auto& [old_id, next] : ch.replacements) {
            replace.push_back(Json{{"old", to_json(old_id)}, {"new", to_json(next)}});
          }
          return Json{{"kind", "update"}, {"replace", replace}};
        } else {
          Json ids = Json::array();
          for (const auto& id : ch.ids) ids.push_back(to_json(id));
          return Json{{"kind", "remove"}, {"ids", ids}};
        }
      },
      change);
}

Json to_json(const JournalEntry& entry) {
  return Json{{"seq", entry.sequence},
              {"before", hex(entry.before)},
              {"after", hex(entry.after)},
              {"change", to_json(entry.change)},
              {"inverse", to_json(entry.inverse)}};
}

Json to_json(const Violation& v) {
  return Json{{"condition", std::string(to_string(v.condition))},
              {"subjects", v.subjects},
              {"message", v.message}};
}

Json to_json(const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back(to_json(v));
  Json warnings = Json::array();
  for (const auto& v : report.warnings) warnings.push_back(to_json(v));
  return Json{{"ok", report.ok()}, {"violations", violations}, {"warnings", warnings}};
}

Json to_json(const ComplianceVerdict& verdict) {
  Json failures = Json::array();
  for (const auto& f : verdict.failures) {
    failures.push_back(Json{{"subject", f.subject},
                            {"clause", std::string(to_string(f.clause))},
                            {"detail", f.detail}});
  }
  return Json{{"compliant", verdict.compliant}, {"failures", failures}};
}

Json to_json(const CompatVerdict& verdict) {
  Json reasons = Json::array();
  for (const auto& r : verdict.reasons) {
    reasons.push_back(Json{{"subject", r.subject}, {"cause", std::string(to_string(r.cause))}});
  }
  return Json{{"compatible", verdict.compatible}, {"reasons", reasons}};
}

Json to_json(const AbstractComponentId& aci) {
  Json out{{"type", aci.ctype}};
  if (aci.names.is_any()) {
    out["names"] = "any";
  } else {
    Json names = Json::array();
    for (const auto& p : aci.names.patterns()) {
      names.push_back(Json{{"text", p.text}, {"prefix", p.prefix}});
    }
    out["names"] = names;
  }
  if (aci.origins.is_any()) {
    out["origins"] = "any";
  } else {
    out["origins"] = aci.origins.origins();
  }
  if (aci.versions.is_any()) {
    out["versions"] = "any";
  } else {
    Json versions = Json::array();
    for (const auto& r : aci.versions.ranges()) {
      // null stands for an unbounded upper end
      versions.push_back(Json::array({r.lo, r.hi.is_infinite() ? Json() : Json(r.hi.value())}));
    }
    out["versions"] = versions;
  }
  return out;
}

Json to_json(const SpecSet& specs) {
  auto interval = [](const Interval& itv) {
    return Json::array({itv.lo(), itv.hi().is_infinite() ? Json() : Json(itv.hi().value())});
  };
  Json out = Json::array();
  for (const auto& [type, cs] : specs.specs) {
    Json deps = Json::array();
    for (const auto& d : cs.dependencies) deps.push_back(to_json(d));
    Json children = Json::array();
    for (const auto& [aci, itv] : cs.children) {
      children.push_back(Json{{"aci", to_json(aci)}, {"interval", interval(itv)}});
    }
    out.push_back(Json{{"aci", to_json(cs.aci)},
                       {"depends", deps},
                       {"contains", children},
                       {"total", interval(cs.total)}});
  }
  return out;
}

ComponentId component_id_from_json(const Json& j) {
  const Json& v = field(j, "version");
  if (!v.is_number_unsigned()) malformed("\"version\" must be a natural number");
  return ComponentId{string_field(j, "type"), string_field(j, "name"), string_field(j, "origin"),
                     v.get<Natural>()};
}

Component component_from_json(const Json& j) {
  const ComponentId id = component_id_from_json(field(j, "id"));
  std::set<ComponentId> deps;
  if (j.contains("depends")) {
    for (const auto& d : array_field(j, "depends")) deps.insert(component_id_from_json(d));
  }
  const bool has_files = j.contains("files");
  const bool has_children = j.contains("contains");
  if (has_files == has_children) malformed("a component needs exactly one of \"files\" and \"contains\"");
  if (has_files) {
    std::set<std::string> files;
    for (const auto& f : array_field(j, "files")) {
      if (!f.is_string()) malformed("\"files\" must hold strings");
      files.insert(f.get<std::string>());
    }
    return Component::leaf(id, std::move(files), std::move(deps));
  }
  std::set<ComponentId> children;
  for (const auto& c : array_field(j, "contains")) children.insert(component_id_from_json(c));
  return Component::composite(id, std::move(children), std::move(deps));
}

ChangeSet changeset_from_json(const Json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "extend") {
    ExtendChange ch;
    for (const auto& c : array_field(j, "components")) ch.components.push_back(component_from_json(c));
    if (j.contains("attach")) {
      for (const auto& a : array_field(j, "attach")) {
        ch.attachments.push_back(
            {component_id_from_json(field(a, "root")), component_id_from_json(field(a, "parent"))});
      }
    }
    return ch;
  }
  if (kind == "update") {
    UpdateChange ch;
    for (const auto& r : array_field(j, "replace")) {
      ch.replacements.emplace_back(component_id_from_json(field(r, "old")),
                                   component_from_json(field(r, "new")));
    }
    return ch;
  }
  if (kind == "remove") {
    RemoveChange ch;
    for (const auto& id : array_field(j, "ids")) ch.ids.push_back(component_id_from_json(id));
    return ch;
  }
  malformed("unknown change kind \"" + kind + "\"");
}

JournalEntry journal_entry_from_json(const Json& j) {
  const Json& seq = field(j, "seq");
  if (!seq.is_number_unsigned()) malformed("\"seq\" must be a natural number");
  return JournalEntry{changeset_from_json(field(j, "change")), changeset_from_json(field(j, "inverse")),
                      seq.get<std::uint64_t>(), unhex(string_field(j, "before")),
                      unhex(string_field(j, "after"))};
}

ChangeSet parse_changeset(std::string_view text) {
  Json j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded()) malformed("not a JSON document");
  return changeset_from_json(j);
}

std::string journal_line(const JournalEntry& entry) { return to_json(entry).dump(); }

JournalEntry parse_journal_line(std::string_view line) {
  Json j = Json::parse(line.begin(), line.end(), nullptr, false);
  if (j.is_discarded()) malformed("journal line is not JSON");
  return journal_entry_from_json(j);
}

}  // namespace confkit
