#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>

#include "confkit/textfmt.hpp"

namespace confkit {

std::string SourceSpan::to_string() const {
  return file + ":" + std::to_string(line) + ":" + std::to_string(column);
}

ParseError::ParseError(SourceSpan span, std::string expected, std::string found)
    : Error(ErrorKind::ParseError,
            span.to_string() + ": expected " + expected + ", found " + found),
      span_(std::move(span)),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok { Ident, String, Nat, Punct, DotDot, End };

struct Token {
  Tok kind;
  std::string text;  // unescaped contents for strings
  int line;
  int column;
};

bool ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool ident_char(char ch) {
  return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' || ch == '-';
}

std::string show(char ch) {
  auto u = static_cast<unsigned char>(ch);
  if (u >= 0x20 && u < 0x7f) return std::string("'") + ch + "'";
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", u);
  return buf;
}

class Lexer {
public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line_, column_});
        return out;
      }
      out.push_back(next());
    }
  }

private:
  [[noreturn]] void fail(int line, int column, std::string expected, std::string found) const {
    throw ParseError({file_, line, column}, std::move(expected), std::move(found));
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    const int line = line_;
    const int column = column_;
    const char ch = peek();
    if (ident_start(ch)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) advance();
      return {Tok::Ident, std::string(text_.substr(start, pos_ - start)), line, column};
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      return {Tok::Nat, std::string(text_.substr(start, pos_ - start)), line, column};
    }
    if (ch == '"') return string_literal(line, column);
    if (ch == '.') {
      if (peek(1) != '.') fail(line, column, "'..'", show(peek(1)));
      advance();
      advance();
      return {Tok::DotDot, "..", line, column};
    }
    static constexpr std::string_view punct = "{}()[]:;,|*";
    if (punct.find(ch) != std::string_view::npos) {
      advance();
      return {Tok::Punct, std::string(1, ch), line, column};
    }
    fail(line, column, "a token", show(ch));
  }

  Token string_literal(int line, int column) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (pos_ >= text_.size() || peek() == '\n') {
        fail(line, column, "closing '\"'", pos_ >= text_.size() ? "end of input" : "end of line");
      }
      char ch = peek();
      if (ch == '"') {
        advance();
        return {Tok::String, std::move(value), line, column};
      }
      if (ch == '\\') {
        const int esc_line = line_;
        const int esc_column = column_;
        advance();
        if (pos_ >= text_.size()) fail(esc_line, esc_column, "escape sequence", "end of input");
        char e = peek();
        switch (e) {
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          default: fail(esc_line, esc_column, "one of \\\" \\\\ \\n \\t", std::string("\\") + e);
        }
        advance();
        continue;
      }
      value += ch;
      advance();
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "string \"" + t.text + "\"";
    case Tok::Nat: return "number " + t.text;
    case Tok::Ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Parser {
public:
  Parser(std::string_view text, std::string_view file)
      : file_(file), tokens_(Lexer(text, std::string(file)).run()) {}

  const Token& peek() const { return tokens_[pos_]; }
  Token next() {
    Token t = tokens_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }

  SourceSpan span(const Token& t) const { return {file_, t.line, t.column}; }

  [[noreturn]] void fail_at(const Token& t, std::string expected) const {
    throw ParseError(span(t), std::move(expected), describe(t));
  }

  bool at_punct(char ch) const { return peek().kind == Tok::Punct && peek().text[0] == ch; }
  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  void expect_punct(char ch) {
    if (!at_punct(ch)) fail_at(peek(), std::string("'") + ch + "'");
    next();
  }
  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail_at(peek(), "'" + std::string(kw) + "'");
    next();
  }
  Token expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) fail_at(peek(), std::string(what));
    return next();
  }
  Token expect_string(std::string_view what, bool non_empty = false) {
    if (peek().kind != Tok::String) fail_at(peek(), std::string(what));
    if (non_empty && peek().text.empty()) fail_at(peek(), "non-empty " + std::string(what));
    return next();
  }
  Natural expect_nat() {
    if (peek().kind != Tok::Nat) fail_at(peek(), "natural number");
    const Token t = next();
    Natural value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      throw ParseError(span(t), "natural number below 2^64", t.text);
    }
    return value;
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail_at(peek(), "end of input");
  }

  // NAT ".." (NAT | "*"); the leading NAT may already be consumed.
  NatInf upper_bound() {
    expect_dotdot();
    if (at_punct('*')) {
      next();
      return NatInf::infinity();
    }
    return expect_nat();
  }
  void expect_dotdot() {
    if (peek().kind != Tok::DotDot) fail_at(peek(), "'..'");
    next();
  }

  Interval interval() {
    const Token start = peek();
    const Natural lo = expect_nat();
    const NatInf hi = upper_bound();
    if (NatInf(lo) > hi) {
      throw ParseError(span(start), "interval with lower bound not above upper bound",
                       std::to_string(lo) + ".." + hi.to_string());
    }
    return Interval(lo, hi);
  }

  NameSet nameset() {
    if (at_keyword("any")) {
      next();
      return NameSet::any();
    }
    std::vector<NamePattern> pats;
    do {
      if (!pats.empty()) next();  // '|'
      Token s = expect_string("name pattern");
      bool prefix = false;
      if (at_punct('*')) {
        if (s.text.empty()) fail_at(peek(), "non-empty prefix before '*'");
        next();
        prefix = true;
      }
      pats.push_back({s.text, prefix});
    } while (at_punct('|'));
    return NameSet::of(std::move(pats));
  }

  OriginSet originset() {
    if (at_keyword("any")) {
      next();
      return OriginSet::any();
    }
    std::set<std::string> origins;
    do {
      if (!origins.empty()) next();
      origins.insert(expect_string("origin").text);
    } while (at_punct('|'));
    return OriginSet::of(std::move(origins));
  }

  VersionSet verset() {
    if (at_keyword("any")) {
      next();
      return VersionSet::any();
    }
    std::vector<VersionSet::Range> ranges;
    bool first = true;
    do {
      if (!first) next();
      first = false;
      const Token start = peek();
      const Natural lo = expect_nat();
      NatInf hi = lo;
      if (peek().kind == Tok::DotDot) hi = upper_bound();
      if (NatInf(lo) > hi) {
        throw ParseError(span(start), "version range with lower bound not above upper bound",
                         std::to_string(lo) + ".." + hi.to_string());
      }
      ranges.push_back({lo, hi});
    } while (at_punct('|'));
    return VersionSet::of_ranges(std::move(ranges));
  }

private:
  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct IdFields {
  std::optional<NameSet> names;
  std::optional<OriginSet> origins;
  std::optional<VersionSet> versions;
};

struct RawDep {
  std::string type;
  IdFields fields;
};

struct RawNode {
  std::string type;
  IdFields fields;
  std::optional<Interval> total;
  std::vector<std::pair<std::string, Interval>> contains;
  std::vector<RawDep> depends;
};

// Returns false if the keyword at the cursor is not an identifier field.
bool id_field(Parser& p, IdFields& fields) {
  const Token& t = p.peek();
  if (t.kind != Tok::Ident) return false;
  auto once = [&](bool present) {
    if (present) p.fail_at(t, "a field not given before");
  };
  if (t.text == "name") {
    once(fields.names.has_value());
    p.next();
    p.expect_punct(':');
    fields.names = p.nameset();
  } else if (t.text == "origin") {
    once(fields.origins.has_value());
    p.next();
    p.expect_punct(':');
    fields.origins = p.originset();
  } else if (t.text == "version") {
    once(fields.versions.has_value());
    p.next();
    p.expect_punct(':');
    fields.versions = p.verset();
  } else {
    return false;
  }
  p.expect_punct(';');
  return true;
}

RawNode parse_node(Parser& p) {
  p.expect_keyword("node");
  RawNode node{p.expect_ident("type name").text, {}, {}, {}, {}};
  p.expect_punct('{');
  bool have_contains = false;
  bool have_depends = false;
  while (!p.at_punct('}')) {
    if (id_field(p, node.fields)) continue;
    const Token t = p.peek();
    if (t.kind == Tok::Ident && t.text == "total") {
      if (node.total) p.fail_at(t, "a field not given before");
      p.next();
      p.expect_punct(':');
      node.total = p.interval();
      p.expect_punct(';');
    } else if (t.kind == Tok::Ident && t.text == "contains") {
      if (have_contains) p.fail_at(t, "a field not given before");
      have_contains = true;
      p.next();
      p.expect_punct('{');
      std::set<std::string> seen;
      do {
        if (!seen.empty()) p.next();  // ','
        Token type = p.expect_ident("child type name");
        if (!seen.insert(type.text).second) p.fail_at(type, "a child type not listed before");
        p.expect_punct(':');
        node.contains.emplace_back(type.text, p.interval());
      } while (p.at_punct(','));
      p.expect_punct('}');
    } else if (t.kind == Tok::Ident && t.text == "depends") {
      if (have_depends) p.fail_at(t, "a field not given before");
      have_depends = true;
      p.next();
      p.expect_punct('{');
      std::set<std::string> seen;
      do {
        if (!seen.empty()) p.next();
        Token type = p.expect_ident("dependency type name");
        if (!seen.insert(type.text).second) p.fail_at(type, "a dependency type not listed before");
        RawDep dep{type.text, {}};
        if (p.at_punct('(')) {
          p.next();
          while (!p.at_punct(')')) {
            if (!id_field(p, dep.fields)) p.fail_at(p.peek(), "'name', 'origin', 'version' or ')'");
          }
          p.next();
        }
        node.depends.push_back(std::move(dep));
      } while (p.at_punct(','));
      p.expect_punct('}');
    } else {
      p.fail_at(t, "field name or '}'");
    }
  }
  p.next();  // '}'
  return node;
}

AbstractComponentId with_defaults(std::string type, const IdFields& f,
                                  const AbstractComponentId* base) {
  AbstractComponentId aci = base ? *base : AbstractComponentId::any_of(type);
  aci.ctype = std::move(type);
  if (f.names) aci.names = *f.names;
  if (f.origins) aci.origins = *f.origins;
  if (f.versions) aci.versions = *f.versions;
  return aci;
}

}  // namespace

SpecDocument parse_spec_document(std::string_view text, std::string_view file) {
  Parser p(text, file);
  p.expect_keyword("spec");
  SpecDocument doc;
  doc.spec.name = p.expect_ident("specification name").text;
  p.expect_punct('{');
  std::vector<RawNode> nodes;
  while (!p.at_keyword("root")) {
    if (!p.at_keyword("node")) p.fail_at(p.peek(), nodes.empty() ? "'node'" : "'node' or 'root'");
    nodes.push_back(parse_node(p));
  }
  p.next();  // root
  doc.declared_root = p.expect_ident("root type name").text;
  p.expect_punct(';');
  p.expect_punct('}');
  p.expect_end();

  std::map<std::string, AbstractComponentId> node_aci;
  for (const auto& n : nodes) node_aci.emplace(n.type, with_defaults(n.type, n.fields, nullptr));

  auto lookup = [&](const std::string& type) -> const AbstractComponentId* {
    auto it = node_aci.find(type);
    return it == node_aci.end() ? nullptr : &it->second;
  };

  for (const auto& n : nodes) {
    ComponentSpec spec;
    spec.aci = with_defaults(n.type, n.fields, nullptr);
    std::vector<Interval> intervals;
    for (const auto& [type, itv] : n.contains) {
      const auto* target = lookup(type);
      spec.children.emplace(target ? *target : AbstractComponentId::any_of(type), itv);
      intervals.push_back(itv);
    }
    // Unspecified dependency fields follow the node of that type.
    for (const auto& dep : n.depends) {
      spec.dependencies.insert(with_defaults(dep.type, dep.fields, lookup(dep.type)));
    }
    spec.total = n.total ? *n.total : interval_fold_sum(intervals);
    doc.spec.specs.push_back(std::move(spec));
  }
  return doc;
}

ValidationReport SpecDocument::validate() const {
  ValidationReport report = validate_spec(spec);
  if (!report.has(Condition::UniqueRoot) && !report.has(Condition::DistinctTypes)) {
    const auto& actual = root_spec(spec);
    if (actual.type() != declared_root) {
      report.violations.push_back({Condition::RootDeclaration, {declared_root, actual.type()},
                                   "declared root " + declared_root + " but the root is " +
                                       actual.type()});
    }
  }
  return report;
}

ConfigurationSpec parse_spec(std::string_view text, std::string_view file) {
  SpecDocument doc = parse_spec_document(text, file);
  auto report = doc.validate();
  if (!report.ok()) {
    throw ValidationError(ErrorKind::SpecInvalid, std::string(file) + ": invalid specification",
                          std::move(report));
  }
  return std::move(doc.spec);
}

// ---------------------------------------------------------------------------

namespace {

struct RawComponent {
  std::string handle;
  ComponentId id;
  bool composite = false;
  std::vector<std::string> children;
  std::set<std::string> files;
  std::vector<std::string> depends;
};

}  // namespace

ConfigDocument parse_config_document(std::string_view text, std::string_view file) {
  Parser p(text, file);
  p.expect_keyword("config");
  ConfigDocument doc;
  doc.config.name = p.expect_ident("configuration name").text;
  p.expect_punct('{');

  std::vector<RawComponent> raw;
  std::map<std::string, ComponentId> by_handle;
  do {
    p.expect_keyword("component");
    RawComponent rc;
    Token handle = p.expect_ident("component handle");
    rc.handle = handle.text;
    p.expect_punct(':');
    rc.id.ctype = p.expect_ident("type name").text;
    p.expect_punct('(');
    rc.id.name = p.expect_string("component name", true).text;
    p.expect_punct(',');
    rc.id.origin = p.expect_string("component origin", true).text;
    p.expect_punct(',');
    rc.id.version = p.expect_nat();
    p.expect_punct(')');

    if (p.at_keyword("contains")) {
      p.next();
      rc.composite = true;
      p.expect_punct('[');
      while (!p.at_punct(']')) {
        if (!rc.children.empty()) p.expect_punct(',');
        rc.children.push_back(p.expect_ident("child handle").text);
      }
      p.next();
    } else if (p.at_keyword("files")) {
      p.next();
      p.expect_punct('[');
      bool first = true;
      while (!p.at_punct(']')) {
        if (!first) p.expect_punct(',');
        first = false;
        rc.files.insert(p.expect_string("file name").text);
      }
      p.next();
    } else {
      p.fail_at(p.peek(), "'contains' or 'files'");
    }
    if (p.at_keyword("depends")) {
      p.next();
      p.expect_punct('[');
      do {
        if (!rc.depends.empty()) p.next();
        rc.depends.push_back(p.expect_ident("dependency handle").text);
      } while (p.at_punct(','));
      p.expect_punct(']');
    }
    p.expect_punct(';');

    if (!by_handle.emplace(rc.handle, rc.id).second) {
      throw ParseError(p.span(handle), "a handle not declared before", rc.handle);
    }
    raw.push_back(std::move(rc));
  } while (!p.at_punct('}'));
  p.next();
  p.expect_end();

  for (const auto& rc : raw) {
    std::set<ComponentId> deps;
    for (const auto& h : rc.depends) {
      auto it = by_handle.find(h);
      if (it == by_handle.end()) {
        doc.unresolved.push_back({Condition::DependencyClosure, {rc.id.to_string(), h},
                                  "dependency '" + h + "' of " + rc.id.to_string() +
                                      " is not declared"});
      } else {
        deps.insert(it->second);
      }
    }
    if (rc.composite) {
      std::set<ComponentId> children;
      for (const auto& h : rc.children) {
        auto it = by_handle.find(h);
        if (it == by_handle.end()) {
          doc.unresolved.push_back({Condition::ChildrenClosure, {rc.id.to_string(), h},
                                    "child '" + h + "' of " + rc.id.to_string() + " is not declared"});
        } else {
          children.insert(it->second);
        }
      }
      doc.config.components.push_back(Component::composite(rc.id, std::move(children), std::move(deps)));
    } else {
      doc.config.components.push_back(Component::leaf(rc.id, rc.files, std::move(deps)));
    }
  }
  return doc;
}

ValidationReport ConfigDocument::validate() const {
  ValidationReport report = validate_configuration(config);
  report.violations.insert(report.violations.begin(), unresolved.begin(), unresolved.end());
  return report;
}

Configuration parse_config(std::string_view text, std::string_view file) {
  ConfigDocument doc = parse_config_document(text, file);
  auto report = doc.validate();
  if (!report.ok()) {
    throw ValidationError(ErrorKind::ConfigInvalid, std::string(file) + ": invalid configuration",
                          std::move(report));
  }
  return std::move(doc.config);
}

}  // namespace confkit
