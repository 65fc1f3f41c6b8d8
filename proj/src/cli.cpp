#include "confkit/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "confkit/json_io.hpp"
#include "confkit/textfmt.hpp"

namespace confkit {

namespace {

namespace fs = std::filesystem;

enum Exit { Ok = 0, Failed = 1, Broken = 2 };

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write " + path);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

int report_error(const Context& ctx, const Error& e, int code) {
  if (ctx.json) {
    Json j{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"details", e.details()}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) j["report"] = to_json(v->report());
    ctx.out << Json{{"error", j}}.dump(2) << "\n";
  } else {
    ctx.err << "confkit: " << e.what() << "\n";
  }
  return code;
}

void print_violations(std::ostream& os, const ValidationReport& report) {
  auto line = [&](const char* level, const Violation& v) {
    os << level << ": " << to_string(v.condition) << ": " << v.message << "\n";
  };
  for (const auto& v : report.violations) line("error", v);
  for (const auto& v : report.warnings) line("warning", v);
}

bool is_spec_path(const std::string& path) { return fs::path(path).extension() == ".csg"; }

// ---------------------------------------------------------------------------

int cmd_validate(const Context& ctx, const std::string& spec_path, const std::string& config_path) {
  ValidationReport report;
  if (!spec_path.empty()) {
    report = parse_spec_document(read_file(spec_path), spec_path).validate();
  } else {
    report = parse_config_document(read_file(config_path), config_path).validate();
  }
  if (ctx.json) {
    ctx.out << to_json(report).dump(2) << "\n";
  } else {
    print_violations(ctx.out, report);
    if (report.ok()) ctx.out << "valid\n";
  }
  return report.ok() ? Ok : Failed;
}

int cmd_check(const Context& ctx, const std::string& config_path, const std::string& spec_path,
              const CheckOptions& options, bool explain) {
  const Configuration c = parse_config(read_file(config_path), config_path);
  const ConfigurationSpec cs = parse_spec(read_file(spec_path), spec_path);
  const ComplianceVerdict verdict = compliant(c, cs, options);
  if (ctx.json) {
    ctx.out << to_json(verdict).dump(2) << "\n";
  } else if (verdict.compliant) {
    ctx.out << "compliant\n";
  } else {
    ctx.out << "not compliant\n";
    if (explain) {
      for (const auto& f : verdict.failures) {
        ctx.out << "  " << f.subject << ": " << to_string(f.clause) << ": " << f.detail << "\n";
      }
    }
  }
  return verdict.compliant ? Ok : Failed;
}

int cmd_infer(const Context& ctx, const std::string& config_path, const InferenceOptions& options) {
  const Configuration c = parse_config(read_file(config_path), config_path);
  const SpecSet specs = infer(c, options);
  const std::string root = root_of(c).id.ctype;
  if (ctx.json) {
    ctx.out << Json{{"validated", false}, {"root", root}, {"specs", to_json(specs)}}.dump(2) << "\n";
  } else {
    ctx.out << print_specset(specs, c.name, root);
  }
  return Ok;
}

int cmd_compat(const Context& ctx, const std::string& a_path, const std::string& b_path,
               const std::string& spec_path, const CompatOptions& options) {
  const Configuration a = parse_config(read_file(a_path), a_path);
  const Configuration b = parse_config(read_file(b_path), b_path);
  const ConfigurationSpec cs = parse_spec(read_file(spec_path), spec_path);
  const CompatVerdict verdict = compatible(a, b, cs, options);
  if (ctx.json) {
    ctx.out << to_json(verdict).dump(2) << "\n";
  } else if (verdict.compatible) {
    ctx.out << "compatible\n";
  } else {
    ctx.out << "not compatible\n";
    for (const auto& r : verdict.reasons) {
      ctx.out << "  " << r.subject << ": " << to_string(r.cause) << "\n";
    }
  }
  return verdict.compatible ? Ok : Failed;
}

int cmd_apply(const Context& ctx, const std::string& config_path, const std::string& change_path,
              const std::string& spec_path, std::string journal_path, bool dry_run,
              const CheckOptions& options) {
  const Configuration c = parse_config(read_file(config_path), config_path);
  const ConfigurationSpec cs = parse_spec(read_file(spec_path), spec_path);
  const ChangeSet change = parse_changeset(read_file(change_path));
  if (journal_path.empty()) journal_path = config_path + ".journal";

  std::uint64_t sequence = 1;
  if (fs::exists(journal_path)) {
    const auto lines = read_lines(journal_path);
    if (!lines.empty()) sequence = parse_journal_line(lines.back()).sequence + 1;
  }

  Applied applied = [&] {
    try {
      return apply(c, change, cs, options, sequence);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::WouldViolateSpec || e.kind() == ErrorKind::DependencyGuard) {
        report_error(ctx, e, Failed);
        throw Failed;
      }
      throw;
    }
  }();
  const std::string text = print_config(applied.config);

  if (!dry_run) {
    write_file(config_path, text);
    std::ofstream journal(journal_path, std::ios::binary | std::ios::app);
    if (!journal || !(journal << journal_line(applied.entry) << "\n")) {
      throw Error(ErrorKind::Io, "cannot append to " + journal_path);
    }
  }
  if (ctx.json) {
    ctx.out << Json{{"applied", !dry_run}, {"entry", to_json(applied.entry)}, {"config", text}}.dump(2)
            << "\n";
  } else if (dry_run) {
    ctx.out << text;
  } else {
    ctx.out << "applied change " << sequence << " to " << config_path << "\n";
  }
  return Ok;
}

int cmd_undo(const Context& ctx, const std::string& config_path, const std::string& journal_path) {
  const Configuration c = parse_config(read_file(config_path), config_path);
  auto lines = read_lines(journal_path);
  if (lines.empty()) throw Error(ErrorKind::JournalMismatch, journal_path + " has no entries");
  const JournalEntry entry = parse_journal_line(lines.back());
  const Configuration restored = undo(c, entry);
  const std::string text = print_config(restored);

  write_file(config_path, text);
  lines.pop_back();
  if (lines.empty()) {
    fs::remove(journal_path);
  } else {
    std::string rest;
    for (const auto& l : lines) rest += l + "\n";
    write_file(journal_path, rest);
  }
  if (ctx.json) {
    ctx.out << Json{{"undone", entry.sequence}, {"config", text}}.dump(2) << "\n";
  } else {
    ctx.out << "undid change " << entry.sequence << " on " << config_path << "\n";
  }
  return Ok;
}

int cmd_dot(const Context& ctx, const std::string& path) {
  const std::string text = read_file(path);
  const std::string dot = is_spec_path(path) ? to_dot(parse_spec(text, path))
                                             : to_dot(parse_config(text, path));
  if (ctx.json) {
    ctx.out << Json{{"dot", dot}}.dump(2) << "\n";
  } else {
    ctx.out << dot;
  }
  return Ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Validate software configurations against configuration specifications.", "confkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string spec_path, config_path, other_path, change_path, journal_path;
  bool strict_lower = false, faithful = false, explain = false, strict_names = false, dry_run = false;

  auto* validate = app.add_subcommand("validate", "Check that a spec or config file is well formed");
  auto* v_spec = validate->add_option("--spec", spec_path, "Specification file (.csg)");
  auto* v_config = validate->add_option("--config", config_path, "Configuration file (.cg)");
  v_spec->excludes(v_config);
  validate->require_option(1);

  auto* check = app.add_subcommand("check", "Check a configuration against a specification");
  check->add_option("config", config_path)->required();
  check->add_option("spec", spec_path)->required();
  check->add_flag("--strict-lower-bounds", strict_lower, "Require mandatory child types to occur");
  check->add_flag("--faithful-leaf-rule", faithful, "Infer leaf totals as [1,1]");
  check->add_flag("--explain", explain, "Print the failing clause of each node");

  auto* infer_cmd = app.add_subcommand("infer", "Print the specification inferred from a configuration");
  infer_cmd->add_option("config", config_path)->required();
  infer_cmd->add_flag("--faithful-leaf-rule", faithful, "Infer leaf totals as [1,1]");

  auto* compat = app.add_subcommand("compat", "Check that B is compatible with A");
  compat->add_option("a", config_path)->required();
  compat->add_option("b", other_path)->required();
  compat->add_option("--spec", spec_path)->required();
  compat->add_flag("--strict-names", strict_names, "Compare the names of composite components too");

  auto* apply_cmd = app.add_subcommand("apply", "Apply a change set to a configuration");
  apply_cmd->add_option("config", config_path)->required();
  apply_cmd->add_option("changeset", change_path)->required();
  apply_cmd->add_option("--spec", spec_path)->required();
  apply_cmd->add_flag("--dry-run", dry_run, "Print the result without writing anything");
  apply_cmd->add_option("--journal", journal_path, "Journal file (default: CONFIG.journal)");

  auto* undo_cmd = app.add_subcommand("undo", "Revert the last journal entry");
  undo_cmd->add_option("config", config_path)->required();
  undo_cmd->add_option("journal", journal_path)->required();

  auto* dot = app.add_subcommand("dot", "Export a spec or config as GraphViz DOT");
  dot->add_option("path", config_path)->required();

  std::vector<const char*> argv{"confkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Broken;
  }

  if (const char* env = std::getenv("CONFKIT_FORMAT"); env != nullptr && *env != '\0') format = env;
  Context ctx{out, err, format == "json"};
  if (format != "json" && format != "text") {
    err << "confkit: unknown format " << format << "\n";
    return Broken;
  }

  CheckOptions check_options{faithful ? LeafRule::Faithful : LeafRule::Merged, strict_lower};
  try {
    if (validate->parsed()) return cmd_validate(ctx, spec_path, config_path);
    if (check->parsed()) return cmd_check(ctx, config_path, spec_path, check_options, explain);
    if (infer_cmd->parsed()) return cmd_infer(ctx, config_path, {check_options.leaf_rule});
    if (compat->parsed()) {
      CompatOptions options{strict_names ? NameMode::Strict : NameMode::Relaxed, check_options};
      return cmd_compat(ctx, config_path, other_path, spec_path, options);
    }
    if (apply_cmd->parsed()) {
      return cmd_apply(ctx, config_path, change_path, spec_path, journal_path, dry_run, check_options);
    }
    if (undo_cmd->parsed()) return cmd_undo(ctx, config_path, journal_path);
    if (dot->parsed()) return cmd_dot(ctx, config_path);
  } catch (Exit code) {
    return code;
  } catch (const ValidationError& e) {
    // An inferred spec needs a well-formed configuration to start from.
    return report_error(ctx, e, infer_cmd->parsed() ? Broken : Failed);
  } catch (const Error& e) {
    return report_error(ctx, e, Broken);
  }
  return Broken;
}

}  // namespace confkit
