#pragma once

// Text formats: the `.csg` specification language, the `.cg` configuration
// language, their canonical printers, and GraphViz DOT export.
//
//   specfile   = "spec" IDENT "{" node+ "root" TYPEID ";" "}" ;
//   node       = "node" TYPEID "{" field* "}" ;
//   field      = "name" ":" nameset ";" | "origin" ":" originset ";"
//              | "version" ":" verset ";" | "total" ":" interval ";"
//              | "contains" "{" TYPEID ":" interval { "," TYPEID ":" interval } "}"
//              | "depends" "{" dep { "," dep } "}" ;
//   dep        = TYPEID [ "(" field* ")" ] ;
//   nameset    = "any" | pat { "|" pat } ;   pat = STRING | STRING "*" ;
//   originset  = "any" | STRING { "|" STRING } ;
//   verset     = "any" | vitem { "|" vitem } ;   vitem = NAT | interval ;
//   interval   = NAT ".." ( NAT | "*" ) ;
//   configfile = "config" IDENT "{" comp+ "}" ;
//   comp       = "component" IDENT ":" TYPEID "(" STRING "," STRING "," NAT ")"
//                ( "contains" "[" [ IDENT { "," IDENT } ] "]"
//                | "files" "[" [ STRING { "," STRING } ] "]" )
//                [ "depends" "[" IDENT { "," IDENT } "]" ] ";" ;
//
// Comments run from `#` to the end of the line. Keywords are contextual.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confkit/inference.hpp"
#include "confkit/model.hpp"

namespace confkit {

struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const;  // "file:line:column"
};

class ParseError : public Error {
public:
  ParseError(SourceSpan span, std::string expected, std::string found);

  const SourceSpan& span() const noexcept { return span_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

private:
  SourceSpan span_;
  std::string expected_;
  std::string found_;
};

/// A syntactically valid `.csg` file, before semantic validation.
struct SpecDocument {
  ConfigurationSpec spec;
  std::string declared_root;

  /// validate_spec plus the check that `root` names the actual root.
  ValidationReport validate() const;
};

/// A syntactically valid `.cg` file. References to undeclared handles are
/// kept aside as closure violations since they have no identity.
struct ConfigDocument {
  Configuration config;
  std::vector<Violation> unresolved;

  ValidationReport validate() const;
};

SpecDocument parse_spec_document(std::string_view text, std::string_view file = "<input>");
ConfigDocument parse_config_document(std::string_view text, std::string_view file = "<input>");

/// Parse and validate. Throws ParseError, or ValidationError(SpecInvalid).
ConfigurationSpec parse_spec(std::string_view text, std::string_view file = "<input>");
/// Parse and validate. Throws ParseError, or ValidationError(ConfigInvalid).
Configuration parse_config(std::string_view text, std::string_view file = "<input>");

/// Canonical form: nodes sorted by type, components by type, name, version
/// and origin; two-space indentation. parse(print(x)) == x.
std::string print_spec(const ConfigurationSpec& cs);
std::string print_config(const Configuration& c);

/// An inferred (unvalidated) specification in `.csg` syntax. Child entries
/// are written by type, so this is informative rather than round-trippable.
std::string print_specset(const SpecSet& specs, std::string_view name,
                          std::optional<std::string> root_type);

std::string to_dot(const Configuration& c);
std::string to_dot(const ConfigurationSpec& cs);

/// The handles print_config assigns, in canonical component order.
std::vector<std::pair<ComponentId, std::string>> assign_handles(const Configuration& c);

}  // namespace confkit
