#pragma once

// JSON encodings of change sets, journal entries and check results. These
// are the machine-readable forms used by the command line tool.

#include <string>
#include <string_view>

#include <json.hpp>

#include "confkit/lifecycle.hpp"

namespace confkit {

using Json = nlohmann::ordered_json;

Json to_json(const ComponentId& id);
Json to_json(const Component& c);
Json to_json(const ChangeSet& change);
Json to_json(const JournalEntry& entry);
Json to_json(const Violation& v);
Json to_json(const ValidationReport& report);
Json to_json(const ComplianceVerdict& verdict);
Json to_json(const CompatVerdict& verdict);
Json to_json(const AbstractComponentId& aci);
Json to_json(const SpecSet& specs);

// Decoders throw Error(ParseError) on malformed input.
ComponentId component_id_from_json(const Json& j);
Component component_from_json(const Json& j);
ChangeSet changeset_from_json(const Json& j);
JournalEntry journal_entry_from_json(const Json& j);

ChangeSet parse_changeset(std::string_view text);

/// One journal entry as a single line of compact JSON, without newline.
std::string journal_line(const JournalEntry& entry);
JournalEntry parse_journal_line(std::string_view line);

}  // namespace confkit
