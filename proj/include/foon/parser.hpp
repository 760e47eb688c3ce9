#pragma once

// Text format for FOON subgraphs (extension: .foon).
//
// Line-oriented, tab-separated, UTF-8. A unit block is: input object lines,
// one motion line, output object lines, then a line containing exactly `//`.
//
//   object line   o<TAB><name>[<TAB>(in|on|under):<target>]
//   state line    s<TAB><state>[<TAB>{<ing>,<ing>,...}]     (after its object)
//                 s<TAB>{<ing>,...}                         (ingredients only)
//   motion line   m<TAB><label>[<TAB><start><TAB><end>]
//
// Lines starting with `#` and blank lines are ignored. Tags are
// case-insensitive on input and lowercase in canonical output. Objects
// before the motion line are inputs; after it, outputs.
//
// Parsing reports diagnostics instead of throwing; a graph parsed with zero
// error-severity diagnostics passes core validation.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "foon/core.hpp"

namespace foon {

struct ParseDiagnostic {
    enum class Severity { error, warning };
    int line = 1;  // 1-based
    Severity severity = Severity::error;
    std::string message;
};

std::string to_string(const ParseDiagnostic& d);

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics);

struct ParseResult {
    FoonGraph graph;
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return !has_errors(diagnostics); }
};

ParseResult parse_graph(std::string_view text);

// Canonical serialization: lowercase tags, tab separators, `//` after every
// unit, one trailing newline; the empty graph serializes to "".
// serialize(parse(serialize(g))) == serialize(g) byte for byte.
std::string serialize_graph(const FoonGraph& graph);

// Kitchen / goal descriptor line:
//   <name>[<TAB><state>{,<state>}][<TAB>{<ing>,...}][<TAB>(in|on|under):<target>]
// Fields after the name are recognized by shape and may appear in any order.
struct KitchenParseResult {
    std::vector<ObjectNode> items;
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return !has_errors(diagnostics); }
};

KitchenParseResult parse_kitchen(std::string_view text);

std::optional<ObjectNode> parse_descriptor(std::string_view line, std::string* error = nullptr);

// Tab-separated descriptor line (parseable back via parse_descriptor).
std::string descriptor_line(const ObjectNode& node);

// Human-readable form, e.g. "lemon (whole) on cutting board".
std::string describe(const ObjectNode& node);

// File helpers; throw std::runtime_error on I/O failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
ParseResult read_graph_file(const std::filesystem::path& path);

}  // namespace foon
