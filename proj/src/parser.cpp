#include "foon/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace foon {

namespace {

using Severity = ParseDiagnostic::Severity;

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            return fields;
        }
        fields.emplace_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool is_ingredient_list(std::string_view field) {
    return field.size() >= 2 && field.front() == '{' && field.back() == '}';
}

std::vector<std::string> split_ingredients(std::string_view braced) {
    std::vector<std::string> items;
    std::string_view inner = braced.substr(1, braced.size() - 2);
    std::size_t start = 0;
    while (start <= inner.size()) {
        std::size_t comma = inner.find(',', start);
        if (comma == std::string_view::npos) comma = inner.size();
        items.emplace_back(inner.substr(start, comma - start));
        start = comma + 1;
        if (comma == inner.size()) break;
    }
    return items;
}

// "in:bowl" -> (Relation::in, "bowl"); empty optional if not a relation field.
std::optional<std::pair<Relation, std::string>> parse_relation_field(std::string_view field) {
    std::size_t colon = field.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto kind = relation_from(normalize_token(field.substr(0, colon)));
    if (!kind || *kind == Relation::none) return std::nullopt;
    return std::make_pair(*kind, std::string(field.substr(colon + 1)));
}

struct UnitBuilder {
    std::vector<ObjectNode> inputs;
    std::vector<ObjectNode> outputs;
    MotionNode motion;
    bool has_motion = false;
    bool has_content = false;  // any o/s/m line seen since the last terminator
    bool bad = false;
    ObjectNode* current = nullptr;

    void reset() { *this = UnitBuilder{}; }
};

class GraphParser {
public:
    ParseResult run(std::string_view text) {
        int line_no = 0;
        std::size_t start = 0;
        // Strip a UTF-8 BOM if present.
        if (text.size() >= 3 && text.compare(0, 3, "\xef\xbb\xbf") == 0) start = 3;
        while (start <= text.size()) {
            std::size_t nl = text.find('\n', start);
            std::string_view line = (nl == std::string_view::npos)
                                        ? text.substr(start)
                                        : text.substr(start, nl - start);
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            handle_line(line, line_no);
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
        if (unit_.has_content) error(line_no, "unterminated unit block (missing '//')");
        ParseResult result;
        result.graph = FoonGraph(std::move(units_));
        result.diagnostics = std::move(diagnostics_);
        return result;
    }

private:
    void handle_line(std::string_view line, int line_no) {
        if (line.empty()) return;
        // Only whitespace: ignore.
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) return;
        std::size_t first = line.find_first_not_of(" \t");
        if (line[first] == '#') return;
        if (line == "//") {
            finish_unit(line_no);
            return;
        }
        auto fields = split_tabs(line);
        std::string tag = normalize_token(fields[0]);
        if (tag == "o") {
            object_line(fields, line_no);
        } else if (tag == "s") {
            state_line(fields, line_no);
        } else if (tag == "m") {
            motion_line(fields, line_no);
        } else {
            error(line_no, "unknown line tag '" + std::string(fields[0]) + "'");
            unit_.bad = true;
            unit_.has_content = true;
        }
    }

    void object_line(const std::vector<std::string>& fields, int line_no) {
        unit_.has_content = true;
        unit_.current = nullptr;
        std::string name = fields.size() > 1 ? normalize_token(fields[1]) : std::string();
        if (name.empty()) {
            error(line_no, "object line missing name");
            unit_.bad = true;
            return;
        }
        ObjectNode node = make_node(name);
        if (fields.size() > 2) {
            auto rel = parse_relation_field(fields[2]);
            if (!rel) {
                error(line_no, "malformed relation field '" + fields[2] +
                                   "' (expected in:/on:/under:<target>)");
                unit_.bad = true;
                return;
            }
            std::string target = normalize_token(rel->second);
            if (target.empty()) {
                error(line_no, "relation field has empty target");
                unit_.bad = true;
                return;
            }
            node.relation = rel->first;
            node.relation_target = target;
        }
        if (fields.size() > 3) {
            error(line_no, "object line has trailing fields");
            unit_.bad = true;
            return;
        }
        auto& side = unit_.has_motion ? unit_.outputs : unit_.inputs;
        side.push_back(std::move(node));
        unit_.current = &side.back();
    }

    void state_line(const std::vector<std::string>& fields, int line_no) {
        unit_.has_content = true;
        if (!unit_.current) {
            error(line_no, "state line without a preceding object line");
            unit_.bad = true;
            return;
        }
        if (fields.size() < 2) {
            error(line_no, "state line missing value");
            unit_.bad = true;
            return;
        }
        std::size_t next = 2;
        if (is_ingredient_list(fields[1])) {
            add_ingredients(fields[1], line_no);
        } else {
            std::string state = normalize_token(fields[1]);
            if (state.empty()) {
                error(line_no, "state line missing value");
                unit_.bad = true;
                return;
            }
            auto& states = unit_.current->states;
            if (std::find(states.begin(), states.end(), state) != states.end())
                warning(line_no, "duplicate state '" + state + "' ignored");
            else
                states.push_back(std::move(state));
            if (fields.size() > 2) {
                if (!is_ingredient_list(fields[2])) {
                    error(line_no, "expected ingredient list '{...}' after state");
                    unit_.bad = true;
                    return;
                }
                add_ingredients(fields[2], line_no);
                next = 3;
            }
        }
        if (fields.size() > next) {
            error(line_no, "state line has trailing fields");
            unit_.bad = true;
        }
    }

    void add_ingredients(std::string_view braced, int line_no) {
        for (const auto& raw : split_ingredients(braced)) {
            std::string item = normalize_token(raw);
            if (item.empty()) {
                if (braced != "{}") warning(line_no, "empty ingredient entry ignored");
                continue;
            }
            auto& ings = unit_.current->ingredients;
            if (std::find(ings.begin(), ings.end(), item) != ings.end())
                warning(line_no, "duplicate ingredient '" + item + "' ignored");
            else
                ings.push_back(std::move(item));
        }
    }

    void motion_line(const std::vector<std::string>& fields, int line_no) {
        unit_.has_content = true;
        unit_.current = nullptr;
        if (unit_.inputs.empty()) {
            error(line_no, "motion line before any object line");
            unit_.bad = true;
        }
        if (unit_.has_motion) {
            error(line_no, "unit has more than one motion line");
            unit_.bad = true;
            return;
        }
        std::string label = fields.size() > 1 ? normalize_token(fields[1]) : std::string();
        if (label.empty()) {
            error(line_no, "motion line missing label");
            unit_.bad = true;
            return;
        }
        unit_.motion.label = std::move(label);
        if (fields.size() == 3) {
            error(line_no, "motion timestamps require both start and end");
            unit_.bad = true;
            return;
        }
        if (fields.size() >= 4) {
            unit_.motion.start_time = trim(fields[2]);
            unit_.motion.end_time = trim(fields[3]);
            double s = 0, e = 0;
            if (to_number(unit_.motion.start_time, s) && to_number(unit_.motion.end_time, e) &&
                s > e) {
                error(line_no, "motion start time after end time");
                unit_.bad = true;
                return;
            }
        }
        if (fields.size() > 4) {
            error(line_no, "motion line has trailing fields");
            unit_.bad = true;
            return;
        }
        unit_.has_motion = true;
    }

    void finish_unit(int line_no) {
        if (!unit_.has_content) {
            error(line_no, "unit terminator '//' without unit content");
            unit_.reset();
            return;
        }
        if (!unit_.bad) {
            if (!unit_.has_motion) {
                error(line_no, "unit has no motion line");
                unit_.bad = true;
            } else if (unit_.inputs.empty()) {
                error(line_no, "unit has no input objects");
                unit_.bad = true;
            }
        }
        if (!unit_.bad) {
            FunctionalUnit u;
            u.inputs = std::move(unit_.inputs);
            u.outputs = std::move(unit_.outputs);
            u.motion = std::move(unit_.motion);
            if (has_duplicate_nodes(u.inputs))
                error(line_no, "duplicate node among unit inputs");
            else if (has_duplicate_nodes(u.outputs))
                error(line_no, "duplicate node among unit outputs");
            else if (!unit_keys_.insert(unit_key(u)).second)
                error(line_no, "duplicate functional unit dropped");
            else
                units_.push_back(std::move(u));
        }
        unit_.reset();
    }

    static bool has_duplicate_nodes(const std::vector<ObjectNode>& nodes) {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                if (node_equals(nodes[i], nodes[j])) return true;
        return false;
    }

    static std::string trim(std::string_view s) {
        std::size_t b = s.find_first_not_of(" \t");
        if (b == std::string_view::npos) return {};
        std::size_t e = s.find_last_not_of(" \t");
        return std::string(s.substr(b, e - b + 1));
    }

    static bool to_number(const std::string& s, double& out) {
        if (s.empty()) return false;
        char* end = nullptr;
        out = std::strtod(s.c_str(), &end);
        return end && *end == '\0';
    }

    void error(int line, std::string msg) {
        diagnostics_.push_back({line, Severity::error, std::move(msg)});
    }
    void warning(int line, std::string msg) {
        diagnostics_.push_back({line, Severity::warning, std::move(msg)});
    }

    UnitBuilder unit_;
    std::vector<FunctionalUnit> units_;
    std::unordered_set<std::string> unit_keys_;
    std::vector<ParseDiagnostic> diagnostics_;
};

void serialize_node(std::string& out, const ObjectNode& n) {
    out += "o\t";
    out += n.name;
    if (n.relation != Relation::none) {
        out += '\t';
        out += to_string(n.relation);
        out += ':';
        out += n.relation_target;
    }
    out += '\n';
    std::string ingredients;
    if (!n.ingredients.empty()) {
        ingredients = "{";
        for (std::size_t i = 0; i < n.ingredients.size(); ++i) {
            if (i) ingredients += ',';
            ingredients += n.ingredients[i];
        }
        ingredients += '}';
    }
    for (std::size_t i = 0; i < n.states.size(); ++i) {
        out += "s\t";
        out += n.states[i];
        if (i == 0 && !ingredients.empty()) {
            out += '\t';
            out += ingredients;
        }
        out += '\n';
    }
    if (n.states.empty() && !ingredients.empty()) {
        out += "s\t";
        out += ingredients;
        out += '\n';
    }
}

}  // namespace

std::string to_string(const ParseDiagnostic& d) {
    std::ostringstream os;
    os << "line " << d.line << ": "
       << (d.severity == Severity::error ? "error" : "warning") << ": " << d.message;
    return os.str();
}

bool has_errors(const std::vector<ParseDiagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const ParseDiagnostic& d) { return d.severity == Severity::error; });
}

ParseResult parse_graph(std::string_view text) { return GraphParser().run(text); }

std::string serialize_graph(const FoonGraph& graph) {
    std::string out;
    for (const auto& u : graph.units()) {
        for (const auto& n : u.inputs) serialize_node(out, n);
        out += "m\t";
        out += u.motion.label;
        if (!u.motion.start_time.empty() && !u.motion.end_time.empty()) {
            out += '\t';
            out += u.motion.start_time;
            out += '\t';
            out += u.motion.end_time;
        }
        out += '\n';
        for (const auto& n : u.outputs) serialize_node(out, n);
        out += "//\n";
    }
    return out;
}

std::optional<ObjectNode> parse_descriptor(std::string_view line, std::string* error) {
    auto fail = [&](std::string msg) -> std::optional<ObjectNode> {
        if (error) *error = std::move(msg);
        return std::nullopt;
    };
    auto fields = split_tabs(line);
    std::string name = normalize_token(fields[0]);
    if (name.empty()) return fail("descriptor missing object name");
    ObjectNode node = make_node(name);
    bool have_states = false, have_ings = false, have_rel = false;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string& f = fields[i];
        if (normalize_token(f).empty()) continue;
        if (is_ingredient_list(f)) {
            if (have_ings) return fail("descriptor has two ingredient lists");
            have_ings = true;
            for (const auto& raw : split_ingredients(f)) {
                std::string item = normalize_token(raw);
                if (item.empty()) continue;
                if (std::find(node.ingredients.begin(), node.ingredients.end(), item) ==
                    node.ingredients.end())
                    node.ingredients.push_back(std::move(item));
            }
        } else if (auto rel = parse_relation_field(f)) {
            if (have_rel) return fail("descriptor has two relation fields");
            have_rel = true;
            std::string target = normalize_token(rel->second);
            if (target.empty()) return fail("relation field has empty target");
            node.relation = rel->first;
            node.relation_target = std::move(target);
        } else {
            if (have_states) return fail("descriptor has two state lists");
            have_states = true;
            std::size_t start = 0;
            std::string sf = f;
            while (start <= sf.size()) {
                std::size_t comma = sf.find(',', start);
                if (comma == std::string::npos) comma = sf.size();
                std::string state = normalize_token(std::string_view(sf).substr(start, comma - start));
                if (!state.empty() &&
                    std::find(node.states.begin(), node.states.end(), state) == node.states.end())
                    node.states.push_back(std::move(state));
                if (comma == sf.size()) break;
                start = comma + 1;
            }
        }
    }
    return node;
}

KitchenParseResult parse_kitchen(std::string_view text) {
    KitchenParseResult result;
    std::unordered_set<std::string> seen;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line =
            (nl == std::string_view::npos) ? text.substr(start) : text.substr(start, nl - start);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t first = line.find_first_not_of(" \t");
        if (first != std::string_view::npos && line[first] != '#') {
            std::string err;
            if (auto node = parse_descriptor(line, &err)) {
                if (seen.insert(node_key(*node)).second)
                    result.items.push_back(std::move(*node));
                else
                    result.diagnostics.push_back(
                        {line_no, Severity::warning, "duplicate kitchen item ignored"});
            } else {
                result.diagnostics.push_back({line_no, Severity::error, err});
            }
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    return result;
}

std::string descriptor_line(const ObjectNode& node) {
    std::string out = node.name;
    if (!node.states.empty()) {
        out += '\t';
        for (std::size_t i = 0; i < node.states.size(); ++i) {
            if (i) out += ',';
            out += node.states[i];
        }
    }
    if (!node.ingredients.empty()) {
        out += "\t{";
        for (std::size_t i = 0; i < node.ingredients.size(); ++i) {
            if (i) out += ',';
            out += node.ingredients[i];
        }
        out += '}';
    }
    if (node.relation != Relation::none) {
        out += '\t';
        out += to_string(node.relation);
        out += ':';
        out += node.relation_target;
    }
    return out;
}

std::string describe(const ObjectNode& node) {
    std::string out = node.name;
    if (!node.states.empty()) {
        out += " (";
        for (std::size_t i = 0; i < node.states.size(); ++i) {
            if (i) out += ", ";
            out += node.states[i];
        }
        out += ')';
    }
    if (!node.ingredients.empty()) {
        out += " {";
        for (std::size_t i = 0; i < node.ingredients.size(); ++i) {
            if (i) out += ", ";
            out += node.ingredients[i];
        }
        out += '}';
    }
    if (node.relation != Relation::none) {
        out += ' ';
        out += to_string(node.relation);
        out += ' ';
        out += node.relation_target;
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("failed reading file: " + path.string());
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed writing file: " + path.string());
}

ParseResult read_graph_file(const std::filesystem::path& path) {
    return parse_graph(read_text_file(path));
}

}  // namespace foon
