#pragma once

#include <string>

#include "antcover/machine.hpp"
#include "json.hpp"

namespace antcover {

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& doc,
                                           const char* name) {
    auto it = doc.find(name);
    if (it == doc.end())
        throw InputError(std::string("missing field '") + name + "'");
    return *it;
}

inline std::string require_string(const nlohmann::json& doc, const char* name) {
    const auto& value = require_field(doc, name);
    if (!value.is_string())
        throw InputError(std::string("field '") + name + "' must be a string");
    return value.get<std::string>();
}

}  // namespace detail

/// Parses a machine document. The schema is a single JSON object:
///
///   {
///     "states": ["start", "s0", ...],
///     "start": "start",
///     "end": "final",
///     "transitions": [
///       {"id": "e1", "from": "start", "to": "s0", "label": "propose"},
///       ...
///     ]
///   }
///
/// "label" is optional; unknown fields are ignored (so documents may
/// carry notes). Throws InputError with a byte position on syntax
/// errors and with a one-line explanation on schema violations.
inline StateMachine parse_machine(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("syntax error at byte " + std::to_string(e.byte) +
                         ": " + e.what());
    }
    if (!doc.is_object())
        throw InputError("machine document must be a JSON object");

    const auto& states_doc = detail::require_field(doc, "states");
    if (!states_doc.is_array())
        throw InputError("field 'states' must be an array of names");
    std::vector<StateId> states;
    for (const auto& s : states_doc) {
        if (!s.is_string())
            throw InputError("field 'states' must be an array of names");
        states.push_back(s.get<std::string>());
    }

    std::string start = detail::require_string(doc, "start");
    std::string end = detail::require_string(doc, "end");

    const auto& transitions_doc = detail::require_field(doc, "transitions");
    if (!transitions_doc.is_array())
        throw InputError("field 'transitions' must be an array of records");
    std::vector<Transition> transitions;
    for (const auto& t : transitions_doc) {
        if (!t.is_object())
            throw InputError("each transition must be an object");
        Transition tr;
        tr.id = detail::require_string(t, "id");
        tr.from = detail::require_string(t, "from");
        tr.to = detail::require_string(t, "to");
        if (auto it = t.find("label"); it != t.end()) {
            if (!it->is_string())
                throw InputError("transition '" + tr.id +
                                 "': field 'label' must be a string");
            tr.label = it->get<std::string>();
        }
        transitions.push_back(std::move(tr));
    }

    return StateMachine(std::move(states), std::move(start), std::move(end),
                        std::move(transitions));
}

/// Canonical document for a machine; parse_machine(serialize_machine(m))
/// reconstructs m exactly.
inline std::string serialize_machine(const StateMachine& m) {
    nlohmann::json doc;
    doc["states"] = m.states();
    doc["start"] = m.start();
    doc["end"] = m.end();
    auto& transitions = doc["transitions"] = nlohmann::json::array();
    for (const auto& t : m.transitions()) {
        nlohmann::json record;
        record["id"] = t.id;
        record["from"] = t.from;
        record["to"] = t.to;
        if (!t.label.empty()) record["label"] = t.label;
        transitions.push_back(std::move(record));
    }
    return doc.dump(2) + "\n";
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

/// GraphViz DOT export: states as nodes, transitions as edges labeled
/// "id" or "id/label". The start node gets a double border, the end
/// node a bold border.
inline std::string to_dot(const StateMachine& m) {
    std::string out = "digraph machine {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < m.state_count(); ++s) {
        out += "  " + detail::dot_quote(m.state(s));
        if (s == m.start_index())
            out += " [peripheries=2]";
        else if (s == m.end_index())
            out += " [style=bold]";
        out += ";\n";
    }
    for (const auto& t : m.transitions()) {
        std::string label = t.id;
        if (!t.label.empty()) label += "/" + t.label;
        out += "  " + detail::dot_quote(t.from) + " -> " +
               detail::dot_quote(t.to) + " [label=" + detail::dot_quote(label) +
               "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace antcover
