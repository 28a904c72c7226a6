#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "antcover/coverage.hpp"
#include "antcover/machine.hpp"
#include "antcover/machine_io.hpp"
#include "antcover/oracle.hpp"
#include "antcover/sequence.hpp"
#include "antcover/version.hpp"
#include "json.hpp"

namespace antcover {

/// Percentage with two decimals, half-up (64.2857 -> "64.29").
inline std::string format_pct(double pct) {
    double rounded = std::floor(pct * 100.0 + 0.5) / 100.0;
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", rounded);
    return buffer;
}

/// One segment in arrow notation: start->s0->s1->final.
inline std::string render_segment(const StateMachine& m,
                                  const Segment& segment) {
    std::string out = m.start();
    for (const auto& id : segment.transitions)
        out += "->" + m.state(m.target_index(m.transition_index(id)));
    return out;
}

inline std::string render_sequence_text(const StateMachine& m,
                                        const TestSequence& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.segments.size(); ++i) {
        out += "  " + std::to_string(i + 1) + ". " +
               render_segment(m, seq.segments[i]) + "   [" +
               to_string(seq.segments[i].terminal) + "]\n";
    }
    return out;
}

/// Effective configuration of one run, echoed into every output.
struct RunMeta {
    std::string algorithm;
    std::string machine_ref;  // input path or fixture name
    nlohmann::json params;    // effective algorithm parameters
};

inline nlohmann::json sequence_to_json(const TestSequence& seq) {
    auto segments = nlohmann::json::array();
    for (const auto& segment : seq.segments) {
        nlohmann::json s;
        s["transitions"] = segment.transitions;
        s["terminal"] = to_string(segment.terminal);
        segments.push_back(std::move(s));
    }
    return segments;
}

inline nlohmann::json report_to_json(const CoverageReport& report) {
    nlohmann::json j;
    j["total_transitions"] = report.total_transitions;
    j["covered_transitions"] = report.covered_transitions;
    j["coverage_pct"] = report.coverage_pct;
    j["coverage_pct_display"] = format_pct(report.coverage_pct);
    j["per_transition_hits"] = report.per_transition_hits;
    j["per_state_hits"] = report.per_state_hits;
    j["total_steps"] = report.total_steps;
    j["segment_count"] = report.segment_count;
    j["repeated_steps"] = report.repeated_steps;
    j["uncoverable"] = report.uncoverable;
    j["warnings"] = report.warnings;
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(report.machine_fingerprint));
    j["machine_fingerprint"] = fp;
    return j;
}

inline nlohmann::json run_to_json(const StateMachine& m, const RunMeta& meta,
                                  const TestSequence& seq,
                                  const CoverageReport& report) {
    nlohmann::json j;
    j["tool"] = "antcover";
    j["version"] = kVersion;
    j["rng"] = kRngId;
    j["algorithm"] = meta.algorithm;
    j["machine"] = {{"ref", meta.machine_ref},
                    {"states", m.state_count()},
                    {"transitions", m.transition_count()}};
    j["params"] = meta.params;
    j["sequence"] = sequence_to_json(seq);
    j["coverage"] = report_to_json(report);
    return j;
}

inline std::string render_run_text(const StateMachine& m, const RunMeta& meta,
                                   const TestSequence& seq,
                                   const CoverageReport& report,
                                   bool color = false) {
    std::string out;
    out += "antcover " + std::string(kVersion) + "\n";
    out += "machine: " + meta.machine_ref + " (" +
           std::to_string(m.state_count()) + " states, " +
           std::to_string(m.transition_count()) + " transitions)\n";
    out += "algorithm: " + meta.algorithm + "   rng: " + kRngId + "\n";
    out += "params: " + meta.params.dump() + "\n";
    out += "\nsequence (" + std::to_string(seq.segments.size()) +
           " segment(s)):\n";
    out += render_sequence_text(m, seq);

    std::string pct = format_pct(report.coverage_pct) + "% (" +
                      std::to_string(report.covered_transitions) + "/" +
                      std::to_string(report.total_transitions) + ")";
    if (color) {
        const char* code = report.coverage_pct >= 100.0 ? "\033[32m" : "\033[33m";
        pct = code + pct + "\033[0m";
    }
    out += "\ncoverage: " + pct + "\n";
    out += "total steps: " + std::to_string(report.total_steps) +
           "   repeated: " + std::to_string(report.repeated_steps) +
           "   segments: " + std::to_string(report.segment_count) + "\n";
    out += "transition hits:";
    for (const auto& t : m.transitions())
        out += " " + t.id + "=" +
               std::to_string(report.per_transition_hits.at(t.id));
    out += "\n";
    for (const auto& w : report.warnings) out += "warning: " + w + "\n";
    return out;
}

inline std::string render_comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "label,coverage_pct,total_steps,repeated_steps,segment_count\n";
    for (const auto& r : rows)
        out += r.label + "," + format_pct(r.coverage_pct) + "," +
               std::to_string(r.total_steps) + "," +
               std::to_string(r.repeated_steps) + "," +
               std::to_string(r.segment_count) + "\n";
    return out;
}

inline std::string render_comparison_text(const std::vector<ComparisonRow>& rows) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %12s %12s %14s %10s\n", "label",
                  "coverage", "steps", "repeated", "segments");
    out += line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof(line), "%-12s %11s%% %12zu %14zu %10zu\n",
                      r.label.c_str(), format_pct(r.coverage_pct).c_str(),
                      r.total_steps, r.repeated_steps, r.segment_count);
        out += line;
    }
    return out;
}

inline std::string render_covering_text(const CoveringSolution& solution) {
    std::string out;
    out += "covering walks: " + std::to_string(solution.walks.size()) + "\n";
    for (std::size_t i = 0; i < solution.walks.size(); ++i) {
        out += "  " + std::to_string(i + 1) + ".";
        for (const auto& id : solution.walks[i]) out += " " + id;
        out += "\n";
    }
    out += "total length: " + std::to_string(solution.total_length) + "\n";
    out += "covers " + std::to_string(solution.covers.size()) +
           " transition(s), " +
           std::string(solution.complete ? "complete" : "incomplete (bound exhausted)") +
           "\n";
    return out;
}

inline nlohmann::json covering_to_json(const CoveringSolution& solution) {
    nlohmann::json j;
    j["tool"] = "antcover";
    j["version"] = kVersion;
    j["walks"] = solution.walks;
    j["total_length"] = solution.total_length;
    j["covers"] = solution.covers;
    j["complete"] = solution.complete;
    return j;
}

/// DOT export annotated with coverage: covered edges solid with hit
/// counts in the label, uncovered edges dashed.
inline std::string to_dot_annotated(const StateMachine& m,
                                    const CoverageReport& report) {
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
        std::size_t hits = report.per_transition_hits.at(t.id);
        std::string label = t.id;
        if (!t.label.empty()) label += "/" + t.label;
        label += " (" + std::to_string(hits) + ")";
        out += "  " + detail::dot_quote(t.from) + " -> " +
               detail::dot_quote(t.to) + " [label=" + detail::dot_quote(label) +
               (hits > 0 ? ", style=solid" : ", style=dashed") + "];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace antcover
