#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "antcover/machine.hpp"
#include "antcover/sequence.hpp"

namespace antcover {

/// Transition/state coverage and repetition statistics for one test
/// sequence over one machine.
///
/// repeated_steps = total_steps - covered_transitions: every traversal
/// beyond the first hit of each transition counts as redundancy.
struct CoverageReport {
    std::size_t total_transitions = 0;
    std::size_t covered_transitions = 0;
    double coverage_pct = 0.0;
    std::map<TransitionId, std::size_t> per_transition_hits;
    std::map<StateId, std::size_t> per_state_hits;
    std::size_t total_steps = 0;
    std::size_t segment_count = 0;
    std::size_t repeated_steps = 0;
    std::set<TransitionId> uncoverable;  // unreachable from start
    std::vector<std::string> warnings;
    std::uint64_t machine_fingerprint = 0;
};

/// Pure function of (machine, sequence). State hits count occupancy:
/// one for the start state at the head of each segment plus one per
/// traversal target. Throws InputError if the sequence names a
/// transition the machine does not have.
inline CoverageReport measure(const StateMachine& m, const TestSequence& seq) {
    CoverageReport report;
    report.total_transitions = m.transition_count();
    report.segment_count = seq.segments.size();
    report.machine_fingerprint = fingerprint(m);

    for (const auto& t : m.transitions()) report.per_transition_hits[t.id] = 0;
    for (const auto& s : m.states()) report.per_state_hits[s] = 0;

    for (const auto& segment : seq.segments) {
        ++report.per_state_hits[m.start()];
        for (const auto& id : segment.transitions) {
            std::size_t t = m.transition_index(id);
            ++report.per_transition_hits[id];
            ++report.per_state_hits[m.state(m.target_index(t))];
            ++report.total_steps;
        }
    }

    for (const auto& [id, hits] : report.per_transition_hits)
        if (hits > 0) ++report.covered_transitions;
    report.coverage_pct =
        report.total_transitions == 0
            ? 0.0
            : 100.0 * static_cast<double>(report.covered_transitions) /
                  static_cast<double>(report.total_transitions);
    report.repeated_steps = report.total_steps - report.covered_transitions;

    auto reachable = reachable_transitions(m);
    for (const auto& t : m.transitions())
        if (!reachable.count(t.id)) report.uncoverable.insert(t.id);
    if (!report.uncoverable.empty())
        report.warnings.push_back(
            std::to_string(report.uncoverable.size()) +
            " transition(s) unreachable from start; full coverage is "
            "impossible");
    return report;
}

struct ComparisonRow {
    std::string label;
    double coverage_pct = 0.0;
    std::size_t total_steps = 0;
    std::size_t repeated_steps = 0;
    std::size_t segment_count = 0;
};

/// Side-by-side rows for labeled reports, sorted by label. All
/// reports must describe the same machine.
inline std::vector<ComparisonRow> compare(
    const std::vector<std::pair<std::string, CoverageReport>>& reports) {
    if (reports.empty())
        throw InputError("compare requires at least one report");
    for (const auto& [label, report] : reports)
        if (report.machine_fingerprint != reports.front().second.machine_fingerprint)
            throw InputError("machine mismatch: report '" + label +
                             "' describes a different machine");
    std::vector<ComparisonRow> rows;
    for (const auto& [label, report] : reports)
        rows.push_back({label, report.coverage_pct, report.total_steps,
                        report.repeated_steps, report.segment_count});
    std::sort(rows.begin(), rows.end(),
              [](const ComparisonRow& a, const ComparisonRow& b) {
                  return a.label < b.label;
              });
    return rows;
}

}  // namespace antcover
