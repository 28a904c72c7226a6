#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "antcover/machine.hpp"

namespace antcover {

/// The enrollment case study: a 7-state, 13-transition machine for a
/// course-enrollment workflow (propose, schedule, open enrollment,
/// full, close enrollment). Transition ids e1..e13 follow first use in
/// the workflow's canonical test sequence.
inline StateMachine enrollment_machine() {
    std::vector<StateId> states{"start", "s0", "s1", "s2", "s3", "s4", "final"};
    std::vector<Transition> transitions{
        {"e1", "start", "s0", ""},  {"e2", "s0", "s1", ""},
        {"e3", "s1", "s2", ""},     {"e4", "s2", "s2", ""},
        {"e5", "s2", "s3", ""},     {"e6", "s3", "s4", ""},
        {"e7", "s4", "final", ""},  {"e8", "s0", "final", ""},
        {"e9", "s1", "final", ""},  {"e10", "s2", "s4", ""},
        {"e11", "s2", "final", ""}, {"e12", "s3", "s2", ""},
        {"e13", "s3", "final", ""},
    };
    return StateMachine(std::move(states), "start", "final",
                        std::move(transitions));
}

/// Smallest legal machine: start, end and one transition between them.
inline StateMachine minimal_machine() {
    return StateMachine({"start", "final"}, "start", "final",
                        {{"e1", "start", "final", ""}});
}

/// Deterministic random machine with every transition coverable by
/// construction: a spanning arborescence from start comes first, then
/// extra edges drawn from the forward pairs of a fixed topological
/// order (plus self-loops on states that already have a forward
/// non-end edge). The end state never has outgoing transitions, and
/// every cycle is a self-loop on a state with another way forward, so
/// a walk can never get stuck in a region it cannot leave.
inline StateMachine random_machine(std::size_t states, std::size_t transitions,
                                   std::uint64_t seed) {
    if (states < 2) throw InputError("random_machine needs at least 2 states");
    if (transitions < 1)
        throw InputError("random_machine needs at least 1 transition");
    if (transitions < states - 1)
        throw InputError(
            "cannot connect " + std::to_string(states) + " states with " +
            std::to_string(transitions) + " transitions");

    const std::size_t n = states;
    const std::size_t end = n - 1;
    std::vector<StateId> names(n);
    names[0] = "start";
    names[end] = "final";
    for (std::size_t i = 1; i + 1 < n; ++i) names[i] = "q" + std::to_string(i);

    std::mt19937_64 rng(seed);
    std::vector<Transition> edges;
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::vector<std::uint8_t> has_forward(n, 0);  // non-end forward edge
    auto add_edge = [&](std::size_t u, std::size_t v) {
        edges.push_back({"e" + std::to_string(edges.size() + 1), names[u],
                         names[v], ""});
        used.insert({u, v});
        if (v > u && v != end) has_forward[u] = 1;
    };

    // Spanning arborescence: each state other than start hangs off an
    // earlier state, so everything is reachable without crossing end.
    for (std::size_t v = 1; v < n; ++v)
        add_edge(rng() % v, v);

    for (std::size_t k = edges.size(); k < transitions; ++k) {
        std::vector<std::pair<std::size_t, std::size_t>> candidates;
        for (std::size_t u = 0; u + 1 < n; ++u) {
            if (!used.count({u, u}) && has_forward[u])
                candidates.push_back({u, u});
            for (std::size_t v = u + 1; v < n; ++v)
                if (!used.count({u, v})) candidates.push_back({u, v});
        }
        if (candidates.empty())
            throw InputError("transition count " + std::to_string(transitions) +
                             " exceeds the capacity of a " +
                             std::to_string(states) + "-state machine");
        auto [u, v] = candidates[rng() % candidates.size()];
        add_edge(u, v);
    }

    return StateMachine(std::move(names), "start", "final", std::move(edges));
}

/// Built-in machines by registered name.
inline StateMachine fixture_by_name(const std::string& name) {
    if (name == "enrollment") return enrollment_machine();
    if (name == "minimal") return minimal_machine();
    throw InputError("unknown fixture '" + name +
                     "' (available: enrollment, minimal)");
}

inline std::vector<std::string> fixture_names() {
    return {"enrollment", "minimal"};
}

}  // namespace antcover
