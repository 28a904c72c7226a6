#pragma once

#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace antcover {

using StateId = std::string;
using TransitionId = std::string;

/// Raised for malformed machine documents, failed validation and bad
/// tool input in general.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Transition {
    TransitionId id;
    StateId from;
    StateId to;
    std::string label;  // optional event/trigger, may be empty

    bool is_self() const { return from == to; }
};

/// Directed labeled transition graph with designated start and end
/// states; the model of the software under test.
///
/// Validation happens in the constructor and throws InputError on any
/// violation. Connectivity problems (states that cannot be reached
/// from the start state) are not errors: they are recorded as
/// diagnostics and surface later as uncoverable transitions in
/// coverage reports.
///
/// Instances are immutable after construction and safe to share
/// across concurrent runs. Declaration order of states and
/// transitions is preserved and is the canonical iteration order.
class StateMachine {
public:
    StateMachine(std::vector<StateId> states, StateId start, StateId end,
                 std::vector<Transition> transitions)
        : states_(std::move(states)), transitions_(std::move(transitions)) {
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (states_[i].empty())
                throw InputError("state names must be non-empty");
            if (!state_index_.emplace(states_[i], i).second)
                throw InputError("duplicate state '" + states_[i] + "'");
        }
        auto it = state_index_.find(start);
        if (it == state_index_.end())
            throw InputError("start state '" + start + "' is not declared");
        start_ = it->second;
        it = state_index_.find(end);
        if (it == state_index_.end())
            throw InputError("end state '" + end + "' is not declared");
        end_ = it->second;
        if (start_ == end_)
            throw InputError("start and end state must differ");

        outgoing_.resize(states_.size());
        endpoints_.reserve(transitions_.size());
        std::set<std::pair<std::pair<StateId, StateId>, std::string>> triples;
        for (std::size_t t = 0; t < transitions_.size(); ++t) {
            const Transition& tr = transitions_[t];
            if (tr.id.empty())
                throw InputError("transition ids must be non-empty");
            if (!transition_index_.emplace(tr.id, t).second)
                throw InputError("duplicate transition id '" + tr.id + "'");
            auto src = state_index_.find(tr.from);
            if (src == state_index_.end())
                throw InputError("transition '" + tr.id +
                                 "' references unknown state '" + tr.from + "'");
            auto dst = state_index_.find(tr.to);
            if (dst == state_index_.end())
                throw InputError("transition '" + tr.id +
                                 "' references unknown state '" + tr.to + "'");
            if (!triples.insert({{tr.from, tr.to}, tr.label}).second)
                throw InputError("duplicate transition " + tr.from + " -> " +
                                 tr.to + " (label '" + tr.label + "')");
            endpoints_.emplace_back(src->second, dst->second);
            outgoing_[src->second].push_back(t);
        }
        if (transitions_.empty() || outgoing_[start_].empty())
            throw InputError("start state '" + start +
                             "' has no outgoing transition");
        collect_diagnostics();
    }

    const std::vector<StateId>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    std::size_t state_count() const { return states_.size(); }
    std::size_t transition_count() const { return transitions_.size(); }

    const StateId& start() const { return states_[start_]; }
    const StateId& end() const { return states_[end_]; }
    std::size_t start_index() const { return start_; }
    std::size_t end_index() const { return end_; }

    const StateId& state(std::size_t i) const { return states_[i]; }
    const Transition& transition(std::size_t t) const { return transitions_[t]; }
    std::size_t source_index(std::size_t t) const { return endpoints_[t].first; }
    std::size_t target_index(std::size_t t) const { return endpoints_[t].second; }

    std::size_t state_index(const StateId& name) const {
        auto it = state_index_.find(name);
        if (it == state_index_.end())
            throw InputError("unknown state '" + name + "'");
        return it->second;
    }

    std::size_t transition_index(const TransitionId& id) const {
        auto it = transition_index_.find(id);
        if (it == transition_index_.end())
            throw InputError("unknown transition '" + id + "'");
        return it->second;
    }

    bool has_state(const StateId& name) const {
        return state_index_.count(name) != 0;
    }
    bool has_transition(const TransitionId& id) const {
        return transition_index_.count(id) != 0;
    }

    /// Indices of transitions leaving `state`, in declaration order.
    const std::vector<std::size_t>& outgoing_indices(std::size_t state) const {
        return outgoing_.at(state);
    }

    /// Transitions leaving the named state, in declaration order.
    std::vector<Transition> outgoing(const StateId& name) const {
        std::vector<Transition> result;
        for (std::size_t t : outgoing_[state_index(name)])
            result.push_back(transitions_[t]);
        return result;
    }

    /// Non-fatal validation notes (e.g. states unreachable from start).
    const std::vector<std::string>& diagnostics() const { return diagnostics_; }

    /// States reachable from start. The end state is absorbing: a walk
    /// that enters it stops there, so its successors do not count as
    /// reachable through it. This mirrors how the generation engine
    /// restarts at the start state whenever the end state is reached.
    std::vector<std::uint8_t> reachable_states() const {
        std::vector<std::uint8_t> seen(states_.size(), 0);
        std::deque<std::size_t> queue{start_};
        seen[start_] = 1;
        while (!queue.empty()) {
            std::size_t s = queue.front();
            queue.pop_front();
            if (s == end_) continue;
            for (std::size_t t : outgoing_[s]) {
                std::size_t next = endpoints_[t].second;
                if (!seen[next]) {
                    seen[next] = 1;
                    queue.push_back(next);
                }
            }
        }
        return seen;
    }

private:
    void collect_diagnostics() {
        auto seen = reachable_states();
        std::size_t missing = 0;
        for (std::size_t s = 0; s < states_.size(); ++s) {
            if (!seen[s]) {
                ++missing;
                diagnostics_.push_back("state '" + states_[s] +
                                       "' is not reachable from '" +
                                       states_[start_] + "'");
            }
        }
        if (missing > 0)
            diagnostics_.push_back(
                std::to_string(missing) +
                " state(s) unreachable from start; their transitions cannot "
                "be covered");
    }

    std::vector<StateId> states_;
    std::vector<Transition> transitions_;
    std::size_t start_ = 0;
    std::size_t end_ = 0;
    std::unordered_map<StateId, std::size_t> state_index_;
    std::unordered_map<TransitionId, std::size_t> transition_index_;
    std::vector<std::pair<std::size_t, std::size_t>> endpoints_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<std::string> diagnostics_;
};

/// McCabe cyclomatic complexity V(G) = E - N + 2 for a single
/// connected component, clamped to at least 1.
inline int cyclomatic_complexity(const StateMachine& m) {
    long raw = static_cast<long>(m.transition_count()) -
               static_cast<long>(m.state_count()) + 2;
    return raw < 1 ? 1 : static_cast<int>(raw);
}

/// Indices of transitions whose source state is reachable from start
/// (end-absorbing, see StateMachine::reachable_states). Declaration
/// order. Transitions leaving the end state are never reachable: a
/// walk terminates on arrival there.
inline std::vector<std::size_t> reachable_transition_indices(
    const StateMachine& m) {
    auto seen = m.reachable_states();
    std::vector<std::size_t> result;
    for (std::size_t t = 0; t < m.transition_count(); ++t) {
        std::size_t src = m.source_index(t);
        if (seen[src] && src != m.end_index()) result.push_back(t);
    }
    return result;
}

/// Same as reachable_transition_indices, as a set of ids.
inline std::set<TransitionId> reachable_transitions(const StateMachine& m) {
    std::set<TransitionId> result;
    for (std::size_t t : reachable_transition_indices(m))
        result.insert(m.transition(t).id);
    return result;
}

/// 64-bit FNV-1a over the machine's canonical structure; used to
/// detect reports computed over different machines.
inline std::uint64_t fingerprint(const StateMachine& m) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    for (const auto& s : m.states()) mix(s);
    mix(m.start());
    mix(m.end());
    for (const auto& t : m.transitions()) {
        mix(t.id);
        mix(t.from);
        mix(t.to);
        mix(t.label);
    }
    return h;
}

}  // namespace antcover
