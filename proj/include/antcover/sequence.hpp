#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "antcover/machine.hpp"

namespace antcover {

/// Why a segment stopped.
enum class SegmentEnd {
    ReachedEnd,  // the walk arrived at the end state
    DeadEnd,     // no feasible transition at the current state
    StepGuard,   // the run-wide traversal budget ran out mid-walk
};

inline const char* to_string(SegmentEnd e) {
    switch (e) {
        case SegmentEnd::ReachedEnd: return "reached_end";
        case SegmentEnd::DeadEnd: return "dead_end";
        case SegmentEnd::StepGuard: return "step_guard";
    }
    return "unknown";
}

/// One start-anchored walk: consecutive transitions chain (the target
/// of each is the source of the next) and the first leaves the start
/// state.
struct Segment {
    std::vector<TransitionId> transitions;
    SegmentEnd terminal = SegmentEnd::ReachedEnd;
};

/// A generated test sequence: an ordered list of segments, each
/// restarted at the start state.
struct TestSequence {
    std::vector<Segment> segments;

    std::size_t total_steps() const {
        std::size_t n = 0;
        for (const auto& s : segments) n += s.transitions.size();
        return n;
    }

    bool operator==(const TestSequence& other) const {
        if (segments.size() != other.segments.size()) return false;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (segments[i].terminal != other.segments[i].terminal ||
                segments[i].transitions != other.segments[i].transitions)
                return false;
        }
        return true;
    }
};

}  // namespace antcover
