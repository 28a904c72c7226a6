#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "antcover/machine.hpp"

namespace antcover {

/// A set of start-anchored walks whose union covers transitions.
/// Walks may stop anywhere (mirroring engine dead-ends); a walk that
/// enters the end state stops there.
struct CoveringSolution {
    std::vector<std::vector<TransitionId>> walks;
    std::size_t total_length = 0;  // sum of walk lengths
    std::set<TransitionId> covers;
    bool complete = false;  // covers every coverable transition
};

/// Transitions coverable under restart-at-start semantics: exactly
/// those whose source state is reachable from start (end-absorbing).
inline std::set<TransitionId> coverable(const StateMachine& m) {
    return reachable_transitions(m);
}

namespace detail {

// Exhaustive search for a minimum-total-length covering set of walks.
// Iterative deepening over the total length; within one depth, a DFS
// whose moves are "extend the current walk by one transition" (cost 1)
// and "cut and restart at start" (cost 0, only after at least one
// extension). A (covered-mask, state) pair seen before with no more
// budget spent dominates any later visit, which keeps the state space
// below 2^E * N.
class CoverSearch {
public:
    CoverSearch(const StateMachine& m, std::uint32_t target,
                const std::vector<std::uint32_t>& transition_bit)
        : m_(m), target_(target), transition_bit_(transition_bit) {}

    // Runs one depth-limited round. Returns true if a full cover of
    // total length `limit` exists; `moves_` then holds the move list.
    bool run(std::size_t limit) {
        limit_ = limit;
        memo_.clear();
        moves_.clear();
        best_partial_moves_.clear();
        best_partial_mask_ = 0;
        return dfs(m_.start_index(), 0, 0, false);
    }

    // Move list of the successful round: transition index, or
    // kRestart between walks.
    static constexpr std::size_t kRestart = static_cast<std::size_t>(-1);
    const std::vector<std::size_t>& moves() const { return moves_; }

    std::uint32_t best_partial_mask() const { return best_partial_mask_; }
    const std::vector<std::size_t>& best_partial_moves() const {
        return best_partial_moves_;
    }

private:
    bool dfs(std::size_t state, std::uint32_t mask, std::size_t used,
             bool walk_open) {
        if ((mask & target_) == target_) return true;
        if (std::popcount(best_partial_mask_) < std::popcount(mask & target_)) {
            best_partial_mask_ = mask & target_;
            best_partial_moves_ = moves_;
        }
        std::size_t missing = static_cast<std::size_t>(
            std::popcount(target_ & ~mask));
        if (used + missing > limit_) return false;

        std::uint64_t key = static_cast<std::uint64_t>(mask) *
                                static_cast<std::uint64_t>(m_.state_count()) +
                            static_cast<std::uint64_t>(state);
        auto it = memo_.find(key);
        if (it != memo_.end() && it->second <= used) return false;
        memo_[key] = used;

        if (state != m_.end_index()) {
            for (std::size_t t : m_.outgoing_indices(state)) {
                moves_.push_back(t);
                if (dfs(m_.target_index(t), mask | transition_bit_[t],
                        used + 1, true))
                    return true;
                moves_.pop_back();
            }
        }
        if (walk_open) {
            moves_.push_back(kRestart);
            if (dfs(m_.start_index(), mask, used, false)) return true;
            moves_.pop_back();
        }
        return false;
    }

    const StateMachine& m_;
    std::uint32_t target_;
    const std::vector<std::uint32_t>& transition_bit_;
    std::size_t limit_ = 0;
    std::vector<std::size_t> moves_;
    std::unordered_map<std::uint64_t, std::size_t> memo_;
    std::uint32_t best_partial_mask_ = 0;
    std::vector<std::size_t> best_partial_moves_;
};

inline std::vector<std::vector<TransitionId>> moves_to_walks(
    const StateMachine& m, const std::vector<std::size_t>& moves) {
    std::vector<std::vector<TransitionId>> walks;
    std::vector<TransitionId> walk;
    for (std::size_t move : moves) {
        if (move == CoverSearch::kRestart) {
            if (!walk.empty()) walks.push_back(std::move(walk));
            walk.clear();
        } else {
            walk.push_back(m.transition(move).id);
        }
    }
    if (!walk.empty()) walks.push_back(std::move(walk));
    return walks;
}

}  // namespace detail

/// Minimum-total-length set of start-anchored walks covering every
/// coverable transition, found by exhaustive iterative deepening.
/// `bound` caps the total length searched (0 = default 4 * E); if no
/// full cover exists within the bound, the best partial cover found at
/// the bound is returned with complete = false. Guarded to machines
/// with at most 16 transitions.
inline CoveringSolution minimal_cover(const StateMachine& m,
                                      std::size_t bound = 0) {
    const std::size_t E = m.transition_count();
    if (E > 16)
        throw InputError(
            "minimal_cover is limited to machines with at most 16 "
            "transitions (got " +
            std::to_string(E) + ")");
    if (bound == 0) bound = 4 * E;

    const auto coverable_idx = reachable_transition_indices(m);
    std::vector<std::uint32_t> transition_bit(E, 0);
    std::uint32_t target = 0;
    for (std::size_t i = 0; i < coverable_idx.size(); ++i) {
        transition_bit[coverable_idx[i]] = 1u << i;
        target |= 1u << i;
    }

    detail::CoverSearch search(m, target, transition_bit);
    CoveringSolution solution;
    for (std::size_t limit = coverable_idx.size(); limit <= bound; ++limit) {
        if (search.run(limit)) {
            solution.walks = detail::moves_to_walks(m, search.moves());
            solution.complete = true;
            break;
        }
    }
    if (!solution.complete)
        solution.walks = detail::moves_to_walks(m, search.best_partial_moves());

    for (const auto& walk : solution.walks) {
        solution.total_length += walk.size();
        for (const auto& id : walk) solution.covers.insert(id);
    }
    return solution;
}

}  // namespace antcover
