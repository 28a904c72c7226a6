#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "antcover/coverage.hpp"
#include "antcover/machine.hpp"
#include "antcover/sequence.hpp"

namespace antcover {

/// Tuning knobs for one ant run. max_steps = 0 means the default
/// budget 64 * E * cyclomatic_complexity, computed per machine.
struct AcoParams {
    double alpha = 1.0;        // pheromone exponent
    double beta = 1.0;         // heuristic exponent (used as eta^-beta)
    double initial_tau = 1.0;  // starting pheromone on every transition
    double initial_eta = 2.0;  // starting heuristic on every transition
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 0;  // total traversal budget, 0 = default
    double tie_epsilon = 1e-9;    // relative tolerance for probability ties
    long count_ceiling = 10000;   // abort if cyclomatic complexity exceeds this
};

inline void validate(const AcoParams& p) {
    if (!std::isfinite(p.alpha) || p.alpha < 0)
        throw InputError("alpha must be a finite non-negative real");
    if (!std::isfinite(p.beta) || p.beta < 0)
        throw InputError("beta must be a finite non-negative real");
    if (!std::isfinite(p.initial_tau) || p.initial_tau <= 0)
        throw InputError("initial_tau must be positive");
    if (!std::isfinite(p.initial_eta) || p.initial_eta <= 0)
        throw InputError("initial_eta must be positive");
    if (!std::isfinite(p.tie_epsilon) || p.tie_epsilon <= 0)
        throw InputError("tie_epsilon must be a small positive real");
    if (p.count_ceiling < 1)
        throw InputError("count_ceiling must be at least 1");
}

/// Pheromone level of one transition: either a strictly positive
/// finite value, or Blocked. Blocked stands in for the infinite
/// pheromone assigned to traversed end transitions; instead of feeding
/// infinity into the probability formula, a blocked transition is
/// removed from every later feasible set, which makes its selection
/// probability zero. Blocked is terminal: it never reverts.
class PheromoneLevel {
public:
    static PheromoneLevel finite(double value) {
        if (!(value > 0))
            throw InputError("pheromone values must be strictly positive");
        PheromoneLevel level;
        level.value_ = value;
        return level;
    }
    static PheromoneLevel blocked() {
        PheromoneLevel level;
        level.blocked_ = true;
        return level;
    }

    bool is_blocked() const { return blocked_; }
    double value() const { return value_; }

private:
    double value_ = 1.0;
    bool blocked_ = false;
};

/// Mutable per-run state of the ant. Entries parallel the machine's
/// transition/state declaration order; look indices up through the
/// machine when starting from ids.
struct AntMemory {
    std::vector<PheromoneLevel> tau;    // per transition
    std::vector<double> eta;            // per transition
    std::vector<std::uint8_t> visited;  // per state
    std::size_t current = 0;            // state index the ant occupies
    std::uint64_t steps_taken = 0;      // total traversals so far
};

inline AntMemory init_memory(const StateMachine& m, const AcoParams& p) {
    validate(p);
    AntMemory mem;
    mem.tau.assign(m.transition_count(), PheromoneLevel::finite(p.initial_tau));
    mem.eta.assign(m.transition_count(), p.initial_eta);
    mem.visited.assign(m.state_count(), 0);
    mem.current = m.start_index();
    mem.steps_taken = 0;
    return mem;
}

/// Transitions the ant may take from its current state: outgoing
/// transitions minus blocked ones, in declaration order. Empty means
/// dead end.
inline std::vector<std::size_t> feasible_set(const StateMachine& m,
                                             const AntMemory& mem) {
    std::vector<std::size_t> result;
    for (std::size_t t : m.outgoing_indices(mem.current))
        if (!mem.tau[t].is_blocked()) result.push_back(t);
    return result;
}

/// Probability of each feasible transition:
///
///   P(t) = tau(t)^alpha * eta(t)^-beta / sum over the feasible set
///
/// Returned values parallel `feasible` and sum to 1. The feasible set
/// must be non-empty (branch on dead ends first) and must not contain
/// blocked transitions. Non-finite intermediates raise an error naming
/// the offending transition.
inline std::vector<double> transition_probabilities(
    const StateMachine& m, const AntMemory& mem,
    const std::vector<std::size_t>& feasible, const AcoParams& p) {
    if (feasible.empty())
        throw std::invalid_argument(
            "transition_probabilities: empty feasible set");
    std::vector<double> weights(feasible.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < feasible.size(); ++i) {
        std::size_t t = feasible[i];
        if (mem.tau[t].is_blocked())
            throw std::invalid_argument(
                "transition_probabilities: blocked transition '" +
                m.transition(t).id + "' in feasible set");
        double w = std::pow(mem.tau[t].value(), p.alpha) *
                   std::pow(mem.eta[t], -p.beta);
        if (!std::isfinite(w))
            throw std::runtime_error(
                "numeric overflow evaluating probability of transition '" +
                m.transition(t).id + "'");
        weights[i] = w;
        sum += w;
    }
    if (!std::isfinite(sum) || !(sum > 0))
        throw std::runtime_error(
            "numeric overflow normalizing transition probabilities");
    for (double& w : weights) w /= sum;
    return weights;
}

/*
 * Movement rule. The strict unique maximum wins outright. Otherwise
 * the tied-maximum set (relative tolerance tie_epsilon) is narrowed by
 * a cascade, each stage keeping declaration order:
 *
 *   1. self-transitions, if any are tied;
 *   2. drop candidates that target the end state, if a non-end
 *      candidate remains;
 *   3. prefer candidates whose target state is not yet visited;
 *   4. one uniform draw from the seeded generator among whatever is
 *      left.
 *
 * Stages 2 and 3 are vacuous after stage 1 fires (a self-transition
 * neither targets end nor leads anywhere unvisited), so running the
 * whole cascade is equivalent to selecting the self-transition
 * directly.
 */
inline std::size_t select_transition(const StateMachine& m,
                                     const AntMemory& mem,
                                     const std::vector<std::size_t>& feasible,
                                     const std::vector<double>& probs,
                                     const AcoParams& p,
                                     std::mt19937_64& rng) {
    if (feasible.empty() || probs.size() != feasible.size())
        throw std::invalid_argument(
            "select_transition: feasible set and probabilities must be "
            "non-empty and parallel");
    double pmax = probs[0];
    for (double v : probs) pmax = std::max(pmax, v);
    const double cutoff = pmax - pmax * p.tie_epsilon;

    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < feasible.size(); ++i)
        if (probs[i] >= cutoff) tied.push_back(feasible[i]);

    auto narrow = [&tied](auto&& keep) {
        std::vector<std::size_t> kept;
        for (std::size_t t : tied)
            if (keep(t)) kept.push_back(t);
        if (!kept.empty() && kept.size() < tied.size()) tied = kept;
    };
    if (tied.size() > 1)
        narrow([&m](std::size_t t) {
            return m.source_index(t) == m.target_index(t);
        });
    if (tied.size() > 1)
        narrow([&m](std::size_t t) {
            return m.target_index(t) != m.end_index();
        });
    if (tied.size() > 1)
        narrow([&m, &mem](std::size_t t) {
            return !mem.visited[m.target_index(t)];
        });
    if (tied.size() == 1) return tied[0];
    return tied[rng() % tied.size()];
}

enum class UpdateOutcome { Continue, SegmentRestart };

/// Pheromone update after traversing transition t:
///
///   - t targets end and is already blocked: no change, the segment
///     restarts (defensive; feasibility filtering keeps blocked
///     transitions out of selection in the first place);
///   - t targets end: tau becomes Blocked;
///   - otherwise: tau' = tau^alpha + eta^-beta, reading eta before the
///     heuristic update doubles it.
inline UpdateOutcome update_pheromone(AntMemory& mem, std::size_t t,
                                      const StateMachine& m,
                                      const AcoParams& p) {
    const bool targets_end = m.target_index(t) == m.end_index();
    if (targets_end && mem.tau[t].is_blocked())
        return UpdateOutcome::SegmentRestart;
    if (targets_end) {
        mem.tau[t] = PheromoneLevel::blocked();
        return UpdateOutcome::Continue;
    }
    double updated = std::pow(mem.tau[t].value(), p.alpha) +
                     std::pow(mem.eta[t], -p.beta);
    mem.tau[t] = PheromoneLevel::finite(updated);
    return UpdateOutcome::Continue;
}

/// Heuristic update after traversing t: eta doubles, halving the
/// transition's visibility term eta^-beta for beta = 1.
inline void update_heuristic(AntMemory& mem, std::size_t t) {
    mem.eta[t] *= 2.0;
}

/// One step of the per-step trace hook used by verbose mode and the
/// property tests.
struct TraceStep {
    std::size_t segment = 0;
    StateId state;
    std::vector<TransitionId> feasible;
    std::vector<double> probabilities;  // parallel to feasible
    TransitionId chosen;
};

using TraceFn = std::function<void(const TraceStep&)>;

struct RunResult {
    TestSequence sequence;
    CoverageReport report;
};

/// Runs the ant over the machine until every coverable transition has
/// been traversed at least once, restarting a fresh segment at the
/// start state whenever the walk reaches the end state or a dead end.
/// Each traversal updates pheromone then heuristic; traversing into
/// the end state blocks that transition permanently. The cyclomatic
/// complexity sizes the default traversal budget; the budget caps the
/// run unconditionally and is reported as a StepGuard terminal when it
/// fires mid-walk.
inline RunResult run_ant(const StateMachine& m, const AcoParams& p,
                         const TraceFn& trace = {}) {
    validate(p);
    const long count_raw = static_cast<long>(m.transition_count()) -
                           static_cast<long>(m.state_count()) + 2;
    if (count_raw > p.count_ceiling)
        throw InputError("cyclomatic complexity " + std::to_string(count_raw) +
                         " exceeds ceiling " + std::to_string(p.count_ceiling));
    const int count = cyclomatic_complexity(m);
    const std::uint64_t max_steps =
        p.max_steps != 0
            ? p.max_steps
            : 64ull * static_cast<std::uint64_t>(m.transition_count()) *
                  static_cast<std::uint64_t>(count);

    const auto coverable = reachable_transition_indices(m);
    std::vector<std::uint8_t> is_coverable(m.transition_count(), 0);
    for (std::size_t t : coverable) is_coverable[t] = 1;
    std::vector<std::uint8_t> covered(m.transition_count(), 0);
    std::size_t covered_coverable = 0;

    AntMemory mem = init_memory(m, p);
    std::mt19937_64 rng(p.seed);
    TestSequence seq;
    bool guard_hit = false;

    while (covered_coverable < coverable.size() && !guard_hit &&
           mem.steps_taken < max_steps) {
        Segment segment;
        mem.current = m.start_index();
        for (;;) {
            if (!mem.visited[mem.current]) mem.visited[mem.current] = 1;
            auto feasible = feasible_set(m, mem);
            if (feasible.empty()) {
                segment.terminal = SegmentEnd::DeadEnd;
                break;
            }
            if (mem.steps_taken >= max_steps) {
                segment.terminal = SegmentEnd::StepGuard;
                guard_hit = true;
                break;
            }
            auto probs = transition_probabilities(m, mem, feasible, p);
            std::size_t t = select_transition(m, mem, feasible, probs, p, rng);
            if (trace) {
                TraceStep step;
                step.segment = seq.segments.size();
                step.state = m.state(mem.current);
                for (std::size_t f : feasible)
                    step.feasible.push_back(m.transition(f).id);
                step.probabilities = probs;
                step.chosen = m.transition(t).id;
                trace(step);
            }
            segment.transitions.push_back(m.transition(t).id);
            mem.current = m.target_index(t);
            ++mem.steps_taken;
            if (!covered[t]) {
                covered[t] = 1;
                if (is_coverable[t]) ++covered_coverable;
            }
            update_pheromone(mem, t, m, p);
            update_heuristic(mem, t);
            if (mem.current == m.end_index()) {
                if (!mem.visited[mem.current]) mem.visited[mem.current] = 1;
                segment.terminal = SegmentEnd::ReachedEnd;
                break;
            }
        }
        seq.segments.push_back(std::move(segment));
    }

    RunResult result;
    result.sequence = std::move(seq);
    result.report = measure(m, result.sequence);
    if (count_raw < 1)
        result.report.warnings.push_back(
            "cyclomatic complexity E - N + 2 = " + std::to_string(count_raw) +
            " clamped to 1");
    if (guard_hit || mem.steps_taken >= max_steps)
        result.report.warnings.push_back(
            "step guard reached after " + std::to_string(mem.steps_taken) +
            " traversals (max_steps = " + std::to_string(max_steps) + ")");
    return result;
}

}  // namespace antcover
