#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "antcover/coverage.hpp"
#include "antcover/machine.hpp"
#include "antcover/sequence.hpp"

namespace antcover {

struct WalkResult {
    TestSequence sequence;
    CoverageReport report;
};

/// Control baseline: a uniformly random feasible transition each step,
/// restarting at start on reaching the end state or a dead end. Stops
/// at the step budget or when every coverable transition is covered.
inline WalkResult random_walk(const StateMachine& m, std::uint64_t seed,
                              std::uint64_t max_steps) {
    std::mt19937_64 rng(seed);
    const auto coverable = reachable_transition_indices(m);
    std::vector<std::uint8_t> is_coverable(m.transition_count(), 0);
    for (std::size_t t : coverable) is_coverable[t] = 1;
    std::vector<std::uint8_t> covered(m.transition_count(), 0);
    std::size_t covered_coverable = 0;

    TestSequence seq;
    std::uint64_t steps = 0;
    bool guard_hit = false;
    while (covered_coverable < coverable.size() && !guard_hit &&
           steps < max_steps) {
        Segment segment;
        std::size_t current = m.start_index();
        for (;;) {
            const auto& out = m.outgoing_indices(current);
            if (out.empty()) {
                segment.terminal = SegmentEnd::DeadEnd;
                break;
            }
            if (steps >= max_steps) {
                segment.terminal = SegmentEnd::StepGuard;
                guard_hit = true;
                break;
            }
            std::size_t t = out[rng() % out.size()];
            segment.transitions.push_back(m.transition(t).id);
            current = m.target_index(t);
            ++steps;
            if (!covered[t]) {
                covered[t] = 1;
                if (is_coverable[t]) ++covered_coverable;
            }
            if (current == m.end_index()) {
                segment.terminal = SegmentEnd::ReachedEnd;
                break;
            }
        }
        seq.segments.push_back(std::move(segment));
    }

    WalkResult result;
    result.sequence = std::move(seq);
    result.report = measure(m, result.sequence);
    return result;
}

/// Parameters of the genetic-algorithm baseline. chromosome_length = 0
/// means the default 2 * E.
struct GaParams {
    std::size_t population_size = 20;
    std::size_t chromosome_length = 0;
    std::size_t generations = 100;
    double crossover_rate = 0.8;
    double mutation_rate = 0.05;
    std::uint64_t seed = 0;
};

inline void validate(const GaParams& p) {
    if (p.population_size < 2)
        throw InputError("population_size must be at least 2");
    if (p.generations < 1) throw InputError("generations must be at least 1");
    if (p.crossover_rate < 0 || p.crossover_rate > 1)
        throw InputError("crossover_rate must be in [0, 1]");
    if (p.mutation_rate < 0 || p.mutation_rate > 1)
        throw InputError("mutation_rate must be in [0, 1]");
}

/// Fixed-length list of transition-choice indices. Gene k selects
/// among the current state's outgoing transitions modulo the fan-out.
using Chromosome = std::vector<std::uint32_t>;

/// Decodes a chromosome as one walk from start: the walk ends at the
/// end state (ReachedEnd), at a state with no outgoing transitions
/// (DeadEnd), or when the genes run out (StepGuard). No restarts: a
/// chromosome encodes a single pass, which is what caps the coverage
/// this baseline can reach.
inline TestSequence decode_chromosome(const StateMachine& m,
                                      const Chromosome& genes) {
    TestSequence seq;
    Segment segment;
    std::size_t current = m.start_index();
    segment.terminal = SegmentEnd::StepGuard;
    for (std::uint32_t gene : genes) {
        const auto& out = m.outgoing_indices(current);
        if (out.empty()) {
            segment.terminal = SegmentEnd::DeadEnd;
            break;
        }
        std::size_t t = out[gene % out.size()];
        segment.transitions.push_back(m.transition(t).id);
        current = m.target_index(t);
        if (current == m.end_index()) {
            segment.terminal = SegmentEnd::ReachedEnd;
            break;
        }
    }
    seq.segments.push_back(std::move(segment));
    return seq;
}

/// Number of distinct transitions covered by the decoded walk.
inline std::size_t walk_fitness(const StateMachine& m, const Chromosome& genes) {
    TestSequence seq = decode_chromosome(m, genes);
    std::set<TransitionId> distinct(seq.segments[0].transitions.begin(),
                                    seq.segments[0].transitions.end());
    return distinct.size();
}

struct GaResult {
    TestSequence sequence;
    CoverageReport report;
    std::vector<std::size_t> best_fitness_history;  // one entry per generation
};

/// Elitist generational GA over chromosomes decoded as single walks.
/// Parent selection is a size-2 tournament; crossover is single-point;
/// mutation redraws individual genes. Returns the best individual's
/// decoded sequence.
inline GaResult ga_generate(const StateMachine& m, const GaParams& p) {
    validate(p);
    const std::size_t length =
        p.chromosome_length != 0 ? p.chromosome_length
                                 : 2 * m.transition_count();
    std::mt19937_64 rng(p.seed);
    auto rand01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    std::vector<Chromosome> population(p.population_size, Chromosome(length));
    for (auto& individual : population)
        for (auto& gene : individual)
            gene = static_cast<std::uint32_t>(rng());

    std::vector<std::size_t> fitness(p.population_size);
    auto evaluate = [&]() {
        for (std::size_t i = 0; i < population.size(); ++i)
            fitness[i] = walk_fitness(m, population[i]);
    };
    auto best_index = [&]() {
        std::size_t best = 0;
        for (std::size_t i = 1; i < population.size(); ++i)
            if (fitness[i] > fitness[best]) best = i;
        return best;
    };

    GaResult result;
    evaluate();
    Chromosome best = population[best_index()];
    std::size_t best_fitness = fitness[best_index()];
    result.best_fitness_history.push_back(best_fitness);

    auto tournament = [&]() -> const Chromosome& {
        std::size_t a = rng() % population.size();
        std::size_t b = rng() % population.size();
        return fitness[b] > fitness[a] ? population[b] : population[a];
    };

    for (std::size_t gen = 1; gen < p.generations; ++gen) {
        std::vector<Chromosome> next;
        next.reserve(p.population_size);
        next.push_back(best);  // elitism
        while (next.size() < p.population_size) {
            Chromosome child = tournament();
            if (length > 1 && rand01() < p.crossover_rate) {
                const Chromosome& other = tournament();
                std::size_t cut = 1 + rng() % (length - 1);
                std::copy(other.begin() + static_cast<std::ptrdiff_t>(cut),
                          other.end(),
                          child.begin() + static_cast<std::ptrdiff_t>(cut));
            }
            for (auto& gene : child)
                if (rand01() < p.mutation_rate)
                    gene = static_cast<std::uint32_t>(rng());
            next.push_back(std::move(child));
        }
        population = std::move(next);
        evaluate();
        std::size_t idx = best_index();
        if (fitness[idx] > best_fitness) {
            best_fitness = fitness[idx];
            best = population[idx];
        }
        result.best_fitness_history.push_back(best_fitness);
    }

    result.sequence = decode_chromosome(m, best);
    result.report = measure(m, result.sequence);
    return result;
}

}  // namespace antcover
