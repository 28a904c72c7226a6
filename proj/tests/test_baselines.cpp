#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "antcover/aco.hpp"
#include "antcover/baselines.hpp"
#include "antcover/fixtures.hpp"

using namespace antcover;

namespace {

// every walk from start of at most `budget` steps, longest distinct
// coverage found; exhaustive reference for the single-walk ceiling
std::size_t max_distinct_single_walk(const StateMachine& m,
                                     std::size_t budget) {
    std::size_t best = 0;
    struct Frame {
        std::size_t state;
        std::size_t depth;
        std::set<TransitionId> seen;
    };
    std::vector<Frame> stack{{m.start_index(), 0, {}}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        best = std::max(best, f.seen.size());
        if (f.depth == budget || f.state == m.end_index()) continue;
        for (std::size_t t : m.outgoing_indices(f.state)) {
            Frame next = f;
            next.state = m.target_index(t);
            ++next.depth;
            next.seen.insert(m.transition(t).id);
            stack.push_back(std::move(next));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("random_walk covers the minimal machine in one step") {
    WalkResult result = random_walk(minimal_machine(), 0, 100);
    CHECK(result.report.coverage_pct == 100.0);
    CHECK(result.report.total_steps == 1);
    REQUIRE(result.sequence.segments.size() == 1);
    CHECK(result.sequence.segments[0].terminal == SegmentEnd::ReachedEnd);
}

TEST_CASE("random_walk with a zero budget yields an empty sequence") {
    WalkResult result = random_walk(enrollment_machine(), 0, 0);
    CHECK(result.sequence.segments.empty());
    CHECK(result.report.coverage_pct == 0.0);
}

TEST_CASE("random_walk is deterministic under a seed") {
    WalkResult a = random_walk(enrollment_machine(), 5, 10000);
    WalkResult b = random_walk(enrollment_machine(), 5, 10000);
    CHECK(a.sequence == b.sequence);
}

TEST_CASE("random_walk eventually covers the enrollment machine") {
    WalkResult result = random_walk(enrollment_machine(), 1, 10000);
    CHECK(result.report.coverage_pct == 100.0);
}

TEST_CASE("random_walk needs at least as many steps as the ant on most seeds") {
    StateMachine m = enrollment_machine();
    int random_not_cheaper = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        AcoParams p;
        p.seed = seed;
        RunResult aco = run_ant(m, p);
        WalkResult rw = random_walk(m, seed, 10000);
        REQUIRE(rw.report.coverage_pct == 100.0);
        if (rw.report.total_steps >= aco.report.total_steps)
            ++random_not_cheaper;
    }
    INFO("random walk took at least as many steps in " << random_not_cheaper
                                                       << "/100 seeds");
    CHECK(random_not_cheaper >= 90);
}

TEST_CASE("decode_chromosome walks gene by gene") {
    SECTION("any chromosome decodes to the only path of the minimal machine") {
        TestSequence seq = decode_chromosome(minimal_machine(), {9u, 4u, 2u});
        REQUIRE(seq.segments.size() == 1);
        CHECK(seq.segments[0].transitions == std::vector<TransitionId>{"e1"});
        CHECK(seq.segments[0].terminal == SegmentEnd::ReachedEnd);
    }

    SECTION("decoded walks obey the chaining invariant") {
        StateMachine m = enrollment_machine();
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            Chromosome genes(26);
            for (auto& g : genes) g = static_cast<std::uint32_t>(rng());
            TestSequence seq = decode_chromosome(m, genes);
            REQUIRE(seq.segments.size() == 1);
            std::size_t at = m.start_index();
            for (const auto& id : seq.segments[0].transitions) {
                std::size_t t = m.transition_index(id);
                CHECK(m.source_index(t) == at);
                at = m.target_index(t);
            }
        }
    }

    SECTION("gene exhaustion ends the walk with the step-guard reason") {
        StateMachine m = enrollment_machine();
        // gene value 0 always picks the first outgoing transition; from
        // s2 that is the self-loop, so four genes cannot reach final
        TestSequence seq = decode_chromosome(m, {0u, 0u, 0u, 0u});
        CHECK(seq.segments[0].terminal == SegmentEnd::StepGuard);
    }

    SECTION("a sink state ends the walk as a dead end") {
        StateMachine m({"start", "pit", "final"}, "start", "final",
                       {{"t1", "start", "pit", ""},
                        {"t2", "start", "final", ""}});
        TestSequence seq = decode_chromosome(m, {0u, 0u, 0u});
        CHECK(seq.segments[0].terminal == SegmentEnd::DeadEnd);
        CHECK(seq.segments[0].transitions == std::vector<TransitionId>{"t1"});
    }
}

TEST_CASE("walk fitness is the distinct-transition count") {
    StateMachine m = enrollment_machine();
    Chromosome genes{0u, 0u, 0u, 0u};  // start->s0->s1->s2->s2
    CHECK(walk_fitness(m, genes) == 4);
}

TEST_CASE("ga_generate fully covers the minimal machine") {
    GaParams p;
    p.seed = 1;
    p.generations = 5;
    GaResult result = ga_generate(minimal_machine(), p);
    CHECK(result.report.coverage_pct == 100.0);
}

TEST_CASE("ga best fitness never decreases across generations") {
    GaParams p;
    p.seed = 10;
    GaResult result = ga_generate(enrollment_machine(), p);
    REQUIRE(result.best_fitness_history.size() == p.generations);
    CHECK(std::is_sorted(result.best_fitness_history.begin(),
                         result.best_fitness_history.end()));
}

TEST_CASE("ga is deterministic under a seed") {
    GaParams p;
    p.seed = 77;
    GaResult a = ga_generate(enrollment_machine(), p);
    GaResult b = ga_generate(enrollment_machine(), p);
    CHECK(a.sequence == b.sequence);
    CHECK(a.best_fitness_history == b.best_fitness_history);
}

TEST_CASE("a single-walk GA cannot fully cover the enrollment machine") {
    StateMachine m = enrollment_machine();
    // exhaustive: no 7-step walk covers more than 7 of 13 transitions
    std::size_t ceiling = max_distinct_single_walk(m, 7);
    CHECK(ceiling < 13);

    GaParams p;
    p.chromosome_length = 7;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        p.seed = seed;
        GaResult result = ga_generate(m, p);
        CHECK(result.report.coverage_pct < 100.0);
        CHECK(result.report.covered_transitions <= ceiling);
    }
}

TEST_CASE("ga parameter validation") {
    GaParams p;
    p.population_size = 1;
    CHECK_THROWS_AS(ga_generate(minimal_machine(), p), InputError);
    p = {};
    p.crossover_rate = 1.5;
    CHECK_THROWS_AS(ga_generate(minimal_machine(), p), InputError);
    p = {};
    p.mutation_rate = -0.1;
    CHECK_THROWS_AS(ga_generate(minimal_machine(), p), InputError);
}

TEST_CASE("the ant dominates both baselines on the enrollment machine") {
    StateMachine m = enrollment_machine();
    std::uint64_t budget = 64ull * 13 * 8;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        AcoParams aco;
        aco.seed = seed;
        RunResult a = run_ant(m, aco);
        GaParams gp;
        gp.seed = seed;
        GaResult g = ga_generate(m, gp);
        WalkResult r = random_walk(m, seed, budget);
        CHECK(a.report.coverage_pct >= g.report.coverage_pct);
        CHECK(a.report.coverage_pct >= r.report.coverage_pct);
    }
}
