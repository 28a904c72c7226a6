#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "antcover/aco.hpp"
#include "antcover/fixtures.hpp"
#include "antcover/oracle.hpp"

using namespace antcover;

namespace {

// a covering solution must consist of chained walks from start
void check_walks_valid(const StateMachine& m, const CoveringSolution& s) {
    for (const auto& walk : s.walks) {
        std::size_t at = m.start_index();
        for (const auto& id : walk) {
            std::size_t t = m.transition_index(id);
            REQUIRE(m.source_index(t) == at);
            at = m.target_index(t);
        }
    }
}

}  // namespace

TEST_CASE("coverable matches reachable_transitions") {
    CHECK(coverable(enrollment_machine()) ==
          reachable_transitions(enrollment_machine()));
    CHECK(coverable(enrollment_machine()).size() == 13);
    CHECK(coverable(minimal_machine()) == std::set<TransitionId>{"e1"});

    StateMachine partial({"start", "final", "x", "y"}, "start", "final",
                         {{"e1", "start", "final", ""}, {"e2", "x", "y", ""}});
    CHECK(coverable(partial) == std::set<TransitionId>{"e1"});
}

TEST_CASE("minimal_cover of the minimal machine is one walk of length one") {
    CoveringSolution s = minimal_cover(minimal_machine());
    CHECK(s.complete);
    CHECK(s.total_length == 1);
    REQUIRE(s.walks.size() == 1);
    CHECK(s.walks[0] == std::vector<TransitionId>{"e1"});
}

TEST_CASE("minimal_cover of the three-transition fork needs length three") {
    // start->a (t1), a->end (t2), start->end (t3): the exhaustive
    // enumeration of covers up to length 3 gives [t1 t2] plus [t3]
    StateMachine m({"start", "a", "final"}, "start", "final",
                   {{"t1", "start", "a", ""},
                    {"t2", "a", "final", ""},
                    {"t3", "start", "final", ""}});
    CoveringSolution s = minimal_cover(m);
    CHECK(s.complete);
    CHECK(s.total_length == 3);
    CHECK(s.walks.size() == 2);
    CHECK(s.covers == std::set<TransitionId>{"t1", "t2", "t3"});
    check_walks_valid(m, s);
}

TEST_CASE("minimal_cover flags an exhausted bound as incomplete") {
    StateMachine m({"start", "a", "final"}, "start", "final",
                   {{"t1", "start", "a", ""},
                    {"t2", "a", "final", ""},
                    {"t3", "start", "final", ""}});
    CoveringSolution s = minimal_cover(m, 2);
    CHECK_FALSE(s.complete);
    CHECK(s.covers.size() < 3);
    check_walks_valid(m, s);
}

TEST_CASE("minimal_cover of the enrollment machine totals 27") {
    CoveringSolution s = minimal_cover(enrollment_machine());
    CHECK(s.complete);
    CHECK(s.total_length == 27);  // pinned regression value
    CHECK(s.covers.size() == 13);
    check_walks_valid(enrollment_machine(), s);
}

TEST_CASE("the ant never beats the oracle's total length") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        AcoParams p;
        p.seed = seed;
        RunResult run = run_ant(enrollment_machine(), p);
        CHECK(run.report.total_steps >= 27);
    }
}

TEST_CASE("minimal_cover skips walks through the end state") {
    // t2 hangs off final; it is not coverable and must not be searched
    StateMachine m({"start", "final", "b"}, "start", "final",
                   {{"t1", "start", "final", ""}, {"t2", "final", "b", ""}});
    CoveringSolution s = minimal_cover(m);
    CHECK(s.complete);
    CHECK(s.covers == std::set<TransitionId>{"t1"});
    CHECK(s.total_length == 1);
}

TEST_CASE("minimal_cover rejects machines above the tractability guard") {
    std::vector<Transition> transitions{{"in", "start", "h", ""}};
    for (int i = 1; i <= 15; ++i)
        transitions.push_back(
            {"l" + std::to_string(i), "h", "h", "x" + std::to_string(i)});
    transitions.push_back({"out", "h", "final", ""});
    StateMachine m({"start", "h", "final"}, "start", "final", transitions);
    REQUIRE(m.transition_count() == 17);
    CHECK_THROWS_AS(minimal_cover(m), InputError);
}

TEST_CASE("oracle and engine agree on coverability of random machines") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        std::size_t states = 2 + seed % 7;
        std::size_t cap = std::min({std::size_t{12}, states + 4,
                                    states * (states - 1) / 2});
        std::size_t low = std::max<std::size_t>(1, states - 1);
        std::size_t transitions = low + seed % (cap - low + 1);
        StateMachine m = random_machine(states, transitions, seed);

        AcoParams p;
        p.seed = seed;
        RunResult run = run_ant(m, p);
        bool fully_coverable = coverable(m).size() == m.transition_count();
        CHECK(fully_coverable == (run.report.coverage_pct == 100.0));

        CoveringSolution s = minimal_cover(m);
        if (s.complete) CHECK(run.report.total_steps >= s.total_length);
    }
}
