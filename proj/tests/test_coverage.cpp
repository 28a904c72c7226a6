#include <catch2/catch_amalgamated.hpp>

#include "antcover/aco.hpp"
#include "antcover/baselines.hpp"
#include "antcover/coverage.hpp"
#include "antcover/fixtures.hpp"
#include "antcover/render.hpp"

using namespace antcover;

namespace {

TestSequence sequence_of(std::vector<Segment> segments) {
    TestSequence seq;
    seq.segments = std::move(segments);
    return seq;
}

// fourteen transitions: one into a hub, twelve hub self-loops with
// distinct labels, one out to final
StateMachine hub14() {
    std::vector<Transition> transitions{{"in", "start", "h", ""}};
    for (int i = 1; i <= 12; ++i)
        transitions.push_back(
            {"loop" + std::to_string(i), "h", "h", "l" + std::to_string(i)});
    transitions.push_back({"out", "h", "final", ""});
    return StateMachine({"start", "h", "final"}, "start", "final", transitions);
}

}  // namespace

TEST_CASE("measure on a full-coverage enrollment run reports 100 percent") {
    AcoParams p;
    p.seed = 8;
    RunResult run = run_ant(enrollment_machine(), p);
    CoverageReport report = measure(enrollment_machine(), run.sequence);
    CHECK(report.coverage_pct == 100.0);
    CHECK(report.covered_transitions == 13);
    CHECK(report.total_transitions == 13);
    CHECK(report.uncoverable.empty());
}

TEST_CASE("measure of the empty sequence is all zeros") {
    CoverageReport report = measure(enrollment_machine(), TestSequence{});
    CHECK(report.coverage_pct == 0.0);
    CHECK(report.total_steps == 0);
    CHECK(report.segment_count == 0);
    CHECK(report.repeated_steps == 0);
    for (const auto& [id, hits] : report.per_transition_hits) CHECK(hits == 0);
    for (const auto& [s, hits] : report.per_state_hits) CHECK(hits == 0);
}

TEST_CASE("nine of fourteen transitions reproduce the 64.29 percent figure") {
    StateMachine m = hub14();
    Segment walk;
    walk.transitions = {"in",    "loop1", "loop2", "loop3", "loop4",
                        "loop5", "loop6", "loop7", "out"};
    walk.terminal = SegmentEnd::ReachedEnd;
    CoverageReport report = measure(m, sequence_of({walk}));
    CHECK(report.covered_transitions == 9);
    CHECK(report.total_transitions == 14);
    CHECK(report.coverage_pct == Catch::Approx(64.29).margin(0.01));
    CHECK(format_pct(report.coverage_pct) == "64.29");
}

TEST_CASE("per-transition hits sum to total steps") {
    AcoParams p;
    p.seed = 31;
    RunResult run = run_ant(enrollment_machine(), p);
    std::size_t sum = 0;
    for (const auto& [id, hits] : run.report.per_transition_hits) sum += hits;
    CHECK(sum == run.report.total_steps);
}

TEST_CASE("state hits count occupancy per segment") {
    StateMachine m = minimal_machine();
    Segment segment;
    segment.transitions = {"e1"};
    CoverageReport report = measure(m, sequence_of({segment, segment}));
    CHECK(report.per_state_hits.at("start") == 2);
    CHECK(report.per_state_hits.at("final") == 2);
    CHECK(report.total_steps == 2);
    CHECK(report.repeated_steps == 1);
    CHECK(report.segment_count == 2);
}

TEST_CASE("measure rejects unknown transition ids") {
    Segment bogus;
    bogus.transitions = {"nope"};
    CHECK_THROWS_AS(measure(minimal_machine(), sequence_of({bogus})),
                    InputError);
}

TEST_CASE("unreachable transitions are reported as uncoverable") {
    StateMachine m({"start", "final", "x", "y"}, "start", "final",
                   {{"e1", "start", "final", ""}, {"e2", "x", "y", ""}});
    Segment segment;
    segment.transitions = {"e1"};
    CoverageReport report = measure(m, sequence_of({segment}));
    CHECK(report.uncoverable == std::set<TransitionId>{"e2"});
    CHECK(report.coverage_pct == 50.0);
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("compare sorts rows by label and carries the four columns") {
    StateMachine m = enrollment_machine();
    AcoParams p;
    p.seed = 4;
    RunResult aco = run_ant(m, p);
    WalkResult rw = random_walk(m, 4, 10000);
    auto rows = compare({{"random", rw.report}, {"aco", aco.report}});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].label == "aco");
    CHECK(rows[1].label == "random");
    CHECK(rows[0].coverage_pct == 100.0);
    CHECK(rows[0].total_steps == aco.report.total_steps);
    CHECK(rows[0].repeated_steps == aco.report.repeated_steps);
    CHECK(rows[0].segment_count == aco.report.segment_count);
}

TEST_CASE("compare rejects reports over different machines") {
    AcoParams p;
    RunResult a = run_ant(enrollment_machine(), p);
    RunResult b = run_ant(minimal_machine(), p);
    CHECK_THROWS_WITH(compare({{"a", a.report}, {"b", b.report}}),
                      Catch::Matchers::ContainsSubstring("machine mismatch"));
    CHECK(compare({{"solo", a.report}}).size() == 1);
    CHECK_THROWS_AS(compare({}), InputError);
}

TEST_CASE("percentages render half-up with two decimals") {
    CHECK(format_pct(100.0) == "100.00");
    CHECK(format_pct(0.0) == "0.00");
    CHECK(format_pct(64.285714) == "64.29");
    CHECK(format_pct(0.125) == "0.13");  // exact tie rounds up
    CHECK(format_pct(100.0 * 9.0 / 14.0) == "64.29");
}

TEST_CASE("comparison CSV has a header and one row per report") {
    std::vector<ComparisonRow> rows{{"aco", 100.0, 33, 20, 7},
                                    {"ga", 61.54, 9, 1, 1}};
    std::string csv = render_comparison_csv(rows);
    CHECK(csv.find("label,coverage_pct,total_steps,repeated_steps,"
                   "segment_count\n") == 0);
    CHECK(csv.find("aco,100.00,33,20,7\n") != std::string::npos);
    CHECK(csv.find("ga,61.54,9,1,1\n") != std::string::npos);
}

TEST_CASE("annotated DOT styles covered and uncovered edges") {
    StateMachine m({"start", "a", "final"}, "start", "final",
                   {{"t1", "start", "final", ""}, {"t2", "start", "a", ""},
                    {"t3", "a", "final", ""}});
    Segment segment;
    segment.transitions = {"t1"};
    CoverageReport report = measure(m, sequence_of({segment}));
    std::string dot = to_dot_annotated(m, report);
    CHECK(dot.find("label=\"t1 (1)\", style=solid") != std::string::npos);
    CHECK(dot.find("label=\"t2 (0)\", style=dashed") != std::string::npos);
}
