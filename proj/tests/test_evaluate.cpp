#include <random>

#include "doctest.h"
#include "naive_eval.hpp"
#include "test_util.hpp"
#include "ucs/dispatch.hpp"
#include "ucs/evaluate.hpp"

using namespace ucs;
using ucs::testing::make_unit;
using ucs::testing::naive_total_cost;
using ucs::testing::random_commitment;
using ucs::testing::random_instance;

namespace {

CommitmentMatrix from_pattern(const std::vector<std::vector<int>>& rows) {
    CommitmentMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t t = 0; t < rows[i].size(); ++t) m.at((int)i, (int)t) = (std::uint8_t)rows[i][t];
    }
    return m;
}

}  // namespace

TEST_SUITE("evaluate") {

TEST_CASE("segments split runs and merge the initial state") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 100, 1, 2, 2));
    instance.demand.assign(6, 0.0);
    const auto runs = segments(instance, from_pattern({{1, 1, 1, 0, 0, 1}}));
    REQUIRE(runs[0].size() == 3);
    CHECK(runs[0][0].on);
    CHECK(runs[0][0].length == 3);
    CHECK(!runs[0][1].on);
    CHECK(runs[0][1].length == 2);
    CHECK(runs[0][2].on);
    CHECK(runs[0][2].length == 1);
    // initially off, so the leading on-run gains nothing
    CHECK(runs[0][0].effective_length == 3);
    // the off-run is not first, no merge either
    CHECK(runs[0][1].effective_length == 2);
}

TEST_CASE("all-on unit merges with its initial on-run") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 100, 1, 2, 2, true, 5));
    instance.demand.assign(24, 0.0);
    CommitmentMatrix m(1, 24);
    for (auto& v : m.values) v = 1;
    const auto runs = segments(instance, m);
    REQUIRE(runs[0].size() == 1);
    CHECK(runs[0][0].length == 24);
    CHECK(runs[0][0].effective_length == 29);
}

TEST_CASE("segment lengths of a random matrix partition the horizon") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 50; ++round) {
        const UcInstance instance = random_instance(rng, 4, 6);
        const auto all = segments(instance, random_commitment(rng, 4, 6));
        for (const auto& runs : all) {
            int sum = 0;
            bool last_state = false;
            for (std::size_t j = 0; j < runs.size(); ++j) {
                if (j > 0) REQUIRE(runs[j].on != last_state);
                last_state = runs[j].on;
                REQUIRE(runs[j].ordinal == static_cast<int>(j));
                sum += runs[j].length;
            }
            REQUIRE(sum == 6);
        }
    }
}

TEST_CASE("operating cost alone when everything is feasible") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 100, 2, 1, 1));
    instance.demand = {50.0, 50.0, 50.0};
    CommitmentMatrix m(1, 3);
    for (auto& v : m.values) v = 1;
    const DispatchMatrix d = dispatch(instance, m);
    const ScheduleEvaluation eval = evaluate(instance, m, d);
    CHECK(eval.operating_cost == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(eval.demand_penalty == 0.0);
    CHECK(eval.min_time_penalty == 0.0);
    CHECK(eval.total_cost == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(eval.feasible);
}

TEST_CASE("demand shortfall is charged at 1e4 per MW") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 80, 1));
    instance.demand = {100.0};
    CommitmentMatrix m(1, 1);
    m.at(0, 0) = 1;
    const DispatchMatrix d = dispatch(instance, m);
    const ScheduleEvaluation eval = evaluate(instance, m, d);
    CHECK(eval.demand_penalty == doctest::Approx(200000.0).epsilon(1e-12));
    CHECK(!eval.feasible);
    REQUIRE(eval.violations.size() == 1);
    CHECK(eval.violations[0].kind == ViolationKind::DemandShortfall);
    CHECK(eval.violations[0].magnitude == doctest::Approx(20.0));
}

TEST_CASE("short interior on-segment is charged at 1e5 per missing period") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 100, 1, 3, 1));
    instance.demand.assign(5, 0.0);
    // off, on x1, off x3: on-run is neither first nor last
    const CommitmentMatrix m = from_pattern({{0, 1, 0, 0, 0}});
    const DispatchMatrix d = dispatch(instance, m);
    const ScheduleEvaluation eval = evaluate(instance, m, d);
    CHECK(eval.min_time_penalty == doctest::Approx(200000.0).epsilon(1e-12));
    bool found = false;
    for (const Violation& v : eval.violations) {
        if (v.kind == ViolationKind::ShortOnSegment) {
            found = true;
            CHECK(v.unit == 0);
            CHECK(v.period == 1);
            CHECK(v.magnitude == 2.0);
        }
    }
    CHECK(found);
}

TEST_CASE("final horizon-truncated segment is exempt") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 100, 1, 4, 1));
    instance.demand.assign(3, 0.0);
    const CommitmentMatrix m = from_pattern({{0, 1, 1}});  // short on-run, but last
    const auto eval = evaluate(instance, m, dispatch(instance, m));
    CHECK(eval.min_time_penalty == 0.0);
}

TEST_CASE("matches the naive evaluator on random schedules") {
    std::mt19937_64 rng(20240814);
    for (int round = 0; round < 300; ++round) {
        UcInstance instance = random_instance(rng, 3, 4);
        // stress the merge rule with varied initial conditions
        if (round % 2 == 0) {
            instance.units[0].initial_state = true;
            instance.units[0].initial_duration = 1 + round % 3;
        }
        const CommitmentMatrix m = random_commitment(rng, 3, 4);
        const DispatchMatrix d = dispatch(instance, m);
        const ScheduleEvaluation eval = evaluate(instance, m, d);
        const double expected = naive_total_cost(instance, m, d);
        REQUIRE(eval.total_cost == doctest::Approx(expected).epsilon(1e-6));
        // Eq. 1 additivity is exact
        REQUIRE(eval.total_cost ==
                eval.operating_cost + eval.demand_penalty + eval.min_time_penalty);
        REQUIRE(eval.feasible == eval.violations.empty());
        if (eval.feasible) {
            REQUIRE(eval.demand_penalty == 0.0);
            REQUIRE(eval.min_time_penalty == 0.0);
        }
    }
}

TEST_CASE("raising demand never lowers the shortfall penalty") {
    std::mt19937_64 rng(20240815);
    for (int round = 0; round < 50; ++round) {
        UcInstance instance = random_instance(rng, 3, 4);
        const CommitmentMatrix m = random_commitment(rng, 3, 4);
        const DispatchMatrix d = dispatch(instance, m);
        const double before = evaluate(instance, m, d).demand_penalty;
        std::uniform_int_distribution<int> period(0, 3);
        instance.demand[period(rng)] += 25.0;
        // same dispatch, higher demand
        const double after = evaluate(instance, m, d).demand_penalty;
        REQUIRE(after >= before - 1e-9);
    }
}

TEST_CASE("all off with zero demand costs nothing") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 10, 100, 3, 2, 2));
    instance.units.push_back(make_unit(1, 10, 100, 3, 2, 2));
    instance.demand.assign(4, 0.0);
    const CommitmentMatrix m(2, 4);
    const auto eval = evaluate(instance, m, dispatch(instance, m));
    CHECK(eval.total_cost == 0.0);
    CHECK(eval.feasible);
}

TEST_CASE("doubling cost rates doubles operating cost and nothing else") {
    std::mt19937_64 rng(20240816);
    UcInstance instance = random_instance(rng, 3, 4);
    const CommitmentMatrix m = random_commitment(rng, 3, 4);
    const DispatchMatrix d = dispatch(instance, m);
    const ScheduleEvaluation before = evaluate(instance, m, d);
    for (UnitSpec& u : instance.units) u.cost_rate *= 2.0;
    const ScheduleEvaluation after = evaluate(instance, m, d);
    CHECK(after.operating_cost == doctest::Approx(2.0 * before.operating_cost).epsilon(1e-12));
    CHECK(after.demand_penalty == before.demand_penalty);
    CHECK(after.min_time_penalty == before.min_time_penalty);
}

TEST_CASE("penalty coefficients are configurable with spec defaults") {
    const PenaltyConfig defaults;
    CHECK(defaults.demand_coeff == 1e4);
    CHECK(defaults.min_time_coeff == 1e5);

    UcInstance instance;
    instance.units.push_back(make_unit(0, 0, 80, 1));
    instance.demand = {100.0};
    CommitmentMatrix m(1, 1);
    m.at(0, 0) = 1;
    const DispatchMatrix d = dispatch(instance, m);
    const auto eval = evaluate(instance, m, d, PenaltyConfig{1.0, 1.0});
    CHECK(eval.demand_penalty == doctest::Approx(20.0));
}

}  // TEST_SUITE
