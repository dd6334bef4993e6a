#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucs/instance.hpp"

using namespace ucs;
using ucs::testing::make_unit;
using ucs::testing::random_instance;

namespace {

std::filesystem::path data_file(const char* name) {
    return std::filesystem::path(UCS_DATA_DIR) / name;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE("instance") {

TEST_CASE("bundled ten-unit instance loads with expected shape") {
    const UcInstance instance = load_instance(data_file("ten_unit.json"));
    CHECK(instance.unit_count() == 10);
    CHECK(instance.period_count() == 24);
    CHECK(instance.period_hours == 1.0);
    // peak demand must be coverable
    double peak = 0.0;
    for (double d : instance.demand) peak = std::max(peak, d);
    CHECK(instance.capacity_sum() >= peak);
}

TEST_CASE("p_min above p_max is rejected naming the unit") {
    const char* text = R"({
      "version": 1, "period_hours": 1.0, "demand": [10],
      "units": [{"id": 0, "p_min": 50, "p_max": 20, "cost_rate": 1,
                 "min_up": 1, "min_down": 1}]
    })";
    CHECK_THROWS_WITH_AS(parse_instance_json(text), doctest::Contains("unit 0"), InstanceError);
}

TEST_CASE("declared demand length must match the demand array") {
    // a 23-entry demand is simply a 23-period instance; mismatch only
    // arises against a matrix, so shape errors carry both sizes
    UcInstance instance;
    for (int i = 0; i < 10; ++i) instance.units.push_back(make_unit(i, 0, 100, 1));
    instance.demand.assign(23, 50.0);
    CommitmentMatrix m(10, 24);
    CHECK_THROWS_WITH_AS(validate_commitment_shape(instance, m), doctest::Contains("10x23"),
                         InstanceError);
}

TEST_CASE("unknown keys are rejected") {
    const char* text = R"({
      "version": 1, "period_hours": 1.0, "demand": [10], "comment": "nope",
      "units": [{"id": 0, "p_min": 0, "p_max": 20, "cost_rate": 1,
                 "min_up": 1, "min_down": 1}]
    })";
    CHECK_THROWS_WITH_AS(parse_instance_json(text), doctest::Contains("comment"), InstanceError);
}

TEST_CASE("unit ids must be 0..N-1 in order") {
    UcInstance instance;
    instance.units.push_back(make_unit(1, 0, 100, 1));
    instance.demand = {50.0};
    CHECK_THROWS_AS(validate_instance(instance), InstanceError);
}

TEST_CASE("omitted initial fields default to off for min_down") {
    const char* text = R"({
      "version": 1, "period_hours": 1.0, "demand": [10],
      "units": [{"id": 0, "p_min": 0, "p_max": 20, "cost_rate": 1,
                 "min_up": 2, "min_down": 3}]
    })";
    const UcInstance instance = parse_instance_json(text);
    CHECK(instance.units[0].initial_state == false);
    CHECK(instance.units[0].initial_duration == 3);
}

TEST_CASE("store/load round-trip preserves the instance") {
    std::mt19937_64 rng(20240811);
    for (int round = 0; round < 20; ++round) {
        const UcInstance original = random_instance(rng, 3, 5);
        const auto path = temp_file("ucs_roundtrip.json");
        store_instance(original, path);
        const UcInstance reloaded = load_instance(path);
        CHECK(reloaded == original);
    }
}

TEST_CASE("validate_commitment_shape accepts and rejects per spec") {
    UcInstance instance;
    for (int i = 0; i < 10; ++i) instance.units.push_back(make_unit(i, 0, 100, 1));
    instance.demand.assign(24, 50.0);

    CHECK_NOTHROW(validate_commitment_shape(instance, CommitmentMatrix(10, 24)));
    CHECK_THROWS_AS(validate_commitment_shape(instance, CommitmentMatrix(9, 24)), InstanceError);

    CommitmentMatrix bad(10, 24);
    bad.at(3, 7) = 2;
    CHECK_THROWS_WITH_AS(validate_commitment_shape(instance, bad), doctest::Contains("(3,7)"),
                         InstanceError);
}

}  // TEST_SUITE
