#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "ucs/dispatch.hpp"

using namespace ucs;
using ucs::testing::make_unit;
using ucs::testing::random_commitment;
using ucs::testing::random_instance;

namespace {

CommitmentMatrix all_on(int n, int t) {
    CommitmentMatrix m(n, t);
    for (auto& v : m.values) v = 1;
    return m;
}

}  // namespace

TEST_SUITE("dispatch") {

TEST_CASE("single committed unit meets demand exactly") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 10, 100, 2));
    instance.demand = {50.0};
    const DispatchMatrix d = dispatch(instance, all_on(1, 1));
    CHECK(d.at(0, 0) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("residual fills in merit order") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 10, 40, 1));
    instance.units.push_back(make_unit(1, 10, 40, 5));
    instance.demand = {60.0};
    const DispatchMatrix d = dispatch(instance, all_on(2, 1));
    CHECK(d.at(0, 0) == doctest::Approx(40.0));
    CHECK(d.at(1, 0) == doctest::Approx(20.0));
}

TEST_CASE("minimum outputs force over-generation") {
    UcInstance instance;
    instance.units.push_back(make_unit(0, 30, 100, 1));
    instance.units.push_back(make_unit(1, 30, 100, 2));
    instance.demand = {40.0};
    const DispatchMatrix d = dispatch(instance, all_on(2, 1));
    CHECK(d.at(0, 0) == doctest::Approx(30.0));
    CHECK(d.at(1, 0) == doctest::Approx(30.0));
}

TEST_CASE("total_generation sums columns") {
    CHECK(total_generation(DispatchMatrix(2, 3)) == std::vector<double>{0.0, 0.0, 0.0});

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> power(0.0, 100.0);
    DispatchMatrix d(3, 4);
    for (auto& p : d.powers) p = power(rng);
    const auto totals = total_generation(d);
    for (int t = 0; t < 4; ++t) {
        double expected = 0.0;
        for (int i = 0; i < 3; ++i) expected += d.at(i, t);
        CHECK(totals[t] == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("dispatch invariants hold over random inputs") {
    std::mt19937_64 rng(20240812);
    for (int round = 0; round < 200; ++round) {
        const UcInstance instance = random_instance(rng, 4, 6);
        const CommitmentMatrix commitment = random_commitment(rng, 4, 6);
        const DispatchMatrix d = dispatch(instance, commitment);

        double committed_min, committed_max;
        for (int t = 0; t < 6; ++t) {
            committed_min = committed_max = 0.0;
            for (int i = 0; i < 4; ++i) {
                const UnitSpec& u = instance.units[i];
                if (commitment.on(i, t)) {
                    REQUIRE(d.at(i, t) >= u.p_min - 1e-9);
                    REQUIRE(d.at(i, t) <= u.p_max + 1e-9);
                    committed_min += u.p_min;
                    committed_max += u.p_max;
                } else {
                    REQUIRE(d.at(i, t) == 0.0);
                }
            }
            // equality whenever demand sits inside the committed band
            const double demand = instance.demand[t];
            if (committed_min <= demand && demand <= committed_max) {
                const double total = total_generation(d)[t];
                REQUIRE(std::abs(total - demand) <= 1e-9);
            }
        }
    }
}

TEST_CASE("no pairwise swap between committed units can cut cost") {
    std::mt19937_64 rng(20240813);
    for (int round = 0; round < 100; ++round) {
        const UcInstance instance = random_instance(rng, 4, 3);
        const CommitmentMatrix commitment = random_commitment(rng, 4, 3, 0.7);
        const DispatchMatrix d = dispatch(instance, commitment);
        for (int t = 0; t < 3; ++t) {
            for (int from = 0; from < 4; ++from) {
                for (int to = 0; to < 4; ++to) {
                    if (from == to || !commitment.on(from, t) || !commitment.on(to, t)) continue;
                    const UnitSpec& uf = instance.units[from];
                    const UnitSpec& ut = instance.units[to];
                    const double transferable = std::min(d.at(from, t) - uf.p_min,
                                                         ut.p_max - d.at(to, t));
                    if (transferable > 1e-9) {
                        // moving output toward `to` must not be cheaper
                        REQUIRE(ut.cost_rate >= uf.cost_rate - 1e-12);
                    }
                }
            }
        }
    }
}

}  // TEST_SUITE
