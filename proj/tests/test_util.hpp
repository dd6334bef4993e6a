#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "ucs/instance.hpp"

// Shared generators for randomized tests. Everything is seeded by the
// caller so failures replay exactly.

namespace ucs::testing {

inline UnitSpec make_unit(int id, double p_min, double p_max, double cost_rate, int min_up = 1,
                          int min_down = 1, bool initial_state = false,
                          int initial_duration = -1) {
    UnitSpec u;
    u.id = id;
    u.p_min = p_min;
    u.p_max = p_max;
    u.cost_rate = cost_rate;
    u.min_up = min_up;
    u.min_down = min_down;
    u.initial_state = initial_state;
    u.initial_duration = initial_duration >= 1 ? initial_duration
                                               : (initial_state ? min_up : min_down);
    return u;
}

// Random instance with coverable demand: sum p_max >= every D_t. Minimum
// times are mostly 1 so tiny horizons stay interesting rather than locked.
inline UcInstance random_instance(std::mt19937_64& rng, int n, int t) {
    std::uniform_real_distribution<double> p_max_dist(50.0, 150.0);
    std::uniform_real_distribution<double> p_min_frac(0.0, 0.3);
    std::uniform_real_distribution<double> rate_dist(1.0, 10.0);
    std::uniform_int_distribution<int> min_time_dist(0, 3);  // 0..2 -> 1, 3 -> 2

    UcInstance instance;
    for (int i = 0; i < n; ++i) {
        const double p_max = p_max_dist(rng);
        const int min_up = min_time_dist(rng) == 3 ? 2 : 1;
        const int min_down = min_time_dist(rng) == 3 ? 2 : 1;
        instance.units.push_back(
            make_unit(i, p_min_frac(rng) * p_max, p_max, rate_dist(rng), min_up, min_down));
    }
    const double capacity = instance.capacity_sum();
    std::uniform_real_distribution<double> demand_dist(0.3 * capacity, 0.85 * capacity);
    for (int k = 0; k < t; ++k) instance.demand.push_back(demand_dist(rng));
    return instance;
}

inline CommitmentMatrix random_commitment(std::mt19937_64& rng, int n, int t,
                                          double p_on = 0.5) {
    std::bernoulli_distribution bit(p_on);
    CommitmentMatrix m(n, t);
    for (auto& v : m.values) v = bit(rng) ? 1 : 0;
    return m;
}

}  // namespace ucs::testing
