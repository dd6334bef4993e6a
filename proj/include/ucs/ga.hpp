#pragma once

#include <cstdint>
#include <optional>

#include "ucs/instance.hpp"
#include "ucs/report.hpp"

namespace ucs {

struct GaConfig {
    int population = 100;
    int generations = 200;
    int tournament = 3;
    double crossover_prob = 0.9;  // one-point over the flattened N*T genome
    std::optional<double> mutation_prob;  // per bit; default 1/(N*T)
    int elitism = 2;
    std::uint64_t rng_seed = 0;
    int workers = 1;
};

void validate_config(const GaConfig& config, const UcInstance& instance);

// Left-to-right sweep per unit: a state change arriving before the
// current state's minimum duration (counting the initial run) is
// overwritten to extend the current state. The result has no min up/down
// violations.
CommitmentMatrix repair(const UcInstance& instance, const CommitmentMatrix& commitment);

// The comparator baseline: evolve commitment bits directly with
// tournament selection, one-point crossover, bit-flip mutation, repair,
// and elitism; dispatch and evaluation reuse the shared pipeline. The
// report mirrors the evolution report, with candidate-production time in
// the sampling-time role.
SearchReport run_ga(const UcInstance& instance, const GaConfig& config);

}  // namespace ucs
