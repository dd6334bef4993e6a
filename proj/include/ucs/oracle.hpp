#pragma once

#include <cstdint>

#include "ucs/dispatch.hpp"
#include "ucs/evaluate.hpp"
#include "ucs/instance.hpp"

namespace ucs {

inline constexpr std::uint64_t kDefaultOracleLimit = std::uint64_t{1} << 24;

struct OracleResult {
    CommitmentMatrix commitment;
    DispatchMatrix dispatch;
    ScheduleEvaluation evaluation;
};

// Ground truth for tiny instances: enumerates every binary commitment
// matrix, dispatches, evaluates, and returns the global minimum total
// cost. Ties resolve to the lexicographically smallest flattened matrix.
// Throws InstanceError when 2^(N*T) exceeds limit.
OracleResult solve_exhaustive(const UcInstance& instance,
                              std::uint64_t limit = kDefaultOracleLimit,
                              const PenaltyConfig& penalties = {});

}  // namespace ucs
