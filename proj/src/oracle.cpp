#include "ucs/oracle.hpp"

#include <string>

namespace ucs {

OracleResult solve_exhaustive(const UcInstance& instance, std::uint64_t limit,
                              const PenaltyConfig& penalties) {
    validate_instance(instance);
    const int n = instance.unit_count();
    const int horizon = instance.period_count();
    const int bits = n * horizon;
    if (bits >= 63 || (std::uint64_t{1} << bits) > limit) {
        throw InstanceError("instance too large for exhaustive search: 2^" + std::to_string(bits) +
                            " commitments exceed limit " + std::to_string(limit));
    }

    const std::uint64_t count = std::uint64_t{1} << bits;
    OracleResult best;
    bool have_best = false;
    CommitmentMatrix candidate(n, horizon);

    // Counter bit (bits-1-k) holds flattened cell k, so ascending counter
    // order is lexicographic order of the flattened matrix and the first
    // strict improvement wins ties.
    for (std::uint64_t code = 0; code < count; ++code) {
        for (int k = 0; k < bits; ++k) {
            candidate.values[k] = static_cast<std::uint8_t>((code >> (bits - 1 - k)) & 1);
        }
        DispatchMatrix powers = dispatch(instance, candidate);
        ScheduleEvaluation eval = evaluate(instance, candidate, powers, penalties);
        if (!have_best || eval.total_cost < best.evaluation.total_cost) {
            best.commitment = candidate;
            best.dispatch = std::move(powers);
            best.evaluation = std::move(eval);
            have_best = true;
        }
    }
    return best;
}

}  // namespace ucs
