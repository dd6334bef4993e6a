#pragma once

#include <vector>

#include "ucs/dispatch.hpp"
#include "ucs/instance.hpp"

namespace ucs {

// Penalty coefficients of the cost model. The defaults are the fixed
// constants of the objective: $1e4 per MW of unmet demand and $1e5 per
// missing period of a too-short on/off run.
struct PenaltyConfig {
    double demand_coeff = 1e4;
    double min_time_coeff = 1e5;
};

// Shortfalls and surpluses below this magnitude are treated as zero so
// that dispatch rounding dust never flags a feasible schedule.
inline constexpr double kPowerTolerance = 1e-9;

// A maximal constant-state run of one unit. Runs partition [0, T);
// effective_length additionally counts the pre-horizon initial run when
// the first segment continues the initial state.
struct RunSegment {
    int unit = 0;
    bool on = false;
    int start = 0;
    int length = 0;            // in-horizon periods
    int ordinal = 0;           // j-th segment of this unit, 0-based
    int effective_length = 0;  // length, plus initial_duration for a merged first segment
};

// Per-unit maximal runs of the commitment, in order.
std::vector<std::vector<RunSegment>> segments(const UcInstance& instance,
                                              const CommitmentMatrix& commitment);

enum class ViolationKind {
    DemandShortfall,  // generation below demand in a period (penalized)
    OverGeneration,   // forced surplus above demand in a period (reported only)
    ShortOnSegment,   // on-run shorter than min_up (penalized)
    ShortOffSegment,  // off-run shorter than min_down (penalized)
    BoundBreach,      // dispatched power outside the unit's band
};

const char* violation_kind_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int unit;    // -1 when the violation is per-period only
    int period;  // -1 when the violation is per-unit only (segment start otherwise)
    double magnitude;
};

// Cost breakdown plus feasibility report.
// total_cost = operating_cost + demand_penalty + min_time_penalty, exactly.
struct ScheduleEvaluation {
    double operating_cost = 0.0;
    double demand_penalty = 0.0;
    double min_time_penalty = 0.0;
    double total_cost = 0.0;
    bool feasible = false;  // true iff violations is empty
    std::vector<Violation> violations;
};

// Scores one schedule:
//   operating cost  = sum_i,t cost_rate_i * u_i^t * P_i^t * period_hours
//   demand penalty  = coeff_d * sum_t max(0, D_t - sum_i u_i^t * P_i^t)
//   min-time penalty= coeff_m * (minimum - length) per too-short segment,
//                     min_up for on-runs, min_down for off-runs; the final
//                     segment of each unit is exempt and the first uses its
//                     merged effective length.
// Violations enumerate every shortfall or surplus period, every short
// segment, and any dispatched power outside its band.
ScheduleEvaluation evaluate(const UcInstance& instance, const CommitmentMatrix& commitment,
                            const DispatchMatrix& dispatch, const PenaltyConfig& penalties = {});

}  // namespace ucs
