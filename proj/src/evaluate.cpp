#include "ucs/evaluate.hpp"

#include <algorithm>
#include <sstream>

namespace ucs {

const char* violation_kind_name(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::DemandShortfall: return "demand_shortfall";
        case ViolationKind::OverGeneration: return "over_generation";
        case ViolationKind::ShortOnSegment: return "short_on_segment";
        case ViolationKind::ShortOffSegment: return "short_off_segment";
        case ViolationKind::BoundBreach: return "bound_breach";
    }
    return "unknown";
}

std::vector<std::vector<RunSegment>> segments(const UcInstance& instance,
                                              const CommitmentMatrix& commitment) {
    validate_commitment_shape(instance, commitment);
    const int horizon = instance.period_count();
    std::vector<std::vector<RunSegment>> all(instance.units.size());
    for (int i = 0; i < instance.unit_count(); ++i) {
        auto& runs = all[i];
        int start = 0;
        while (start < horizon) {
            const bool state = commitment.on(i, start);
            int end = start + 1;
            while (end < horizon && commitment.on(i, end) == state) ++end;
            RunSegment seg;
            seg.unit = i;
            seg.on = state;
            seg.start = start;
            seg.length = end - start;
            seg.ordinal = static_cast<int>(runs.size());
            seg.effective_length = seg.length;
            if (seg.ordinal == 0 && state == instance.units[i].initial_state) {
                seg.effective_length += instance.units[i].initial_duration;
            }
            runs.push_back(seg);
            start = end;
        }
    }
    return all;
}

ScheduleEvaluation evaluate(const UcInstance& instance, const CommitmentMatrix& commitment,
                            const DispatchMatrix& dispatch, const PenaltyConfig& penalties) {
    validate_commitment_shape(instance, commitment);
    if (dispatch.units != instance.unit_count() || dispatch.periods != instance.period_count()) {
        std::ostringstream msg;
        msg << "dispatch shape " << dispatch.units << "x" << dispatch.periods
            << " does not match instance " << instance.unit_count() << "x"
            << instance.period_count();
        throw InstanceError(msg.str());
    }

    const int n = instance.unit_count();
    const int horizon = instance.period_count();
    ScheduleEvaluation result;

    for (int t = 0; t < horizon; ++t) {
        double generated = 0.0;
        for (int i = 0; i < n; ++i) {
            const UnitSpec& u = instance.units[i];
            const double p = dispatch.at(i, t);
            if (commitment.on(i, t)) {
                result.operating_cost += u.cost_rate * p * instance.period_hours;
                generated += p;
                if (p < u.p_min - kPowerTolerance || p > u.p_max + kPowerTolerance) {
                    result.violations.push_back({ViolationKind::BoundBreach, i, t, p});
                }
            } else if (p > kPowerTolerance) {
                result.violations.push_back({ViolationKind::BoundBreach, i, t, p});
            }
        }
        const double gap = instance.demand[t] - generated;
        if (gap > kPowerTolerance) {
            result.demand_penalty += penalties.demand_coeff * gap;
            result.violations.push_back({ViolationKind::DemandShortfall, -1, t, gap});
        } else if (gap < -kPowerTolerance) {
            result.violations.push_back({ViolationKind::OverGeneration, -1, t, -gap});
        }
    }

    for (const auto& runs : segments(instance, commitment)) {
        for (const RunSegment& seg : runs) {
            if (seg.ordinal == static_cast<int>(runs.size()) - 1) continue;  // horizon-truncated
            const UnitSpec& u = instance.units[seg.unit];
            const int minimum = seg.on ? u.min_up : u.min_down;
            if (seg.effective_length < minimum) {
                const int missing = minimum - seg.effective_length;
                result.min_time_penalty += penalties.min_time_coeff * missing;
                result.violations.push_back(
                    {seg.on ? ViolationKind::ShortOnSegment : ViolationKind::ShortOffSegment,
                     seg.unit, seg.start, static_cast<double>(missing)});
            }
        }
    }

    result.total_cost = result.operating_cost + result.demand_penalty + result.min_time_penalty;
    result.feasible = result.violations.empty();
    return result;
}

}  // namespace ucs
