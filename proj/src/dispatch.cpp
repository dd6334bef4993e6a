#include "ucs/dispatch.hpp"

#include <algorithm>

namespace ucs {

DispatchMatrix dispatch(const UcInstance& instance, const CommitmentMatrix& commitment) {
    validate_commitment_shape(instance, commitment);
    const int n = instance.unit_count();
    const int horizon = instance.period_count();
    DispatchMatrix out(n, horizon);

    std::vector<int> committed;
    committed.reserve(n);
    for (int t = 0; t < horizon; ++t) {
        committed.clear();
        double min_sum = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!commitment.on(i, t)) continue;
            committed.push_back(i);
            out.at(i, t) = instance.units[i].p_min;
            min_sum += instance.units[i].p_min;
        }
        double residual = instance.demand[t] - min_sum;
        if (residual <= 0.0 || committed.empty()) continue;

        std::sort(committed.begin(), committed.end(), [&](int a, int b) {
            const double ra = instance.units[a].cost_rate;
            const double rb = instance.units[b].cost_rate;
            return ra != rb ? ra < rb : a < b;
        });
        for (int i : committed) {
            const double headroom = instance.units[i].p_max - instance.units[i].p_min;
            const double take = std::min(headroom, residual);
            out.at(i, t) += take;
            residual -= take;
            if (residual <= 0.0) break;
        }
    }
    return out;
}

std::vector<double> total_generation(const DispatchMatrix& dispatch) {
    std::vector<double> totals(dispatch.periods, 0.0);
    for (int t = 0; t < dispatch.periods; ++t) {
        for (int i = 0; i < dispatch.units; ++i) totals[t] += dispatch.at(i, t);
    }
    return totals;
}

}  // namespace ucs
