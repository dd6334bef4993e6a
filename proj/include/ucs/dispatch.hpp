#pragma once

#include <vector>

#include "ucs/instance.hpp"

namespace ucs {

// N x T grid of output powers, unit-major. Zero wherever the unit is off,
// within [p_min, p_max] wherever it is on.
struct DispatchMatrix {
    int units = 0;
    int periods = 0;
    std::vector<double> powers;

    DispatchMatrix() = default;
    DispatchMatrix(int n, int t)
        : units(n), periods(t), powers(static_cast<std::size_t>(n) * t, 0.0) {}

    double& at(int unit, int period) {
        return powers[static_cast<std::size_t>(unit) * periods + period];
    }
    double at(int unit, int period) const {
        return powers[static_cast<std::size_t>(unit) * periods + period];
    }

    bool operator==(const DispatchMatrix&) const = default;
};

// Merit-order dispatch, each period independently: every committed unit
// runs at least p_min, the remaining demand is filled cheapest-first up
// to p_max (ties by ascending unit id). Total output lands on D_t when
// the committed band allows it, otherwise on the nearest band edge
// (forced over-generation below sum p_min, shortfall above sum p_max).
DispatchMatrix dispatch(const UcInstance& instance, const CommitmentMatrix& commitment);

// Per-period column sums of a dispatch.
std::vector<double> total_generation(const DispatchMatrix& dispatch);

}  // namespace ucs
