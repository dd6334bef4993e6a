#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucs {

// One generating unit. Output bounds apply whenever the unit is on.
struct UnitSpec {
    int id = 0;
    double p_min = 0.0;          // MW, lower output bound while on
    double p_max = 0.0;          // MW, upper output bound while on
    double cost_rate = 0.0;      // $/MWh while generating
    int min_up = 1;              // minimum consecutive on-periods
    int min_down = 1;            // minimum consecutive off-periods
    bool initial_state = false;  // state before period 0
    int initial_duration = 1;    // periods the initial state has already persisted

    bool operator==(const UnitSpec&) const = default;
};

// The problem input: N units, T demand periods.
struct UcInstance {
    std::vector<UnitSpec> units;
    std::vector<double> demand;  // MW per period
    double period_hours = 1.0;

    int unit_count() const { return static_cast<int>(units.size()); }
    int period_count() const { return static_cast<int>(demand.size()); }
    double capacity_sum() const;  // sum of p_max over all units

    bool operator==(const UcInstance&) const = default;
};

// N x T grid of on/off states, unit-major. Entries must be 0 or 1;
// anything else is caught by validate_commitment_shape.
struct CommitmentMatrix {
    int units = 0;
    int periods = 0;
    std::vector<std::uint8_t> values;

    CommitmentMatrix() = default;
    CommitmentMatrix(int n, int t)
        : units(n), periods(t), values(static_cast<std::size_t>(n) * t, 0) {}

    std::uint8_t& at(int unit, int period) {
        return values[static_cast<std::size_t>(unit) * periods + period];
    }
    std::uint8_t at(int unit, int period) const {
        return values[static_cast<std::size_t>(unit) * periods + period];
    }
    bool on(int unit, int period) const { return at(unit, period) != 0; }

    bool operator==(const CommitmentMatrix&) const = default;
};

class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Checks every UnitSpec/UcInstance invariant; throws InstanceError naming
// the first violation.
void validate_instance(const UcInstance& instance);

// Throws InstanceError on shape mismatch or a non-binary entry.
void validate_commitment_shape(const UcInstance& instance, const CommitmentMatrix& commitment);

// Instance file format: one JSON document with fields
//   version, period_hours, demand: [..],
//   units: [{id, p_min, p_max, cost_rate, min_up, min_down,
//            initial_state, initial_duration}, ..]
// Unknown keys are rejected. initial_state/initial_duration may be
// omitted per unit and default to off for min_down periods.
UcInstance parse_instance_json(const std::string& text);
std::string instance_to_json(const UcInstance& instance);

UcInstance load_instance(const std::filesystem::path& path);
void store_instance(const UcInstance& instance, const std::filesystem::path& path);

}  // namespace ucs
