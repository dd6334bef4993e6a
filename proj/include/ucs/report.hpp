#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ucs/dispatch.hpp"
#include "ucs/evaluate.hpp"
#include "ucs/instance.hpp"

namespace ucs {

// Best solution found by a run. `source` is empty for approaches that do
// not evolve program text (the GA).
struct BestSolution {
    std::optional<std::string> source;
    ScheduleEvaluation evaluation;
    CommitmentMatrix commitment;
    DispatchMatrix dispatch;
};

struct TimingAggregates {
    std::uint64_t samples = 0;   // candidates drawn
    std::uint64_t accepted = 0;  // candidates that entered the database / population
    double mean_sampling_s = 0.0;
    double mean_evaluation_s = 0.0;
    // Run totals, kept out of the serialized report (they are wall-clock
    // noise); the compare table prints them.
    double total_sampling_s = 0.0;
    double total_evaluation_s = 0.0;
};

struct SearchReport {
    std::string approach;  // "funsearch" | "ga" | "oracle"
    std::uint64_t seed = 0;
    nlohmann::json config;  // echo of the run configuration
    std::string instance_path;
    UcInstance instance;
    std::optional<BestSolution> best;
    std::vector<double> trajectory;  // best-so-far score per sample index
    TimingAggregates timing;
};

// Serialized with timing means quantized to milliseconds, so reports of
// seeded offline runs are byte-stable.
nlohmann::json report_to_json(const SearchReport& report);
std::string report_to_text(const SearchReport& report);
void write_report(const SearchReport& report, const std::filesystem::path& path);
nlohmann::json load_report_json(const std::filesystem::path& path);

// Heatmap data for a report: the 0/1 commitment grid (one row per unit,
// one column per period) followed by per-period demand and total
// generation rows. Throws InstanceError on a report without a solution.
std::string heatmap_text(const nlohmann::json& report);

}  // namespace ucs
