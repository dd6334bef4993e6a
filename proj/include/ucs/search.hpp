#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ucs/heuristic.hpp"
#include "ucs/report.hpp"
#include "ucs/sampler.hpp"

namespace ucs {

// A scored survivor in the program database. Scores are always finite;
// errored or timed-out candidates never get this far.
struct ProgramRecord {
    HeuristicProgram program;
    std::string normalized;  // pretty-printed AST, the dedup key
    double score = 0.0;      // total cost, lower is better
    double evaluation_time_s = 0.0;
    double sampling_time_s = 0.0;
    std::uint64_t generation = 0;  // sample index that produced it
    int island = 0;
};

// Island-partitioned population of surviving programs. Each island holds
// at most `capacity` records, deduplicated by normalized source; a full
// island only admits a candidate that beats its current worst.
class ProgramDatabase {
public:
    ProgramDatabase(int islands, int capacity);

    bool register_record(ProgramRecord record);
    void reset_island(int island);
    // Worst best-score island among the non-empty ones; -1 if all empty.
    int worst_island() const;

    int island_count() const { return static_cast<int>(islands_.size()); }
    int capacity() const { return capacity_; }
    std::size_t size(int island) const { return islands_[island].size(); }
    bool empty(int island) const { return islands_[island].empty(); }

    // k best records of an island, ordered worst-to-best.
    std::vector<const ProgramRecord*> top_k(int island, int k) const;
    const ProgramRecord* best_overall() const;
    std::vector<const ProgramRecord*> all_records() const;

private:
    std::vector<std::vector<ProgramRecord>> islands_;
    int capacity_;
};

inline constexpr const char* kSeedProgram = "-cost_rate";

struct SearchConfig {
    std::uint64_t max_samples = 500;
    int islands = 4;
    int island_capacity = 64;
    int prompt_k = 2;            // programs shown per prompt
    double time_limit_s = 5.0;   // per-candidate evaluation wall-clock limit
    std::uint64_t reset_interval = 0;  // samples between worst-island resets, 0 = disabled
    std::uint64_t eval_budget = kDefaultDecodeBudget;
    std::uint64_t rng_seed = 0;
    int workers = 1;
};

void validate_config(const SearchConfig& config);

// Renders the evolution prompt for one island: instance summary, the
// expression grammar and feature list, the island's prompt_k best
// programs worst-to-best with scores (or the seed program when the island
// is empty), and the instruction to answer with one program between
// <program> delimiters.
PromptBundle build_prompt(const ProgramDatabase& db, int island, int k,
                          const UcInstance& instance);

enum class DiscardReason { Syntax, NumericDomain, BudgetExhausted, TimeLimit };

const char* discard_reason_name(DiscardReason reason);

// Outcome of scoring one candidate source: either an accepted payload or
// a discard reason. Discards are ordinary values, not errors.
struct CandidateOutcome {
    std::optional<ProgramRecord> record;  // sampling_time/generation/island filled by caller
    std::optional<DiscardReason> discard;
    std::string detail;
    double evaluation_time_s = 0.0;

    bool accepted() const { return record.has_value(); }
};

// parse -> decode -> dispatch -> evaluate, wall-clock timed.
CandidateOutcome evaluate_candidate(const UcInstance& instance, const std::string& source,
                                    double time_limit_s,
                                    std::uint64_t eval_budget = kDefaultDecodeBudget);

// The evolution loop: round-robin over islands, prompt, sample, evaluate,
// register survivors; returns the report with the best program, its
// schedule, the best-so-far trajectory, and timing aggregates. Runs on
// `config.workers` threads; a single worker is fully deterministic for
// a given seed and offline sampler. `db_out`, when given, receives the
// final database.
SearchReport run_search(const UcInstance& instance, Sampler& sampler, const SearchConfig& config,
                        ProgramDatabase* db_out = nullptr);

}  // namespace ucs
