#include "ucs/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ucs/dispatch.hpp"
#include "ucs/evaluate.hpp"

namespace ucs {

// ---------------------------------------------------------------------------
// ProgramDatabase
// ---------------------------------------------------------------------------

ProgramDatabase::ProgramDatabase(int islands, int capacity)
    : islands_(static_cast<std::size_t>(islands)), capacity_(capacity) {}

bool ProgramDatabase::register_record(ProgramRecord record) {
    auto& island = islands_[record.island];
    for (const ProgramRecord& existing : island) {
        if (existing.normalized == record.normalized) return false;
    }
    if (static_cast<int>(island.size()) < capacity_) {
        island.push_back(std::move(record));
        return true;
    }
    auto worst = std::max_element(island.begin(), island.end(),
                                  [](const ProgramRecord& a, const ProgramRecord& b) {
                                      return a.score < b.score;
                                  });
    if (record.score < worst->score) {
        *worst = std::move(record);
        return true;
    }
    return false;
}

void ProgramDatabase::reset_island(int island) { islands_[island].clear(); }

int ProgramDatabase::worst_island() const {
    int worst = -1;
    double worst_best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < islands_.size(); ++i) {
        if (islands_[i].empty()) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const ProgramRecord& r : islands_[i]) best = std::min(best, r.score);
        if (best > worst_best) {
            worst_best = best;
            worst = static_cast<int>(i);
        }
    }
    return worst;
}

std::vector<const ProgramRecord*> ProgramDatabase::top_k(int island, int k) const {
    std::vector<const ProgramRecord*> records;
    for (const ProgramRecord& r : islands_[island]) records.push_back(&r);
    std::sort(records.begin(), records.end(), [](const ProgramRecord* a, const ProgramRecord* b) {
        return a->score != b->score ? a->score < b->score : a->normalized < b->normalized;
    });
    if (static_cast<int>(records.size()) > k) records.resize(k);
    std::reverse(records.begin(), records.end());  // worst-to-best
    return records;
}

const ProgramRecord* ProgramDatabase::best_overall() const {
    const ProgramRecord* best = nullptr;
    for (const auto& island : islands_) {
        for (const ProgramRecord& r : island) {
            if (!best || r.score < best->score) best = &r;
        }
    }
    return best;
}

std::vector<const ProgramRecord*> ProgramDatabase::all_records() const {
    std::vector<const ProgramRecord*> records;
    for (const auto& island : islands_) {
        for (const ProgramRecord& r : island) records.push_back(&r);
    }
    return records;
}

// ---------------------------------------------------------------------------
// Prompt
// ---------------------------------------------------------------------------

void validate_config(const SearchConfig& config) {
    if (config.islands < 1) throw std::invalid_argument("islands must be >= 1");
    if (config.island_capacity < 1) throw std::invalid_argument("island_capacity must be >= 1");
    if (config.prompt_k < 1) throw std::invalid_argument("prompt_k must be >= 1");
    if (config.prompt_k > config.island_capacity) {
        throw std::invalid_argument("prompt_k must be <= island_capacity");
    }
    if (config.time_limit_s <= 0.0) throw std::invalid_argument("time limit must be positive");
    if (config.eval_budget == 0) throw std::invalid_argument("eval budget must be positive");
    if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

PromptBundle build_prompt(const ProgramDatabase& db, int island, int k,
                          const UcInstance& instance) {
    std::ostringstream out;
    const auto [dmin, dmax] =
        std::minmax_element(instance.demand.begin(), instance.demand.end());
    out << "You are designing a priority rule for committing power generation units.\n"
        << "System: " << instance.unit_count() << " units, " << instance.period_count()
        << " periods, demand between " << *dmin << " and " << *dmax << " MW.\n\n"
        << "A priority rule is one arithmetic expression over these per-unit features:\n  ";
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        if (i) out << ", ";
        out << kFeatureNames[i];
    }
    out << "\nGrammar: decimal numbers, feature names, unary -, binary + - * /,\n"
           "min(a, b), max(a, b), abs(a), if(cond, a, b) with comparisons < <= > >= ==,\n"
           "and parentheses. No loops, no variables.\n"
           "Each period, free units are committed from highest priority downward until\n"
           "their combined capacity covers demand; lower total cost is better.\n\n";

    PromptBundle bundle;
    if (db.empty(island)) {
        out << "Start from this seed program:\n<program>" << kSeedProgram << "</program>\n";
        bundle.parent_sources.push_back(kSeedProgram);
    } else {
        out << "Previously scored programs, worst to best (lower score is better):\n";
        for (const ProgramRecord* record : db.top_k(island, k)) {
            out << "Program (score " << record->score << "):\n<program>"
                << record->program.source << "</program>\n";
            bundle.parent_sources.push_back(record->program.source);
        }
    }
    out << "\nWrite one improved program. Respond with exactly one expression wrapped in "
           "the same delimiters.\n";
    bundle.text = out.str();
    return bundle;
}

// ---------------------------------------------------------------------------
// Candidate evaluation
// ---------------------------------------------------------------------------

const char* discard_reason_name(DiscardReason reason) {
    switch (reason) {
        case DiscardReason::Syntax: return "syntax";
        case DiscardReason::NumericDomain: return "numeric-domain";
        case DiscardReason::BudgetExhausted: return "budget-exhausted";
        case DiscardReason::TimeLimit: return "time-limit";
    }
    return "unknown";
}

CandidateOutcome evaluate_candidate(const UcInstance& instance, const std::string& source,
                                    double time_limit_s, std::uint64_t eval_budget) {
    CandidateOutcome outcome;
    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    try {
        HeuristicProgram program = parse(source);
        CommitmentMatrix commitment = decode(instance, program, eval_budget);
        DispatchMatrix powers = dispatch(instance, commitment);
        ScheduleEvaluation evaluation = evaluate(instance, commitment, powers);
        outcome.evaluation_time_s = elapsed();
        if (outcome.evaluation_time_s > time_limit_s) {
            outcome.discard = DiscardReason::TimeLimit;
            outcome.detail = "evaluation exceeded time limit";
            return outcome;
        }
        if (!std::isfinite(evaluation.total_cost)) {
            outcome.discard = DiscardReason::NumericDomain;
            outcome.detail = "non-finite score";
            return outcome;
        }
        ProgramRecord record;
        record.normalized = pretty_print(program.ast);
        record.program = std::move(program);
        record.score = evaluation.total_cost;
        record.evaluation_time_s = outcome.evaluation_time_s;
        outcome.record = std::move(record);
    } catch (const HeuristicParseError& e) {
        outcome.evaluation_time_s = elapsed();
        outcome.discard = DiscardReason::Syntax;
        outcome.detail = e.what();
    } catch (const HeuristicEvalError& e) {
        outcome.evaluation_time_s = elapsed();
        outcome.discard = e.kind() == HeuristicEvalError::Kind::BudgetExhausted
                              ? DiscardReason::BudgetExhausted
                              : DiscardReason::NumericDomain;
        outcome.detail = e.what();
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// Evolution loop
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-sample generator: independent of thread interleaving.
std::mt19937_64 rng_for_sample(std::uint64_t seed, std::uint64_t sample) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ sample));
}

}  // namespace

SearchReport run_search(const UcInstance& instance, Sampler& sampler, const SearchConfig& config,
                        ProgramDatabase* db_out) {
    validate_config(config);
    validate_instance(instance);

    ProgramDatabase db(config.islands, config.island_capacity);
    std::mutex db_mutex;
    std::atomic<std::uint64_t> next_sample{0};
    // score achieved by each sample, +inf for discards; prefix-min gives
    // the trajectory
    std::vector<double> sample_scores(config.max_samples,
                                      std::numeric_limits<double>::infinity());
    std::atomic<std::uint64_t> accepted{0};
    double total_sampling = 0.0;
    double total_evaluation = 0.0;
    std::exception_ptr failure;

    auto worker = [&] {
        while (true) {
            const std::uint64_t s = next_sample.fetch_add(1);
            if (s >= config.max_samples) return;
            {
                std::lock_guard lock(db_mutex);
                if (failure) return;
            }

            const int island = static_cast<int>(s % config.islands);
            PromptBundle prompt;
            {
                std::lock_guard lock(db_mutex);
                if (config.reset_interval > 0 && s > 0 && s % config.reset_interval == 0) {
                    const int worst = db.worst_island();
                    if (worst >= 0) db.reset_island(worst);
                }
                prompt = build_prompt(db, island, config.prompt_k, instance);
            }

            std::mt19937_64 rng = rng_for_sample(config.rng_seed, s);
            SampleResult sample;
            try {
                sample = sampler.sample(prompt, rng);
            } catch (...) {
                std::lock_guard lock(db_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }

            CandidateOutcome outcome = evaluate_candidate(instance, sample.source,
                                                          config.time_limit_s, config.eval_budget);
            std::lock_guard lock(db_mutex);
            total_sampling += sample.sampling_time_s;
            total_evaluation += outcome.evaluation_time_s;
            if (outcome.accepted()) {
                ProgramRecord record = std::move(*outcome.record);
                record.sampling_time_s = sample.sampling_time_s;
                record.generation = s;
                record.island = island;
                sample_scores[s] = record.score;
                if (db.register_record(std::move(record))) accepted.fetch_add(1);
            }
        }
    };

    if (config.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(config.workers);
        for (int w = 0; w < config.workers; ++w) threads.emplace_back(worker);
        for (std::thread& thread : threads) thread.join();
    }
    if (failure) std::rethrow_exception(failure);

    SearchReport report;
    report.approach = "funsearch";
    report.seed = config.rng_seed;
    report.instance = instance;
    report.config = {{"max_samples", config.max_samples},
                     {"islands", config.islands},
                     {"island_capacity", config.island_capacity},
                     {"prompt_k", config.prompt_k},
                     {"time_limit_s", config.time_limit_s},
                     {"reset_interval", config.reset_interval},
                     {"eval_budget", config.eval_budget},
                     {"workers", config.workers}};

    report.trajectory.reserve(sample_scores.size());
    double best_so_far = std::numeric_limits<double>::infinity();
    for (double score : sample_scores) {
        best_so_far = std::min(best_so_far, score);
        report.trajectory.push_back(best_so_far);
    }

    if (const ProgramRecord* best = db.best_overall()) {
        BestSolution solution;
        solution.source = best->program.source;
        solution.commitment = decode(instance, best->program, config.eval_budget);
        solution.dispatch = dispatch(instance, solution.commitment);
        solution.evaluation = evaluate(instance, solution.commitment, solution.dispatch);
        report.best = std::move(solution);
    }

    report.timing.samples = config.max_samples;
    report.timing.accepted = accepted.load();
    report.timing.total_sampling_s = total_sampling;
    report.timing.total_evaluation_s = total_evaluation;
    if (config.max_samples > 0) {
        report.timing.mean_sampling_s = total_sampling / static_cast<double>(config.max_samples);
        report.timing.mean_evaluation_s =
            total_evaluation / static_cast<double>(config.max_samples);
    }
    if (db_out) *db_out = std::move(db);
    return report;
}

}  // namespace ucs
