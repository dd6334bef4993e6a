#include "ucs/ga.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "ucs/dispatch.hpp"
#include "ucs/evaluate.hpp"

namespace ucs {

void validate_config(const GaConfig& config, const UcInstance& instance) {
    validate_instance(instance);
    if (config.population < 2) throw std::invalid_argument("population must be >= 2");
    if (config.generations < 0) throw std::invalid_argument("generations must be >= 0");
    if (config.tournament < 1) throw std::invalid_argument("tournament size must be >= 1");
    if (config.crossover_prob < 0.0 || config.crossover_prob > 1.0) {
        throw std::invalid_argument("crossover probability must be in [0, 1]");
    }
    if (config.mutation_prob && (*config.mutation_prob < 0.0 || *config.mutation_prob > 1.0)) {
        throw std::invalid_argument("mutation probability must be in [0, 1]");
    }
    if (config.elitism < 0 || config.elitism >= config.population) {
        throw std::invalid_argument("elitism must be in [0, population)");
    }
    if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
}

CommitmentMatrix repair(const UcInstance& instance, const CommitmentMatrix& commitment) {
    validate_commitment_shape(instance, commitment);
    CommitmentMatrix fixed = commitment;
    const int horizon = instance.period_count();
    for (int i = 0; i < instance.unit_count(); ++i) {
        const UnitSpec& u = instance.units[i];
        bool state = u.initial_state;
        int duration = u.initial_duration;
        for (int t = 0; t < horizon; ++t) {
            bool wanted = fixed.on(i, t);
            if (wanted != state && duration < (state ? u.min_up : u.min_down)) {
                wanted = state;  // too early to switch
                fixed.at(i, t) = state ? 1 : 0;
            }
            if (wanted == state) {
                ++duration;
            } else {
                state = wanted;
                duration = 1;
            }
        }
    }
    return fixed;
}

namespace {

struct Individual {
    CommitmentMatrix genome;
    double score = std::numeric_limits<double>::infinity();
};

double evaluate_genome(const UcInstance& instance, const CommitmentMatrix& genome) {
    return evaluate(instance, genome, dispatch(instance, genome)).total_cost;
}

}  // namespace

SearchReport run_ga(const UcInstance& instance, const GaConfig& config) {
    validate_config(config, instance);
    const int n = instance.unit_count();
    const int horizon = instance.period_count();
    const std::size_t genome_bits = static_cast<std::size_t>(n) * horizon;
    const double mutation_prob =
        config.mutation_prob.value_or(1.0 / static_cast<double>(genome_bits));

    std::mt19937_64 rng(config.rng_seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const double capacity = instance.capacity_sum();

    double total_production = 0.0;  // selection + variation + repair
    double total_evaluation = 0.0;
    std::vector<double> eval_scores;  // score per evaluation, in order
    using clock = std::chrono::steady_clock;
    auto seconds_since = [](clock::time_point start) {
        return std::chrono::duration<double>(clock::now() - start).count();
    };

    // Scores are stored by index, so the fan-out does not disturb
    // determinism; only timing varies with the worker count.
    auto evaluate_all = [&](std::vector<Individual>& group) {
        const auto started = clock::now();
        if (config.workers > 1 && group.size() > 1) {
            std::atomic<std::size_t> cursor{0};
            auto drain = [&] {
                for (std::size_t k = cursor.fetch_add(1); k < group.size();
                     k = cursor.fetch_add(1)) {
                    group[k].score = evaluate_genome(instance, group[k].genome);
                }
            };
            std::vector<std::thread> threads;
            const int thread_count = std::min<int>(config.workers, static_cast<int>(group.size()));
            threads.reserve(thread_count);
            for (int w = 0; w < thread_count; ++w) threads.emplace_back(drain);
            for (std::thread& thread : threads) thread.join();
        } else {
            for (Individual& ind : group) ind.score = evaluate_genome(instance, ind.genome);
        }
        for (const Individual& ind : group) eval_scores.push_back(ind.score);
        total_evaluation += seconds_since(started);
    };

    // Initial population: bits biased by demand coverage, then repaired.
    std::vector<Individual> population(config.population);
    {
        const auto started = clock::now();
        for (Individual& ind : population) {
            CommitmentMatrix genome(n, horizon);
            for (int t = 0; t < horizon; ++t) {
                const double p_on = capacity > 0.0 ? std::min(1.0, instance.demand[t] / capacity)
                                                   : 0.0;
                for (int i = 0; i < n; ++i) {
                    genome.at(i, t) = coin(rng) < p_on ? 1 : 0;
                }
            }
            ind.genome = repair(instance, genome);
        }
        total_production += seconds_since(started);
    }
    evaluate_all(population);

    auto by_score = [](const Individual& a, const Individual& b) { return a.score < b.score; };

    auto tournament_pick = [&]() -> const Individual& {
        std::uniform_int_distribution<int> dist(0, config.population - 1);
        const Individual* best = &population[dist(rng)];
        for (int round = 1; round < config.tournament; ++round) {
            const Individual& other = population[dist(rng)];
            if (other.score < best->score) best = &other;
        }
        return *best;
    };

    for (int gen = 0; gen < config.generations; ++gen) {
        const auto started = clock::now();
        std::vector<Individual> next;
        next.reserve(population.size());

        std::vector<const Individual*> ranked;
        for (const Individual& ind : population) ranked.push_back(&ind);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](const Individual* a, const Individual* b) { return by_score(*a, *b); });
        for (int e = 0; e < config.elitism; ++e) next.push_back(*ranked[e]);

        std::vector<Individual> offspring;
        while (next.size() + offspring.size() < population.size()) {
            CommitmentMatrix a = tournament_pick().genome;
            CommitmentMatrix b = tournament_pick().genome;
            if (coin(rng) < config.crossover_prob && genome_bits >= 2) {
                std::uniform_int_distribution<std::size_t> cut_dist(1, genome_bits - 1);
                const std::size_t cut = cut_dist(rng);
                for (std::size_t k = cut; k < genome_bits; ++k) std::swap(a.values[k], b.values[k]);
            }
            for (CommitmentMatrix* genome : {&a, &b}) {
                for (std::size_t k = 0; k < genome_bits; ++k) {
                    if (coin(rng) < mutation_prob) genome->values[k] ^= 1;
                }
                Individual child;
                child.genome = repair(instance, *genome);
                offspring.push_back(std::move(child));
                if (next.size() + offspring.size() >= population.size()) break;
            }
        }
        total_production += seconds_since(started);

        evaluate_all(offspring);
        for (Individual& child : offspring) next.push_back(std::move(child));
        population = std::move(next);
    }

    const Individual& best =
        *std::min_element(population.begin(), population.end(), by_score);

    SearchReport report;
    report.approach = "ga";
    report.seed = config.rng_seed;
    report.instance = instance;
    report.config = {{"population", config.population},
                     {"generations", config.generations},
                     {"tournament", config.tournament},
                     {"crossover_prob", config.crossover_prob},
                     {"mutation_prob", mutation_prob},
                     {"elitism", config.elitism},
                     {"workers", config.workers}};

    BestSolution solution;
    solution.commitment = best.genome;
    solution.dispatch = dispatch(instance, best.genome);
    solution.evaluation = evaluate(instance, best.genome, solution.dispatch);
    report.best = std::move(solution);

    report.trajectory.reserve(eval_scores.size());
    double best_so_far = std::numeric_limits<double>::infinity();
    for (double score : eval_scores) {
        best_so_far = std::min(best_so_far, score);
        report.trajectory.push_back(best_so_far);
    }

    report.timing.samples = eval_scores.size();
    report.timing.accepted = eval_scores.size();
    report.timing.total_sampling_s = total_production;
    report.timing.total_evaluation_s = total_evaluation;
    if (!eval_scores.empty()) {
        const auto count = static_cast<double>(eval_scores.size());
        report.timing.mean_sampling_s = total_production / count;
        report.timing.mean_evaluation_s = total_evaluation / count;
    }
    return report;
}

}  // namespace ucs
