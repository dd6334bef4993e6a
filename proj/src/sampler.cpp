#include "ucs/sampler.hpp"

#include <chrono>
#include <cmath>

namespace ucs {

std::string extract_program(const std::string& text) {
    static const std::string open = "<program>";
    static const std::string close = "</program>";
    auto trim = [](const std::string& s) {
        std::size_t begin = s.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return std::string();
        std::size_t end = s.find_last_not_of(" \t\r\n");
        return s.substr(begin, end - begin + 1);
    };
    const std::size_t start = text.find(open);
    if (start != std::string::npos) {
        const std::size_t stop = text.find(close, start + open.size());
        if (stop != std::string::npos) {
            return trim(text.substr(start + open.size(), stop - start - open.size()));
        }
    }
    return trim(text);
}

namespace {

void collect_nodes(Expr& expr, std::vector<Expr*>& out) {
    out.push_back(&expr);
    for (Expr& child : expr.children) collect_nodes(child, out);
}

void collect_of_kind(Expr& expr, ExprKind kind, std::vector<Expr*>& out) {
    if (expr.kind == kind) out.push_back(&expr);
    for (Expr& child : expr.children) collect_of_kind(child, kind, out);
}

template <typename T>
T& pick(std::vector<T>& items, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
    return items[dist(rng)];
}

double fresh_literal(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    return std::round(dist(rng) * 1000.0) / 1000.0;
}

}  // namespace

std::optional<std::string> apply_mutation(const Expr& parent, const Expr* other_parent,
                                          MutationKind kind, std::mt19937_64& rng) {
    Expr work = parent;
    switch (kind) {
        case MutationKind::PerturbLiteral: {
            std::vector<Expr*> literals;
            collect_of_kind(work, ExprKind::Number, literals);
            if (literals.empty()) return std::nullopt;
            std::uniform_real_distribution<double> factor(0.5, 2.0);
            Expr* target = pick(literals, rng);
            target->number *= factor(rng);
            if (!std::isfinite(target->number)) return std::nullopt;
            break;
        }
        case MutationKind::SwapFeature: {
            std::vector<Expr*> refs;
            collect_of_kind(work, ExprKind::FeatureRef, refs);
            if (refs.empty()) return std::nullopt;
            Expr* target = pick(refs, rng);
            std::uniform_int_distribution<int> dist(0, static_cast<int>(kFeatureNames.size()) - 2);
            int choice = dist(rng);
            if (choice >= static_cast<int>(target->feature)) ++choice;  // skip the current one
            target->feature = static_cast<Feature>(choice);
            break;
        }
        case MutationKind::WrapMinMax: {
            std::vector<Expr*> nodes;
            collect_nodes(work, nodes);
            Expr* target = pick(nodes, rng);
            Expr literal;
            literal.kind = ExprKind::Number;
            literal.number = fresh_literal(rng);
            Expr wrapped;
            wrapped.kind = std::uniform_int_distribution<int>(0, 1)(rng) ? ExprKind::Max
                                                                         : ExprKind::Min;
            wrapped.children.push_back(std::move(*target));
            wrapped.children.push_back(std::move(literal));
            *target = std::move(wrapped);
            break;
        }
        case MutationKind::GraftSubtree: {
            if (other_parent == nullptr) return std::nullopt;
            Expr donor = *other_parent;
            std::vector<Expr*> donor_nodes;
            collect_nodes(donor, donor_nodes);
            std::vector<Expr*> nodes;
            collect_nodes(work, nodes);
            *pick(nodes, rng) = *pick(donor_nodes, rng);
            break;
        }
    }
    if (node_count(work) > kMaxProgramNodes) return std::nullopt;
    std::string source = pretty_print(work);
    try {
        parse(source);
    } catch (const HeuristicParseError&) {
        return std::nullopt;
    }
    return source;
}

SampleResult MutationSampler::sample(const PromptBundle& prompt, std::mt19937_64& rng) {
    const auto started = std::chrono::steady_clock::now();

    std::vector<HeuristicProgram> parents;
    for (const std::string& source : prompt.parent_sources) {
        try {
            parents.push_back(parse(source));
        } catch (const HeuristicParseError&) {
        }
    }
    if (parents.empty()) throw SamplerError("mutation sampler has no parseable parent program");

    std::string result;
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::uniform_int_distribution<std::size_t> parent_dist(0, parents.size() - 1);
        const std::size_t parent_index = parent_dist(rng);
        const HeuristicProgram& parent = parents[parent_index];
        result = parent.source;

        std::vector<MutationKind> applicable = {MutationKind::SwapFeature,
                                                MutationKind::WrapMinMax,
                                                MutationKind::PerturbLiteral};
        if (parents.size() > 1) applicable.push_back(MutationKind::GraftSubtree);
        const MutationKind kind = pick(applicable, rng);

        const Expr* other = nullptr;
        if (kind == MutationKind::GraftSubtree) {
            std::uniform_int_distribution<std::size_t> other_dist(0, parents.size() - 2);
            std::size_t other_index = other_dist(rng);
            if (other_index >= parent_index) ++other_index;
            other = &parents[other_index].ast;
        }
        if (auto mutated = apply_mutation(parent.ast, other, kind, rng)) {
            result = std::move(*mutated);
            break;
        }
    }

    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    return SampleResult{std::move(result), elapsed.count(), 0};
}

}  // namespace ucs
