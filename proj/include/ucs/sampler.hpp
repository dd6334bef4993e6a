#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ucs/heuristic.hpp"

namespace ucs {

// Prompt handed to a sampler: the rendered text plus the parent program
// sources it was built from (the offline sampler mutates those directly).
struct PromptBundle {
    std::string text;
    std::vector<std::string> parent_sources;
};

struct SampleResult {
    std::string source;        // candidate program text
    double sampling_time_s = 0.0;
    int retries_used = 0;
};

class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Candidate producer contract. Implementations must be callable from
// several workers at once.
class Sampler {
public:
    virtual ~Sampler() = default;
    virtual SampleResult sample(const PromptBundle& prompt, std::mt19937_64& rng) = 0;
};

// Returns the text between <program> and </program> when both markers are
// present, otherwise the whole input trimmed.
std::string extract_program(const std::string& text);

enum class MutationKind {
    PerturbLiteral,   // literal -> literal * u, u uniform in [0.5, 2]
    SwapFeature,      // one feature identifier -> another
    WrapMinMax,       // subtree -> min/max(subtree, new literal)
    GraftSubtree,     // subtree -> random subtree of a second parent
};

// Applies one mutation of the given kind; returns the mutated source, or
// nothing when the kind does not apply to this parent (e.g. no literal to
// perturb).
std::optional<std::string> apply_mutation(const Expr& parent, const Expr* other_parent,
                                          MutationKind kind, std::mt19937_64& rng);

// Deterministic offline sampler: picks a parent uniformly from the prompt
// bundle and applies one random mutation. Falls back to the parent
// verbatim after 10 failed attempts. Throws SamplerError when no parent
// parses.
class MutationSampler : public Sampler {
public:
    SampleResult sample(const PromptBundle& prompt, std::mt19937_64& rng) override;
};

}  // namespace ucs
