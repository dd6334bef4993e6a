#pragma once

#include <memory>
#include <string>

#include "ucs/sampler.hpp"

namespace ucs {

inline constexpr const char* kApiKeyEnvVar = "UC_LLM_API_KEY";

struct LlmConfig {
    std::string endpoint;     // e.g. http://localhost:8080/v1
    std::string model;
    double temperature = 0.8;
    int max_tokens = 256;
    double timeout_s = 30.0;  // per request
    int retries = 2;          // after the first attempt
    int max_in_flight = 4;
    std::string api_key;      // resolved from UC_LLM_API_KEY when empty
    std::string system_prompt =
        "You evolve priority-rule expressions for power unit scheduling. "
        "Answer with exactly one expression between <program> and </program>.";
};

// Chat-completion client: POST {endpoint}/chat/completions with the
// prompt as the user message, bearer auth from UC_LLM_API_KEY. Transport
// errors, non-success statuses, and malformed bodies are each retried up
// to `retries` times, then surfaced as SamplerError. The candidate is the
// text between <program> delimiters, or the whole reply trimmed.
class LlmSampler : public Sampler {
public:
    explicit LlmSampler(LlmConfig config);
    ~LlmSampler() override;

    SampleResult sample(const PromptBundle& prompt, std::mt19937_64& rng) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ucs
