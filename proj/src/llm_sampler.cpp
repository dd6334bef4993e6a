#include "ucs/llm.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <semaphore>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"

namespace ucs {

namespace {

// Splits "http://host:port/base" into client origin and base path.
struct EndpointParts {
    std::string origin;
    std::string base_path;
};

EndpointParts split_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw SamplerError("endpoint must include a scheme, e.g. http://host:port");
    }
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, ""};
    std::string base = endpoint.substr(path_start);
    while (!base.empty() && base.back() == '/') base.pop_back();
    return {endpoint.substr(0, path_start), std::move(base)};
}

}  // namespace

struct LlmSampler::Impl {
    LlmConfig config;
    EndpointParts endpoint;
    std::counting_semaphore<> in_flight;

    explicit Impl(LlmConfig cfg)
        : config(std::move(cfg)),
          endpoint(split_endpoint(config.endpoint)),
          in_flight(std::max(1, config.max_in_flight)) {
        if (config.api_key.empty()) {
            if (const char* key = std::getenv(kApiKeyEnvVar)) config.api_key = key;
        }
    }

    httplib::Client make_client() const {
        httplib::Client client(endpoint.origin);
        const auto whole = std::chrono::duration<double>(config.timeout_s);
        const auto secs = std::chrono::duration_cast<std::chrono::seconds>(whole);
        const auto usecs =
            std::chrono::duration_cast<std::chrono::microseconds>(whole - secs);
        client.set_connection_timeout(secs.count(), usecs.count());
        client.set_read_timeout(secs.count(), usecs.count());
        client.set_write_timeout(secs.count(), usecs.count());
        return client;
    }

    SampleResult request(const std::string& prompt) {
        nlohmann::json body = {{"model", config.model},
                               {"messages",
                                {{{"role", "system"}, {"content", config.system_prompt}},
                                 {{"role", "user"}, {"content", prompt}}}},
                               {"temperature", config.temperature},
                               {"max_tokens", config.max_tokens}};
        httplib::Headers headers;
        if (!config.api_key.empty()) {
            headers.emplace("Authorization", "Bearer " + config.api_key);
        }
        const std::string payload = body.dump();
        const std::string path = endpoint.base_path + "/chat/completions";

        const auto started = std::chrono::steady_clock::now();
        std::string last_error;
        for (int attempt = 0; attempt <= config.retries; ++attempt) {
            httplib::Client client = make_client();
            httplib::Result res = client.Post(path, headers, payload, "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status < 200 || res->status >= 300) {
                last_error = "HTTP status " + std::to_string(res->status);
                continue;
            }
            std::string content;
            try {
                const nlohmann::json reply = nlohmann::json::parse(res->body);
                content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const std::exception& e) {
                last_error = std::string("malformed response body: ") + e.what();
                continue;
            }
            const std::chrono::duration<double> elapsed =
                std::chrono::steady_clock::now() - started;
            return SampleResult{extract_program(content), elapsed.count(), attempt};
        }
        throw SamplerError("LLM request to " + config.endpoint + " failed after " +
                           std::to_string(config.retries + 1) + " attempts: " + last_error);
    }
};

LlmSampler::LlmSampler(LlmConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

LlmSampler::~LlmSampler() = default;

SampleResult LlmSampler::sample(const PromptBundle& prompt, std::mt19937_64&) {
    impl_->in_flight.acquire();
    try {
        SampleResult result = impl_->request(prompt.text);
        impl_->in_flight.release();
        return result;
    } catch (...) {
        impl_->in_flight.release();
        throw;
    }
}

}  // namespace ucs
