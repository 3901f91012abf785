#pragma once

#include <cstdint>
#include <mutex>
#include <string>

#include "binv/verifier.hpp"

namespace binv {

struct HttpBackendConfig {
    std::string endpoint_url;           // e.g. http://host:port/v1/chat/completions
    std::string model = "default";
    std::string auth_env_var = "BINV_API_KEY";  // bearer token read from env
    std::string cache_dir;              // empty = caching off
    std::string log_path;               // empty = logging off (JSONL)
    int timeout_seconds = 120;
};

// Chat-style JSON-over-HTTP verifier: one text part plus N base64-encoded PNG
// image parts per request. Responses are cached on disk keyed by
// (endpoint, prompt, image bytes, temperature, repeat index); cache hits
// return byte-identical raw text without a network call.
class HttpBackend : public VerifierBackend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    VerifyResult verify(const ClaimQuery& query) override;
    McqResult answer_mcq(const McqQuery& query) override;

    // Network round-trips actually performed (cache misses).
    std::int64_t network_calls() const { return network_calls_; }

private:
    std::string complete(const std::string& prompt,
                         const std::vector<const RasterImage*>& images,
                         double temperature, int repeat_index);
    std::string cache_key(const std::string& prompt,
                          const std::vector<const RasterImage*>& images,
                          double temperature, int repeat_index) const;
    void log_interaction(const std::string& prompt, const std::string& reply,
                         bool cached);

    HttpBackendConfig config_;
    std::mutex log_mutex_;
    std::int64_t network_calls_ = 0;
};

std::string base64_encode(const std::uint8_t* data, std::size_t size);

}  // namespace binv
