#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "binv/raster.hpp"
#include "binv/resolution.hpp"

namespace binv {

// Suffix appended to every claim when the certainty policy is on.
inline constexpr const char* kCertaintySuffix = "if uncertain, answer False";

struct ClaimQuery {
    std::string claim_text;
    std::vector<const RasterImage*> images;
    bool certainty_policy = false;
    double temperature = 0.2;
    // Simulator-only context: hidden ground truth of the claim and a stable
    // per-candidate index for its verdict stream.
    std::optional<bool> hidden_truth;
    int candidate_index = 0;
    int repeat_index = 0;  // distinguishes repeats in the cache key

    // Claim text with the certainty suffix applied when configured.
    std::string rendered_claim() const;
};

struct McqQuery {
    std::string stem;
    std::vector<std::string> options;  // labeled A, B, C, ... in order
    std::vector<const RasterImage*> images;
    double temperature = 0.2;
    std::optional<std::size_t> correct_index;  // simulator-only hidden truth
    int stream_id = -1;  // simulator verdict stream for this query
    int repeat_index = 0;

    // Full prompt: stem plus lettered option lines.
    std::string rendered() const;
};

struct VerifyResult {
    Verdict verdict = Verdict::Unparseable;
    std::string raw;
};

struct McqResult {
    std::size_t choice = 0;
    std::string raw;
};

struct BackendError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class VerifierBackend {
public:
    virtual ~VerifierBackend() = default;
    virtual VerifyResult verify(const ClaimQuery& query) = 0;
    virtual McqResult answer_mcq(const McqQuery& query) = 0;
};

// Case-insensitive verdict classification: first token wins, otherwise a reply
// containing exactly one of "true"/"false" maps to it.
Verdict parse_verdict(const std::string& raw);

// Maps a reply like "Answer: B" or a verbatim option text to an option index.
std::optional<std::size_t> parse_mcq_choice(const std::string& raw,
                                            const std::vector<std::string>& options);

}  // namespace binv
