#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

#include "binv/verifier.hpp"

namespace binv {

// Fixture-driven backend: exact claim text -> canned reply.
class ScriptedMockBackend : public VerifierBackend {
public:
    void add_claim_reply(std::string claim_text, std::string reply);
    void add_mcq_reply(std::string stem, std::string reply);
    // Fallback reply when a stem has no dedicated fixture.
    void set_default_mcq_reply(std::string reply);

    VerifyResult verify(const ClaimQuery& query) override;
    McqResult answer_mcq(const McqQuery& query) override;

private:
    std::unordered_map<std::string, std::string> claim_replies_;
    std::unordered_map<std::string, std::string> mcq_replies_;
    std::optional<std::string> default_mcq_reply_;
};

// Replays canned replies in query order: one claim reply per verification
// query, one MCQ reply per fallback. Suits fixtures where claims within an
// item share text (REC's per-box claims differ only in the rendered image).
class SequencedMockBackend : public VerifierBackend {
public:
    void push_claim_reply(std::string reply);
    void push_mcq_reply(std::string reply);

    VerifyResult verify(const ClaimQuery& query) override;
    McqResult answer_mcq(const McqQuery& query) override;

    bool exhausted() const;

private:
    std::mutex mutex_;
    std::vector<std::string> claim_replies_;
    std::vector<std::string> mcq_replies_;
    std::size_t next_claim_ = 0;
    std::size_t next_mcq_ = 0;
};

struct SimulatorParams {
    double q1 = 1.0;  // P(True | claim true)
    double q2 = 0.0;  // P(True | claim false)
    double p = 1.0;   // P(MCQ picks the correct option)
    std::uint64_t seed = 0;
};

// Stochastic verifier. Verdicts are drawn from one pre-seeded stream per
// candidate index, so a run is reproducible regardless of query scheduling.
class SimulatorBackend : public VerifierBackend {
public:
    explicit SimulatorBackend(SimulatorParams params);

    VerifyResult verify(const ClaimQuery& query) override;
    McqResult answer_mcq(const McqQuery& query) override;

    const SimulatorParams& params() const { return params_; }

private:
    double draw(int stream_id);

    SimulatorParams params_;
    std::mutex mutex_;
    std::map<int, std::mt19937_64> streams_;  // keyed by candidate index (-1 = MCQ)
};

}  // namespace binv
