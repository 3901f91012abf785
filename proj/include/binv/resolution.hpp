#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "binv/candidate.hpp"

namespace binv {

enum class Verdict { True, False_, Unparseable };

// One verification round: per-candidate verdicts over the current shortlist.
struct BooleanPattern {
    // (candidate id, verdict) in shortlist order. Unparseable replies are
    // recorded as-is here; resolution maps them to False.
    std::vector<std::pair<std::string, Verdict>> verdicts;
    int round = 0;
};

struct ResolutionConfig {
    int max_retries = 0;  // experiments disable retries
    bool certainty_policy = false;
};

enum class ResolutionAction { Select, ReRunBinary, FallbackMcq };
enum class ResolutionBranch { SingleTrue, MultipleTrue, AllFalse };

struct ResolutionOutcome {
    ResolutionAction action;
    ResolutionBranch branch;
    // Select: exactly one id. ReRunBinary/FallbackMcq: non-empty subset of the
    // current shortlist.
    std::vector<std::string> ids;
    bool parse_failure = false;  // some verdict in the final pattern was unparseable
};

// Deterministic pattern-to-decision rule:
//   exactly one True  -> Select it
//   several True      -> re-run on the True subset, or final MCQ over it once
//                        retries are exhausted
//   zero True         -> re-run on everything, or final MCQ over all options
// Unparseable verdicts count as False.
ResolutionOutcome resolve(const BooleanPattern& pattern,
                          const std::vector<Candidate>& shortlist,
                          const ResolutionConfig& config);

// Verifier surface run_protocol needs: a True/False answer per claim and a
// single-shot MCQ choice over a candidate subset.
struct ProtocolVerifier {
    // Returns the verdict for one candidate's claim. round is the retry count.
    std::function<Verdict(const Candidate&, int round)> verify;
    // Returns an index into the passed subset.
    std::function<std::size_t(const std::vector<Candidate>&)> answer_mcq;
};

struct ProtocolTrace {
    std::vector<BooleanPattern> patterns;
    bool mcq_issued = false;
    std::vector<std::string> mcq_options;  // ids offered to the fallback MCQ
    bool parse_failure = false;
    int verify_queries = 0;
    int mcq_queries = 0;
};

struct ProtocolResult {
    std::string chosen_id;
    ResolutionBranch branch;
    ProtocolTrace trace;
};

// Drives resolve() over successive rounds until a terminal Select, or executes
// the fallback MCQ. The chosen id is always a member of the original shortlist.
ProtocolResult run_protocol(const std::vector<Candidate>& shortlist,
                            const ProtocolVerifier& verifier,
                            const ResolutionConfig& config);

const char* to_string(ResolutionBranch branch);
const char* to_string(ResolutionAction action);

}  // namespace binv
