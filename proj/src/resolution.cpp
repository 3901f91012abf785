#include "binv/resolution.hpp"

#include <algorithm>
#include <unordered_set>

namespace binv {

const char* to_string(ResolutionBranch branch) {
    switch (branch) {
        case ResolutionBranch::SingleTrue: return "single-true";
        case ResolutionBranch::MultipleTrue: return "multiple-true";
        case ResolutionBranch::AllFalse: return "all-false";
    }
    return "?";
}

const char* to_string(ResolutionAction action) {
    switch (action) {
        case ResolutionAction::Select: return "select";
        case ResolutionAction::ReRunBinary: return "rerun-binary";
        case ResolutionAction::FallbackMcq: return "fallback-mcq";
    }
    return "?";
}

ResolutionOutcome resolve(const BooleanPattern& pattern,
                          const std::vector<Candidate>& shortlist,
                          const ResolutionConfig& config) {
    if (shortlist.empty()) throw InvalidInputError("resolve: empty shortlist");
    if (pattern.round > config.max_retries)
        throw ContractViolation("resolve: round exceeds max_retries");
    if (pattern.verdicts.size() != shortlist.size())
        throw ContractViolation("resolve: pattern does not cover shortlist");
    for (std::size_t i = 0; i < shortlist.size(); ++i) {
        if (pattern.verdicts[i].first != shortlist[i].id)
            throw ContractViolation("resolve: pattern id mismatch at position " +
                                    std::to_string(i));
    }

    ResolutionOutcome out{};
    std::vector<std::string> true_ids;
    for (const auto& [id, v] : pattern.verdicts) {
        if (v == Verdict::True) true_ids.push_back(id);
        if (v == Verdict::Unparseable) out.parse_failure = true;
    }

    const bool last_round = pattern.round >= config.max_retries;
    if (true_ids.size() == 1) {
        out.action = ResolutionAction::Select;
        out.branch = ResolutionBranch::SingleTrue;
        out.ids = std::move(true_ids);
    } else if (true_ids.size() >= 2) {
        out.action = last_round ? ResolutionAction::FallbackMcq
                                : ResolutionAction::ReRunBinary;
        out.branch = ResolutionBranch::MultipleTrue;
        out.ids = std::move(true_ids);
    } else {
        out.action = last_round ? ResolutionAction::FallbackMcq
                                : ResolutionAction::ReRunBinary;
        out.branch = ResolutionBranch::AllFalse;
        out.ids.reserve(shortlist.size());
        for (const auto& c : shortlist) out.ids.push_back(c.id);
    }
    return out;
}

namespace {

std::vector<Candidate> subset_by_ids(const std::vector<Candidate>& pool,
                                     const std::vector<std::string>& ids) {
    std::unordered_set<std::string> wanted(ids.begin(), ids.end());
    std::vector<Candidate> out;
    for (const auto& c : pool)
        if (wanted.count(c.id)) out.push_back(c);
    return out;
}

}  // namespace

ProtocolResult run_protocol(const std::vector<Candidate>& shortlist,
                            const ProtocolVerifier& verifier,
                            const ResolutionConfig& config) {
    if (shortlist.empty()) throw InvalidInputError("run_protocol: empty shortlist");

    ProtocolResult result{};
    std::vector<Candidate> current = shortlist;
    for (int round = 0;; ++round) {
        BooleanPattern pattern;
        pattern.round = round;
        for (const auto& c : current) {
            Verdict v = verifier.verify(c, round);
            ++result.trace.verify_queries;
            pattern.verdicts.emplace_back(c.id, v);
        }
        result.trace.patterns.push_back(pattern);

        ResolutionOutcome outcome = resolve(pattern, current, config);
        result.trace.parse_failure |= outcome.parse_failure;
        result.branch = outcome.branch;

        if (outcome.action == ResolutionAction::Select) {
            result.chosen_id = outcome.ids.front();
            return result;
        }
        if (outcome.action == ResolutionAction::ReRunBinary) {
            current = subset_by_ids(current, outcome.ids);
            continue;
        }
        // Fallback MCQ over the designated subset.
        std::vector<Candidate> options = subset_by_ids(current, outcome.ids);
        result.trace.mcq_issued = true;
        for (const auto& c : options) result.trace.mcq_options.push_back(c.id);
        std::size_t choice = verifier.answer_mcq(options);
        ++result.trace.mcq_queries;
        if (choice >= options.size())
            throw ContractViolation("run_protocol: MCQ choice out of range");
        result.chosen_id = options[choice].id;
        return result;
    }
}

}  // namespace binv
