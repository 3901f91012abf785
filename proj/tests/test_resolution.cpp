#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "binv/backends.hpp"
#include "binv/resolution.hpp"

using namespace binv;

namespace {

std::vector<Candidate> make_shortlist(int m) {
    std::vector<Candidate> out;
    for (int i = 0; i < m; ++i) {
        Candidate c;
        c.id = std::string(1, static_cast<char>('a' + i));
        c.claim = "claim " + c.id;
        c.payload = c.id;
        out.push_back(std::move(c));
    }
    return out;
}

BooleanPattern pattern_from_bits(const std::vector<Candidate>& shortlist,
                                 unsigned bits, int round = 0) {
    BooleanPattern p;
    p.round = round;
    for (std::size_t i = 0; i < shortlist.size(); ++i)
        p.verdicts.emplace_back(shortlist[i].id,
                                (bits >> i) & 1u ? Verdict::True : Verdict::False_);
    return p;
}

}  // namespace

TEST_CASE("resolve: quoted four-option examples") {
    auto shortlist = make_shortlist(4);
    ResolutionConfig cfg;  // retries disabled

    auto single = resolve(pattern_from_bits(shortlist, 0b0001), shortlist, cfg);
    CHECK(single.action == ResolutionAction::Select);
    CHECK(single.branch == ResolutionBranch::SingleTrue);
    CHECK(single.ids == std::vector<std::string>{"a"});

    auto multi = resolve(pattern_from_bits(shortlist, 0b0101), shortlist, cfg);
    CHECK(multi.action == ResolutionAction::FallbackMcq);
    CHECK(multi.branch == ResolutionBranch::MultipleTrue);
    CHECK(multi.ids == std::vector<std::string>{"a", "c"});
}

TEST_CASE("resolve: all-false falls back over every option") {
    auto shortlist = make_shortlist(3);
    auto out = resolve(pattern_from_bits(shortlist, 0), shortlist, {});
    CHECK(out.action == ResolutionAction::FallbackMcq);
    CHECK(out.branch == ResolutionBranch::AllFalse);
    CHECK(out.ids == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("resolve: single candidate marked True selects it") {
    auto shortlist = make_shortlist(1);
    auto out = resolve(pattern_from_bits(shortlist, 1), shortlist, {});
    CHECK(out.action == ResolutionAction::Select);
    CHECK(out.ids == std::vector<std::string>{"a"});
}

TEST_CASE("resolve: exhaustive over all patterns for m <= 5") {
    for (int m = 1; m <= 5; ++m) {
        auto shortlist = make_shortlist(m);
        for (unsigned bits = 0; bits < (1u << m); ++bits) {
            auto out = resolve(pattern_from_bits(shortlist, bits), shortlist, {});
            int pop = std::popcount(bits);
            if (pop == 1) {
                CHECK(out.action == ResolutionAction::Select);
                CHECK(out.ids.size() == 1);
            } else if (pop >= 2) {
                CHECK(out.action == ResolutionAction::FallbackMcq);
                CHECK(out.branch == ResolutionBranch::MultipleTrue);
                CHECK(out.ids.size() == static_cast<std::size_t>(pop));
            } else {
                CHECK(out.action == ResolutionAction::FallbackMcq);
                CHECK(out.branch == ResolutionBranch::AllFalse);
                CHECK(out.ids.size() == static_cast<std::size_t>(m));
            }
        }
    }
}

TEST_CASE("resolve: retries allow a re-run before the fallback") {
    auto shortlist = make_shortlist(3);
    ResolutionConfig cfg;
    cfg.max_retries = 1;

    auto multi = resolve(pattern_from_bits(shortlist, 0b011, 0), shortlist, cfg);
    CHECK(multi.action == ResolutionAction::ReRunBinary);
    CHECK(multi.ids == std::vector<std::string>{"a", "b"});

    auto none = resolve(pattern_from_bits(shortlist, 0, 0), shortlist, cfg);
    CHECK(none.action == ResolutionAction::ReRunBinary);
    CHECK(none.ids.size() == 3);

    // At the retry limit both cases drop to the MCQ.
    auto last = resolve(pattern_from_bits(shortlist, 0b011, 1), shortlist, cfg);
    CHECK(last.action == ResolutionAction::FallbackMcq);
}

TEST_CASE("resolve: contract violations") {
    auto shortlist = make_shortlist(3);
    CHECK_THROWS_AS(resolve({}, {}, {}), InvalidInputError);

    BooleanPattern wrong = pattern_from_bits(make_shortlist(2), 0b01);
    CHECK_THROWS_AS(resolve(wrong, shortlist, {}), ContractViolation);

    BooleanPattern late = pattern_from_bits(shortlist, 0b001, 2);
    CHECK_THROWS_AS(resolve(late, shortlist, {}), ContractViolation);
}

TEST_CASE("resolve: unparseable verdicts count as False and set the flag") {
    auto shortlist = make_shortlist(2);
    BooleanPattern p;
    p.verdicts = {{"a", Verdict::True}, {"b", Verdict::Unparseable}};
    auto out = resolve(p, shortlist, {});
    CHECK(out.action == ResolutionAction::Select);
    CHECK(out.ids == std::vector<std::string>{"a"});
    CHECK(out.parse_failure);
}

TEST_CASE("resolve: determinism") {
    auto shortlist = make_shortlist(4);
    auto p = pattern_from_bits(shortlist, 0b1010);
    auto first = resolve(p, shortlist, {});
    for (int i = 0; i < 10; ++i) {
        auto again = resolve(p, shortlist, {});
        CHECK(again.action == first.action);
        CHECK(again.ids == first.ids);
    }
}

namespace {

ProtocolVerifier fixed_verifier(std::vector<std::string> true_ids,
                                std::size_t mcq_choice = 0) {
    ProtocolVerifier v;
    v.verify = [true_ids](const Candidate& c, int) {
        for (const auto& id : true_ids)
            if (id == c.id) return Verdict::True;
        return Verdict::False_;
    };
    v.answer_mcq = [mcq_choice](const std::vector<Candidate>& options) {
        return std::min(mcq_choice, options.size() - 1);
    };
    return v;
}

}  // namespace

TEST_CASE("run_protocol: single-true short circuit") {
    auto shortlist = make_shortlist(3);
    auto result = run_protocol(shortlist, fixed_verifier({"b"}), {});
    CHECK(result.chosen_id == "b");
    CHECK(result.branch == ResolutionBranch::SingleTrue);
    CHECK(result.trace.verify_queries == 3);
    CHECK(result.trace.mcq_queries == 0);
}

TEST_CASE("run_protocol: multiple-true fallback MCQ over the True subset") {
    auto shortlist = make_shortlist(3);
    // True on {a,c}; MCQ mock picks the second offered option -> c.
    auto result = run_protocol(shortlist, fixed_verifier({"a", "c"}, 1), {});
    CHECK(result.chosen_id == "c");
    CHECK(result.branch == ResolutionBranch::MultipleTrue);
    CHECK(result.trace.mcq_options == std::vector<std::string>{"a", "c"});
}

TEST_CASE("run_protocol: all-false fallback MCQ over all options") {
    auto shortlist = make_shortlist(3);
    auto result = run_protocol(shortlist, fixed_verifier({}, 0), {});
    CHECK(result.chosen_id == "a");
    CHECK(result.branch == ResolutionBranch::AllFalse);
    CHECK(result.trace.mcq_options.size() == 3);
}

TEST_CASE("run_protocol: membership and monotone pruning under retries") {
    auto shortlist = make_shortlist(5);
    ResolutionConfig cfg;
    cfg.max_retries = 2;

    // Shrinks the True set by one candidate per round.
    int round_seen = 0;
    ProtocolVerifier v;
    v.verify = [&](const Candidate& c, int round) {
        round_seen = round;
        int keep = 4 - round;  // round 0: {a..d} True, round 1: {a..c} ...
        return (c.id[0] - 'a') < keep ? Verdict::True : Verdict::False_;
    };
    v.answer_mcq = [](const std::vector<Candidate>& options) {
        return options.size() - 1;
    };
    auto result = run_protocol(shortlist, v, cfg);
    CHECK(round_seen == 2);
    CHECK(result.trace.patterns.size() == 3);
    // Ever-shrinking rounds: 5, 4, 3 queries.
    CHECK(result.trace.verify_queries == 12);
    CHECK(result.trace.mcq_options == std::vector<std::string>{"a", "b"});
    bool member = false;
    for (const auto& c : shortlist) member |= c.id == result.chosen_id;
    CHECK(member);
}

TEST_CASE("run_protocol: re-run isolating a single True selects it") {
    auto shortlist = make_shortlist(4);
    ResolutionConfig cfg;
    cfg.max_retries = 1;
    ProtocolVerifier v;
    v.verify = [](const Candidate& c, int round) {
        if (round == 0) return c.id == "a" || c.id == "c" ? Verdict::True : Verdict::False_;
        return c.id == "c" ? Verdict::True : Verdict::False_;
    };
    v.answer_mcq = [](const std::vector<Candidate>&) -> std::size_t {
        throw std::logic_error("MCQ must not be reached");
    };
    auto result = run_protocol(shortlist, v, cfg);
    CHECK(result.chosen_id == "c");
    CHECK(result.branch == ResolutionBranch::SingleTrue);
}

TEST_CASE("run_protocol: always-False verifier degenerates to the single-shot MCQ") {
    for (int retries : {0, 1, 3}) {
        auto shortlist = make_shortlist(4);
        ResolutionConfig cfg;
        cfg.max_retries = retries;
        auto result = run_protocol(shortlist, fixed_verifier({}, 2), cfg);
        // Same decision as an MCQ over all options, whatever the retry budget.
        CHECK(result.trace.mcq_options.size() == 4);
        CHECK(result.chosen_id == "c");
        CHECK(result.branch == ResolutionBranch::AllFalse);
    }
}
