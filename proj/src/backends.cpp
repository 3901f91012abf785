#include "binv/backends.hpp"

namespace binv {

void ScriptedMockBackend::add_claim_reply(std::string claim_text, std::string reply) {
    claim_replies_[std::move(claim_text)] = std::move(reply);
}

void ScriptedMockBackend::add_mcq_reply(std::string stem, std::string reply) {
    mcq_replies_[std::move(stem)] = std::move(reply);
}

void ScriptedMockBackend::set_default_mcq_reply(std::string reply) {
    default_mcq_reply_ = std::move(reply);
}

VerifyResult ScriptedMockBackend::verify(const ClaimQuery& query) {
    auto it = claim_replies_.find(query.claim_text);
    if (it == claim_replies_.end())
        throw BackendError("mock: no fixture for claim '" + query.claim_text + "'");
    return {parse_verdict(it->second), it->second};
}

McqResult ScriptedMockBackend::answer_mcq(const McqQuery& query) {
    const std::string* reply = nullptr;
    if (auto it = mcq_replies_.find(query.stem); it != mcq_replies_.end())
        reply = &it->second;
    else if (default_mcq_reply_)
        reply = &*default_mcq_reply_;
    else
        throw BackendError("mock: no fixture for MCQ stem '" + query.stem + "'");
    auto choice = parse_mcq_choice(*reply, query.options);
    if (!choice) throw BackendError("mock: unparseable MCQ fixture '" + *reply + "'");
    return {*choice, *reply};
}

void SequencedMockBackend::push_claim_reply(std::string reply) {
    claim_replies_.push_back(std::move(reply));
}

void SequencedMockBackend::push_mcq_reply(std::string reply) {
    mcq_replies_.push_back(std::move(reply));
}

VerifyResult SequencedMockBackend::verify(const ClaimQuery&) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (next_claim_ >= claim_replies_.size())
        throw BackendError("sequenced mock: claim reply queue exhausted");
    const std::string& reply = claim_replies_[next_claim_++];
    return {parse_verdict(reply), reply};
}

McqResult SequencedMockBackend::answer_mcq(const McqQuery& query) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (next_mcq_ >= mcq_replies_.size())
        throw BackendError("sequenced mock: MCQ reply queue exhausted");
    const std::string& reply = mcq_replies_[next_mcq_++];
    auto choice = parse_mcq_choice(reply, query.options);
    if (!choice)
        throw BackendError("sequenced mock: unparseable MCQ fixture '" + reply + "'");
    return {*choice, reply};
}

bool SequencedMockBackend::exhausted() const {
    return next_claim_ == claim_replies_.size() && next_mcq_ == mcq_replies_.size();
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over (seed ^ stream tag)
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

SimulatorBackend::SimulatorBackend(SimulatorParams params) : params_(params) {
    for (double v : {params_.q1, params_.q2, params_.p})
        if (v < 0.0 || v > 1.0)
            throw InvalidInputError("SimulatorParams: probability outside [0,1]");
}

double SimulatorBackend::draw(int stream_id) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = streams_.find(stream_id);
    if (it == streams_.end()) {
        it = streams_
                 .emplace(stream_id, std::mt19937_64(mix_seed(
                                         params_.seed,
                                         static_cast<std::uint64_t>(stream_id + 2))))
                 .first;
    }
    return std::uniform_real_distribution<double>(0.0, 1.0)(it->second);
}

VerifyResult SimulatorBackend::verify(const ClaimQuery& query) {
    if (!query.hidden_truth)
        throw BackendError("simulator: claim has no hidden ground truth");
    double q = *query.hidden_truth ? params_.q1 : params_.q2;
    bool answer_true = draw(query.candidate_index) < q;
    return {answer_true ? Verdict::True : Verdict::False_,
            answer_true ? "True" : "False"};
}

McqResult SimulatorBackend::answer_mcq(const McqQuery& query) {
    if (query.options.empty()) throw InvalidInputError("simulator: empty MCQ");
    if (!query.correct_index)
        throw BackendError("simulator: MCQ has no hidden correct index");
    if (query.options.size() == 1) return {0, "A"};

    std::size_t correct = *query.correct_index;
    std::size_t choice;
    if (correct < query.options.size() && draw(query.stream_id) < params_.p) {
        choice = correct;
    } else {
        // Uniform over the wrong options. A correct index outside the offered
        // subset (pruned away earlier) makes every option wrong.
        std::vector<std::size_t> wrong;
        for (std::size_t i = 0; i < query.options.size(); ++i)
            if (i != correct) wrong.push_back(i);
        std::size_t pick = static_cast<std::size_t>(draw(query.stream_id) * wrong.size());
        if (pick >= wrong.size()) pick = wrong.size() - 1;
        choice = wrong[pick];
    }
    std::string raw(1, static_cast<char>('A' + choice));
    return {choice, raw};
}

}  // namespace binv
