#include "binv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "binv/tasks.hpp"

namespace binv {

using nlohmann::json;

const char* to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Open: return "open";
        case RunMode::Mcq: return "mcq";
        case RunMode::McqMajority: return "mcq-mv";
        case RunMode::Binary: return "binary";
    }
    return "?";
}

RunMode run_mode_from_string(const std::string& name) {
    if (name == "open") return RunMode::Open;
    if (name == "mcq") return RunMode::Mcq;
    if (name == "mcq-mv") return RunMode::McqMajority;
    if (name == "binary") return RunMode::Binary;
    throw InvalidInputError("unknown run mode '" + name + "'");
}

namespace {

// Stream-id spacing so every (item, repeat) execution draws from its own
// simulator streams regardless of worker scheduling.
constexpr int kStreamStride = 4096;

struct PreparedItem {
    std::vector<Candidate> shortlist;
    std::vector<bool> truths;  // hidden per-candidate ground truth
    std::string mcq_stem;
    bool no_candidate = false;
};

PreparedItem prepare(const TaskInstance& inst, const RunConfig& config) {
    PreparedItem prep;
    switch (inst.kind) {
        case TaskKind::Rec: {
            Alphabet alpha = shortlist_detections(inst.detections, config.shortlist);
            prep.no_candidate = alpha.no_candidate_flag;
            std::string claim = tasks::rec_claim(inst.expression);
            for (auto& cand : alpha.members) {
                cand.claim = claim;  // same text, different rendered box per query
                const auto& box = std::get<PixelBox>(cand.payload);
                prep.truths.push_back(tasks::score_rec(box, *inst.gt_box).correct);
                prep.shortlist.push_back(cand);
            }
            prep.mcq_stem = "Which highlighted bounding box matches the referring "
                            "description? Referring description: " + inst.expression;
            break;
        }
        case TaskKind::SpatialMap: {
            auto claims = tasks::map_claims(inst.entity_a, inst.entity_b);
            for (std::size_t i = 0; i < tasks::kDirectionOptions.size(); ++i) {
                Candidate c;
                c.id = tasks::kDirectionOptions[i];
                c.claim = claims[i];
                c.payload = std::string(tasks::kDirectionOptions[i]);
                prep.truths.push_back(c.id == inst.gt_label);
                prep.shortlist.push_back(std::move(c));
            }
            prep.mcq_stem = "Where is " + inst.entity_a + " relative to " +
                            inst.entity_b + "?";
            break;
        }
        case TaskKind::SpatialGrid: {
            auto claims = tasks::grid_claims(inst.cell, inst.categories);
            for (std::size_t i = 0; i < inst.categories.size(); ++i) {
                Candidate c;
                c.id = inst.categories[i];
                c.claim = claims[i];
                c.payload = inst.categories[i];
                prep.truths.push_back(c.id == inst.gt_label);
                prep.shortlist.push_back(std::move(c));
            }
            prep.mcq_stem = "Which object is in cell (" + std::to_string(inst.cell.row) +
                            "," + std::to_string(inst.cell.col) + ")?";
            break;
        }
        case TaskKind::Jigsaw: {
            prep.shortlist = tasks::jigsaw_options(inst.tile_count);
            for (const auto& c : prep.shortlist)
                prep.truths.push_back(c.id == inst.gt_label);
            prep.mcq_stem = "Which tile correctly completes the image?";
            break;
        }
        case TaskKind::Labels: {
            Alphabet alpha = native_label_alphabet(inst.labels);
            for (auto& c : alpha.members) {
                c.claim = "The correct answer is " + c.id +
                          ". Answer with True or False.";
                prep.truths.push_back(c.id == inst.gt_label);
                prep.shortlist.push_back(std::move(c));
            }
            prep.mcq_stem = "Select the correct answer.";
            break;
        }
        case TaskKind::SpatialMaze:
            throw ContractViolation("prepare: maze items take the maze path");
    }
    return prep;
}

char verdict_char(Verdict v) {
    switch (v) {
        case Verdict::True: return 'T';
        case Verdict::False_: return 'F';
        case Verdict::Unparseable: return 'U';
    }
    return '?';
}

std::optional<std::size_t> truth_position(const std::vector<Candidate>& options,
                                          const PreparedItem& prep) {
    for (std::size_t i = 0; i < options.size(); ++i)
        for (std::size_t j = 0; j < prep.shortlist.size(); ++j)
            if (prep.shortlist[j].id == options[i].id && prep.truths[j]) return i;
    return std::nullopt;
}

McqQuery make_mcq_query(const PreparedItem& prep,
                        const std::vector<Candidate>& options, double temperature,
                        int stream_base, int repeat_index) {
    McqQuery q;
    q.stem = prep.mcq_stem;
    for (const auto& c : options) q.options.push_back(c.id);
    q.temperature = temperature;
    if (auto pos = truth_position(options, prep))
        q.correct_index = *pos;
    else
        q.correct_index = options.size();  // truth pruned away: every option wrong
    q.stream_id = stream_base;
    q.repeat_index = repeat_index;
    return q;
}

void score_choice(ItemRecord& rec, const TaskInstance& inst,
                  const PreparedItem& prep, const std::string& chosen_id) {
    rec.chosen_id = chosen_id;
    if (inst.kind == TaskKind::Rec) {
        for (const auto& c : prep.shortlist)
            if (c.id == chosen_id) {
                auto s = tasks::score_rec(std::get<PixelBox>(c.payload), *inst.gt_box);
                rec.iou = s.iou;
                rec.correct = s.correct;
                return;
            }
        throw ContractViolation("score_choice: chosen id not in shortlist");
    }
    rec.correct = chosen_id == inst.gt_label;
}

void run_maze_item(ItemRecord& rec, const TaskInstance& inst,
                   VerifierBackend& backend, const RunConfig& config,
                   int repeat_index) {
    MazeModel maze = MazeModel::parse(inst.maze_text);
    ClaimQuery q;
    q.claim_text = tasks::maze_prompt(maze.rows, maze.cols);
    q.temperature = config.temperature;
    q.repeat_index = repeat_index;
    VerifyResult res = backend.verify(q);
    ++rec.verify_queries;

    tasks::MazeResponse parsed = tasks::parse_maze_response(res.raw);
    rec.parse_failure = parsed.parse_failed;
    if (parsed.parse_failed || parsed.self_rejected) {
        rec.correct = false;
        return;
    }
    rec.correct = !validate_maze_path(maze, parsed.path).has_value();
}

void run_one(ItemRecord& rec, const TaskInstance& inst, const RunConfig& config,
             VerifierBackend& backend, int execution_index, int repeat_index) {
    const int stream_base = execution_index * kStreamStride;

    if (inst.kind == TaskKind::SpatialMaze) {
        run_maze_item(rec, inst, backend, config, repeat_index);
        return;
    }

    PreparedItem prep = prepare(inst, config);
    rec.candidates_before = static_cast<int>(prep.shortlist.size());
    if (prep.no_candidate) {
        rec.no_candidate = true;
        rec.correct = false;
        return;
    }

    auto make_claim_query = [&](const Candidate& cand, int repeat) {
        ClaimQuery q;
        q.claim_text = cand.claim;
        q.certainty_policy = config.resolution.certainty_policy;
        q.temperature = config.temperature;
        for (std::size_t j = 0; j < prep.shortlist.size(); ++j)
            if (prep.shortlist[j].id == cand.id) {
                q.hidden_truth = prep.truths[j];
                q.candidate_index = stream_base + static_cast<int>(j) + 1;
            }
        q.repeat_index = repeat;
        return q;
    };

    switch (config.mode) {
        case RunMode::Open:
        case RunMode::Mcq: {
            // Open mode differs from MCQ only in that no option pruning or
            // verification has happened; both are one single-shot choice here.
            McqQuery q = make_mcq_query(prep, prep.shortlist, config.temperature,
                                        stream_base, repeat_index);
            McqResult res = backend.answer_mcq(q);
            ++rec.mcq_queries;
            rec.candidates_after = rec.candidates_before;
            score_choice(rec, inst, prep, prep.shortlist[res.choice].id);
            break;
        }
        case RunMode::McqMajority: {
            std::vector<int> votes(prep.shortlist.size(), 0);
            for (int v = 0; v < config.mv_repeats; ++v) {
                McqQuery q = make_mcq_query(prep, prep.shortlist, config.mv_temperature,
                                            stream_base,
                                            repeat_index * config.mv_repeats + v);
                McqResult res = backend.answer_mcq(q);
                ++rec.mcq_queries;
                ++votes[res.choice];
            }
            // Plurality, lowest option index on ties.
            std::size_t best = 0;
            for (std::size_t i = 1; i < votes.size(); ++i)
                if (votes[i] > votes[best]) best = i;
            rec.candidates_after = rec.candidates_before;
            score_choice(rec, inst, prep, prep.shortlist[best].id);
            break;
        }
        case RunMode::Binary: {
            ProtocolVerifier verifier;
            verifier.verify = [&](const Candidate& cand, int round) {
                VerifyResult res =
                    backend.verify(make_claim_query(cand, repeat_index * 64 + round));
                return res.verdict;
            };
            verifier.answer_mcq = [&](const std::vector<Candidate>& options) {
                McqQuery q = make_mcq_query(prep, options, config.temperature,
                                            stream_base, repeat_index);
                return backend.answer_mcq(q).choice;
            };
            ProtocolResult result =
                run_protocol(prep.shortlist, verifier, config.resolution);
            rec.branch = result.branch;
            rec.verify_queries = result.trace.verify_queries;
            rec.mcq_queries = result.trace.mcq_queries;
            rec.parse_failure = result.trace.parse_failure;
            for (const auto& pattern : result.trace.patterns) {
                if (!rec.pattern.empty()) rec.pattern += '|';
                for (const auto& [id, v] : pattern.verdicts)
                    rec.pattern += verdict_char(v);
            }
            rec.candidates_after =
                result.branch == ResolutionBranch::SingleTrue
                    ? 1
                    : static_cast<int>(result.trace.mcq_options.size());
            score_choice(rec, inst, prep, result.chosen_id);
            break;
        }
    }
}

double branch_or_overall_accuracy(const std::vector<const ItemRecord*>& recs) {
    if (recs.empty()) return 0.0;
    int correct = 0;
    for (const auto* r : recs) correct += r->correct ? 1 : 0;
    return 100.0 * correct / static_cast<double>(recs.size());
}

}  // namespace

RunReport run(const RunConfig& config, const std::vector<TaskInstance>& instances,
              VerifierBackend& backend) {
    if (config.repeats_per_item < 1)
        throw InvalidInputError("run: repeats_per_item must be >= 1");
    if (config.mode == RunMode::McqMajority &&
        (config.mv_repeats < 3 || config.mv_repeats % 2 == 0))
        throw InvalidInputError("run: majority voting needs an odd repeat count >= 3");
    if (config.parallelism < 1)
        throw InvalidInputError("run: parallelism must be >= 1");

    const int repeats = config.repeats_per_item;
    const std::size_t total = instances.size() * static_cast<std::size_t>(repeats);
    std::vector<ItemRecord> records(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= total) return;
            const std::size_t item = k / repeats;
            const int repeat = static_cast<int>(k % repeats);
            ItemRecord& rec = records[k];
            rec.item_id = instances[item].id;
            rec.repeat = repeat;
            auto t0 = std::chrono::steady_clock::now();
            try {
                run_one(rec, instances[item], config, backend,
                        static_cast<int>(k), repeat);
            } catch (const std::exception& e) {
                rec.errored = true;
                rec.error = e.what();
            }
            rec.latency_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        }
    };

    if (config.parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < config.parallelism; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    return aggregate(std::move(records), repeats);
}

RunReport aggregate(std::vector<ItemRecord> items, int repeats_per_item,
                    const RunReport* paired_mcq) {
    if (items.empty()) throw InvalidInputError("aggregate: no scored items");

    RunReport report;
    report.repeats_per_item = repeats_per_item;
    report.counted = static_cast<int>(items.size());
    for (const auto& r : items) {
        if (r.errored)
            ++report.errored;
        else if (r.no_candidate)
            ++report.no_candidate;
        else if (r.correct)
            ++report.correct;
        else
            ++report.incorrect;
    }
    int scored = report.counted - report.errored;
    report.accuracy = scored > 0 ? static_cast<double>(report.correct) / scored : 0.0;

    // Branch breakdown (binary mode records carry a branch).
    std::map<std::string, std::vector<const ItemRecord*>> by_branch;
    for (const auto& r : items)
        if (r.branch && !r.errored) by_branch[to_string(*r.branch)].push_back(&r);
    for (auto& [name, recs] : by_branch) {
        BranchStats s;
        s.count = static_cast<int>(recs.size());
        s.frequency_pct = 100.0 * s.count / report.counted;
        double before = 0.0, after = 0.0;
        for (const auto* r : recs) {
            before += r->candidates_before;
            after += r->candidates_after;
        }
        s.mean_candidates_before = before / s.count;
        s.mean_candidates_after = after / s.count;
        s.accuracy_pct = branch_or_overall_accuracy(recs);
        if (paired_mcq) {
            std::vector<const ItemRecord*> matched;
            for (const auto* r : recs)
                for (const auto& p : paired_mcq->items)
                    if (p.item_id == r->item_id && p.repeat == r->repeat &&
                        !p.errored)
                        matched.push_back(&p);
            if (!matched.empty())
                s.matched_mcq_accuracy_pct = branch_or_overall_accuracy(matched);
        }
        report.branches[name] = s;
    }

    // Student-t CI over per-item repeat means.
    std::map<std::string, std::pair<double, int>> per_item;
    for (const auto& r : items) {
        if (r.errored) continue;
        auto& [sum, n] = per_item[r.item_id];
        sum += r.correct ? 1.0 : 0.0;
        ++n;
    }
    std::vector<double> means;
    for (const auto& [id, acc] : per_item)
        if (acc.second > 0) means.push_back(acc.first / acc.second);
    MeanCi ci = t_confidence_interval(means);
    report.ci_low = ci.low;
    report.ci_high = ci.high;

    report.items = std::move(items);
    return report;
}

double aggregate_from_branch_stats(const std::vector<double>& frequencies_pct,
                                   const std::vector<double>& accuracies_pct,
                                   double no_candidate_pct) {
    if (frequencies_pct.size() != accuracies_pct.size())
        throw InvalidInputError("aggregate_from_branch_stats: size mismatch");
    double total = no_candidate_pct;
    double weighted = 0.0;
    for (std::size_t i = 0; i < frequencies_pct.size(); ++i) {
        total += frequencies_pct[i];
        weighted += frequencies_pct[i] * accuracies_pct[i];
    }
    if (std::abs(total - 100.0) > 0.5)
        throw InvalidInputError(
            "aggregate_from_branch_stats: frequencies do not sum to 100%");
    return weighted / total;
}

MeanCi t_confidence_interval(const std::vector<double>& values) {
    MeanCi out;
    if (values.empty()) return out;
    const std::size_t n = values.size();
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    out.mean = out.low = out.high = mean;
    if (n < 2) return out;

    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) return out;

    boost::math::students_t dist(static_cast<double>(n - 1));
    double t = boost::math::quantile(dist, 0.975);
    double half = t * sd / std::sqrt(static_cast<double>(n));
    out.low = mean - half;
    out.high = mean + half;
    return out;
}

namespace {

json record_to_json(const ItemRecord& r) {
    json j{{"item_id", r.item_id},
           {"repeat", r.repeat},
           {"correct", r.correct},
           {"errored", r.errored},
           {"no_candidate", r.no_candidate},
           {"chosen", r.chosen_id},
           {"pattern", r.pattern},
           {"candidates_before", r.candidates_before},
           {"candidates_after", r.candidates_after},
           {"verify_queries", r.verify_queries},
           {"mcq_queries", r.mcq_queries},
           {"iou", r.iou},
           {"latency_ms", r.latency_ms},
           {"parse_failure", r.parse_failure}};
    if (r.branch) j["branch"] = to_string(*r.branch);
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

ItemRecord record_from_json(const json& j) {
    ItemRecord r;
    r.item_id = j.at("item_id").get<std::string>();
    r.repeat = j.at("repeat").get<int>();
    r.correct = j.at("correct").get<bool>();
    r.errored = j.at("errored").get<bool>();
    r.no_candidate = j.at("no_candidate").get<bool>();
    r.chosen_id = j.value("chosen", "");
    r.pattern = j.value("pattern", "");
    r.candidates_before = j.value("candidates_before", 0);
    r.candidates_after = j.value("candidates_after", 0);
    r.verify_queries = j.value("verify_queries", 0);
    r.mcq_queries = j.value("mcq_queries", 0);
    r.iou = j.value("iou", 0.0);
    r.latency_ms = j.value("latency_ms", 0.0);
    r.parse_failure = j.value("parse_failure", false);
    if (j.contains("branch")) {
        std::string b = j["branch"];
        if (b == "single-true") r.branch = ResolutionBranch::SingleTrue;
        if (b == "multiple-true") r.branch = ResolutionBranch::MultipleTrue;
        if (b == "all-false") r.branch = ResolutionBranch::AllFalse;
    }
    r.error = j.value("error", "");
    return r;
}

}  // namespace

void write_report_json(const std::string& path, const RunReport& report) {
    json branches = json::object();
    for (const auto& [name, s] : report.branches) {
        json b{{"count", s.count},
               {"frequency_pct", s.frequency_pct},
               {"mean_candidates_before", s.mean_candidates_before},
               {"mean_candidates_after", s.mean_candidates_after},
               {"accuracy_pct", s.accuracy_pct}};
        if (s.matched_mcq_accuracy_pct)
            b["matched_mcq_accuracy_pct"] = *s.matched_mcq_accuracy_pct;
        branches[name] = b;
    }
    json items = json::array();
    for (const auto& r : report.items) items.push_back(record_to_json(r));
    json j{{"counted", report.counted},
           {"correct", report.correct},
           {"incorrect", report.incorrect},
           {"errored", report.errored},
           {"no_candidate", report.no_candidate},
           {"accuracy", report.accuracy},
           // CI over per-item means of repeated runs (Student t, 95%).
           {"ci_low", report.ci_low},
           {"ci_high", report.ci_high},
           {"repeats_per_item", report.repeats_per_item},
           {"branches", branches},
           {"items", items}};
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_report_json: cannot open " + path);
    f << j.dump(2) << "\n";
}

RunReport read_report_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_report_json: cannot open " + path);
    json j = json::parse(f);
    std::vector<ItemRecord> items;
    for (const auto& r : j.at("items")) items.push_back(record_from_json(r));
    return aggregate(std::move(items), j.value("repeats_per_item", 1));
}

void write_items_jsonl(const std::string& path, const RunReport& report) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_items_jsonl: cannot open " + path);
    for (const auto& r : report.items) f << record_to_json(r).dump() << "\n";
}

void write_breakdown_csv(const std::string& path, const RunReport& report) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_breakdown_csv: cannot open " + path);
    f << "branch,count,frequency_pct,mean_candidates_before,mean_candidates_after,"
         "accuracy_pct,matched_mcq_accuracy_pct\n";
    for (const auto& [name, s] : report.branches) {
        f << name << "," << s.count << "," << s.frequency_pct << ","
          << s.mean_candidates_before << "," << s.mean_candidates_after << ","
          << s.accuracy_pct << ",";
        if (s.matched_mcq_accuracy_pct) f << *s.matched_mcq_accuracy_pct;
        f << "\n";
    }
    f << "overall,," << 100.0 * (report.counted - report.errored) / report.counted
      << ",,," << 100.0 * report.accuracy << ",\n";
}

}  // namespace binv
