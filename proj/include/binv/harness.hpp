#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "binv/manifest.hpp"
#include "binv/resolution.hpp"
#include "binv/verifier.hpp"

namespace binv {

enum class RunMode { Open, Mcq, McqMajority, Binary };

const char* to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);

struct RunConfig {
    RunMode mode = RunMode::Binary;
    int mv_repeats = 5;  // majority voting only; odd, >= 3
    ResolutionConfig resolution;
    double temperature = 0.2;
    double mv_temperature = 1.0;  // majority-vote repeats
    int repeats_per_item = 1;
    int parallelism = 1;
    std::uint64_t seed = 0;
    ShortlistConfig shortlist;  // REC tau / cap
};

struct ItemRecord {
    std::string item_id;
    int repeat = 0;
    bool correct = false;
    bool errored = false;
    bool no_candidate = false;
    std::optional<ResolutionBranch> branch;  // binary mode only
    std::string chosen_id;
    std::string pattern;  // verdict rounds, e.g. "TFTF" or "TT|TF"
    std::string error;
    int candidates_before = 0;
    int candidates_after = 0;  // set passed to the final decision
    int verify_queries = 0;
    int mcq_queries = 0;
    double iou = 0.0;  // REC only
    double latency_ms = 0.0;
    bool parse_failure = false;
};

struct BranchStats {
    int count = 0;
    double frequency_pct = 0.0;  // of all counted items
    double mean_candidates_before = 0.0;
    double mean_candidates_after = 0.0;
    double accuracy_pct = 0.0;
    // Accuracy of a paired MCQ run on the same items, when supplied.
    std::optional<double> matched_mcq_accuracy_pct;
};

struct RunReport {
    std::vector<ItemRecord> items;
    int counted = 0;
    int correct = 0;
    int incorrect = 0;  // excludes no-candidate items
    int errored = 0;
    int no_candidate = 0;
    double accuracy = 0.0;  // correct / (counted - errored); no-candidate counts as wrong
    std::map<std::string, BranchStats> branches;
    // Student-t 95% CI over per-item repeat means.
    double ci_low = 0.0;
    double ci_high = 0.0;
    int repeats_per_item = 1;
};

// Executes the selected inference mode per instance against the backend.
// Binary mode drives the resolution protocol; majority voting repeats the MCQ
// at mv_temperature and takes the plurality with lowest-index tie-break.
RunReport run(const RunConfig& config, const std::vector<TaskInstance>& instances,
              VerifierBackend& backend);

// Aggregation over already-scored records; paired_mcq, when given, supplies the
// matched-item MCQ accuracies per branch.
RunReport aggregate(std::vector<ItemRecord> items, int repeats_per_item,
                    const RunReport* paired_mcq = nullptr);

// Frequency-weighted overall accuracy from branch statistics, in percent.
// Frequencies and the no-candidate share are percentages summing to 100;
// no-candidate items contribute zero accuracy.
double aggregate_from_branch_stats(const std::vector<double>& frequencies_pct,
                                   const std::vector<double>& accuracies_pct,
                                   double no_candidate_pct);

// Mean and Student-t 95% confidence interval of a sample.
struct MeanCi {
    double mean = 0.0;
    double low = 0.0;
    double high = 0.0;
};
MeanCi t_confidence_interval(const std::vector<double>& values);

void write_report_json(const std::string& path, const RunReport& report);
void write_items_jsonl(const std::string& path, const RunReport& report);
void write_breakdown_csv(const std::string& path, const RunReport& report);
RunReport read_report_json(const std::string& path);

}  // namespace binv
