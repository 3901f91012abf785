#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "binv/candidate.hpp"

namespace binv {
namespace theory {

// Finite joint distribution over (evidence X, label Y). pmf[x][y] = P(X=x, Y=y).
struct DiscreteJoint {
    std::size_t x_size = 0;
    std::size_t y_size = 0;
    std::vector<std::vector<double>> pmf;

    static DiscreteJoint from_pmf(std::vector<std::vector<double>> pmf);
    double p_x(std::size_t x) const;
    double p_y(std::size_t y) const;
};

// Disjoint non-empty label subsets covering {0..K-1}.
struct Partition {
    std::vector<std::vector<std::size_t>> cells;

    static Partition singletons(std::size_t k);                         // Pi_K
    // m chosen labels as singletons, the remainder merged into one cell.
    // `designated` is always included among the singletons.
    static Partition mcq(std::size_t k, std::size_t m, std::size_t designated);  // Pi_m
    static Partition one_vs_rest(std::size_t k, std::size_t designated);         // Pi_2
    void validate(std::size_t k) const;
};

// 0-1 Bayes risk of predicting the partition cell of Y from X:
// 1 - sum_x max_cell P(x, cell). Ties broken toward the lowest cell index.
double bayes_risk(const DiscreteJoint& joint, const Partition& partition);

struct HardnessLadder {
    double r_k;
    double r_m;
    double r_2;
};

// Risks of the K-way, MCQ, and one-vs-rest problems on the same joint.
// Coarsening guarantees r_k >= r_m >= r_2.
HardnessLadder hardness_ladder(const DiscreteJoint& joint, std::size_t m,
                               std::size_t designated);

// I(Z_Pi; X) in nats, 0*log0 = 0.
double partition_mi(const DiscreteJoint& joint, const Partition& partition);

// argmax_a P(Y=a | X=x), optionally restricted to a label subset. Ties broken
// toward the lowest label index. Calibrated per-option verification realizes
// the Bayes rule through this argmax.
std::size_t calibrated_argmax(const DiscreteJoint& joint, std::size_t x,
                              const std::vector<std::size_t>* subset = nullptr);

struct FanoInput {
    double information_nats = 0.0;
    std::size_t cardinality = 2;
};

// max(0, 1 - (I + ln 2) / ln(cardinality)). Natural logs throughout.
double fano_bound(const FanoInput& input);

struct TwoHypParams {
    double q1 = 0.0;  // P(True | hypothesis is true)
    double q2 = 0.0;  // P(True | hypothesis is false)
    double p = 0.0;   // P(single-shot MCQ correct)
};

// Closed-form accuracy of one-round binary verification with MCQ fallback:
// q1(1-q2) + q1*q2*p + (1-q1)(1-q2)*p.
double binary_accuracy(const TwoHypParams& params);

// MCQ correctness threshold p*: the MCQ wins iff p >= p*, where
// p* = 1 - q2(1-q1) / (q1(1-q2) + q2(1-q1)).
double mcq_threshold(double q1, double q2);

// Monte Carlo of the exact two-hypothesis protocol: two Bernoulli verdicts,
// single-True accepts, both-True/both-False falls back to an MCQ that succeeds
// with probability p.
double simulate_two_hyp_protocol(const TwoHypParams& params, std::int64_t trials,
                                 std::uint64_t seed);

}  // namespace theory
}  // namespace binv
