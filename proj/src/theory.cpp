#include "binv/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace binv {
namespace theory {

DiscreteJoint DiscreteJoint::from_pmf(std::vector<std::vector<double>> pmf) {
    if (pmf.empty() || pmf.front().empty())
        throw InvalidInputError("DiscreteJoint: empty pmf");
    DiscreteJoint j;
    j.x_size = pmf.size();
    j.y_size = pmf.front().size();
    double total = 0.0;
    for (const auto& row : pmf) {
        if (row.size() != j.y_size)
            throw InvalidInputError("DiscreteJoint: ragged pmf");
        for (double v : row) {
            if (v < 0.0) throw InvalidInputError("DiscreteJoint: negative mass");
            total += v;
        }
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InvalidInputError("DiscreteJoint: mass != 1");
    j.pmf = std::move(pmf);
    return j;
}

double DiscreteJoint::p_x(std::size_t x) const {
    return std::accumulate(pmf.at(x).begin(), pmf.at(x).end(), 0.0);
}

double DiscreteJoint::p_y(std::size_t y) const {
    double s = 0.0;
    for (const auto& row : pmf) s += row.at(y);
    return s;
}

Partition Partition::singletons(std::size_t k) {
    Partition p;
    for (std::size_t a = 0; a < k; ++a) p.cells.push_back({a});
    return p;
}

Partition Partition::mcq(std::size_t k, std::size_t m, std::size_t designated) {
    if (m > k) throw InvalidInputError("Partition::mcq: m > K");
    if (m < 1) throw InvalidInputError("Partition::mcq: m < 1");
    if (designated >= k) throw InvalidInputError("Partition::mcq: designated out of range");
    // Singletons: the designated label plus the lowest-index others until |S| = m.
    std::vector<std::size_t> chosen{designated};
    for (std::size_t a = 0; a < k && chosen.size() < m; ++a)
        if (a != designated) chosen.push_back(a);
    std::sort(chosen.begin(), chosen.end());

    Partition p;
    for (std::size_t a : chosen) p.cells.push_back({a});
    std::vector<std::size_t> rest;
    for (std::size_t a = 0; a < k; ++a)
        if (!std::binary_search(chosen.begin(), chosen.end(), a)) rest.push_back(a);
    if (!rest.empty()) p.cells.push_back(std::move(rest));
    return p;
}

Partition Partition::one_vs_rest(std::size_t k, std::size_t designated) {
    if (designated >= k)
        throw InvalidInputError("Partition::one_vs_rest: designated out of range");
    Partition p;
    p.cells.push_back({designated});
    std::vector<std::size_t> rest;
    for (std::size_t a = 0; a < k; ++a)
        if (a != designated) rest.push_back(a);
    if (!rest.empty()) p.cells.push_back(std::move(rest));
    return p;
}

void Partition::validate(std::size_t k) const {
    std::set<std::size_t> seen;
    for (const auto& cell : cells) {
        if (cell.empty()) throw InvalidInputError("Partition: empty cell");
        for (std::size_t a : cell) {
            if (a >= k) throw InvalidInputError("Partition: label out of range");
            if (!seen.insert(a).second)
                throw InvalidInputError("Partition: label in two cells");
        }
    }
    if (seen.size() != k) throw InvalidInputError("Partition: does not cover alphabet");
}

double bayes_risk(const DiscreteJoint& joint, const Partition& partition) {
    partition.validate(joint.y_size);
    double correct = 0.0;
    for (std::size_t x = 0; x < joint.x_size; ++x) {
        double best = 0.0;
        for (const auto& cell : partition.cells) {
            double mass = 0.0;
            for (std::size_t a : cell) mass += joint.pmf[x][a];
            if (mass > best) best = mass;  // strict > keeps the lowest cell on ties
        }
        correct += best;
    }
    return 1.0 - correct;
}

HardnessLadder hardness_ladder(const DiscreteJoint& joint, std::size_t m,
                               std::size_t designated) {
    if (m > joint.y_size) throw InvalidInputError("hardness_ladder: m > K");
    HardnessLadder out{};
    out.r_k = bayes_risk(joint, Partition::singletons(joint.y_size));
    out.r_m = bayes_risk(joint, Partition::mcq(joint.y_size, m, designated));
    out.r_2 = bayes_risk(joint, Partition::one_vs_rest(joint.y_size, designated));
    return out;
}

double partition_mi(const DiscreteJoint& joint, const Partition& partition) {
    partition.validate(joint.y_size);
    const std::size_t n_cells = partition.cells.size();
    // P(x, z) for the coarsened label.
    std::vector<std::vector<double>> pz(joint.x_size, std::vector<double>(n_cells, 0.0));
    for (std::size_t x = 0; x < joint.x_size; ++x)
        for (std::size_t z = 0; z < n_cells; ++z)
            for (std::size_t a : partition.cells[z]) pz[x][z] += joint.pmf[x][a];

    std::vector<double> px(joint.x_size, 0.0), pm(n_cells, 0.0);
    for (std::size_t x = 0; x < joint.x_size; ++x)
        for (std::size_t z = 0; z < n_cells; ++z) {
            px[x] += pz[x][z];
            pm[z] += pz[x][z];
        }

    double mi = 0.0;
    for (std::size_t x = 0; x < joint.x_size; ++x)
        for (std::size_t z = 0; z < n_cells; ++z) {
            double pxy = pz[x][z];
            if (pxy > 0.0) mi += pxy * std::log(pxy / (px[x] * pm[z]));
        }
    return std::max(mi, 0.0);
}

std::size_t calibrated_argmax(const DiscreteJoint& joint, std::size_t x,
                              const std::vector<std::size_t>* subset) {
    if (x >= joint.x_size) throw InvalidInputError("calibrated_argmax: x out of range");
    if (joint.p_x(x) <= 0.0)
        throw InvalidInputError("calibrated_argmax: zero-probability evidence");

    auto consider = [&](std::size_t a, std::size_t& best, double& best_mass, bool& any) {
        double mass = joint.pmf[x][a];  // posterior argmax == joint-row argmax
        if (!any || mass > best_mass) {
            best = a;
            best_mass = mass;
            any = true;
        }
    };

    std::size_t best = 0;
    double best_mass = 0.0;
    bool any = false;
    if (subset) {
        if (subset->empty()) throw InvalidInputError("calibrated_argmax: empty subset");
        std::vector<std::size_t> sorted = *subset;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t a : sorted) {
            if (a >= joint.y_size)
                throw InvalidInputError("calibrated_argmax: subset label out of range");
            consider(a, best, best_mass, any);
        }
    } else {
        for (std::size_t a = 0; a < joint.y_size; ++a) consider(a, best, best_mass, any);
    }
    return best;
}

double fano_bound(const FanoInput& input) {
    if (input.information_nats < 0.0)
        throw InvalidInputError("fano_bound: negative information");
    if (input.cardinality < 2)
        throw InvalidInputError("fano_bound: cardinality < 2");
    double raw = 1.0 - (input.information_nats + std::log(2.0)) /
                           std::log(static_cast<double>(input.cardinality));
    return std::clamp(raw, 0.0, 1.0);
}

namespace {

void check_params(const TwoHypParams& p) {
    for (double v : {p.q1, p.q2, p.p})
        if (v < 0.0 || v > 1.0)
            throw InvalidInputError("TwoHypParams: value outside [0,1]");
}

}  // namespace

double binary_accuracy(const TwoHypParams& params) {
    check_params(params);
    const double q1 = params.q1, q2 = params.q2, p = params.p;
    return q1 * (1.0 - q2) + q1 * q2 * p + (1.0 - q1) * (1.0 - q2) * p;
}

double mcq_threshold(double q1, double q2) {
    TwoHypParams check{q1, q2, 0.0};
    check_params(check);
    const double denom = q1 * (1.0 - q2) + q2 * (1.0 - q1);
    if (denom <= 0.0)
        throw InvalidInputError("mcq_threshold: degenerate q1/q2, threshold undefined");
    return 1.0 - q2 * (1.0 - q1) / denom;
}

double simulate_two_hyp_protocol(const TwoHypParams& params, std::int64_t trials,
                                 std::uint64_t seed) {
    check_params(params);
    if (trials < 1) throw InvalidInputError("simulate_two_hyp_protocol: trials < 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::int64_t correct = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        bool true_marked = unif(rng) < params.q1;        // verdict on H1 (true)
        bool false_marked = unif(rng) < params.q2;       // verdict on H2 (false)
        if (true_marked && !false_marked) {
            ++correct;                                   // single-True accepts H1
        } else if (!true_marked && false_marked) {
            // single-True accepts the distractor: incorrect
        } else {
            if (unif(rng) < params.p) ++correct;         // MCQ fallback
        }
    }
    return static_cast<double>(correct) / static_cast<double>(trials);
}

}  // namespace theory
}  // namespace binv
