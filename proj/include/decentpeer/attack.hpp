#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace decentpeer {

struct AttackScenario {
    std::uint64_t total_users = 1;   // n (unified author already excluded)
    std::uint64_t malicious = 0;     // g
    std::uint64_t committee_size = 1; // r
    std::uint64_t majority = 1;      // m, default ceil((r+1)/2)

    static AttackScenario with_default_majority(std::uint64_t n, std::uint64_t g, std::uint64_t r) {
        return {n, g, r, (r + 2) / 2};
    }
};

class InvalidScenarioError : public std::invalid_argument {
public:
    explicit InvalidScenarioError(const std::string& what) : std::invalid_argument(what) {}
};

// P(at least m of the r uniformly drawn committee members are malicious):
// hypergeometric upper tail, log-space pmf accumulation.
double majority_attack_probability(const AttackScenario& s);

// Same probability via the explicit product-of-ratios form; kept as an
// independent route for cross-checking.
double majority_attack_probability_product_form(const AttackScenario& s);

// Binomial tail sum_{i=m..r} C(r,i) (1/3)^i (2/3)^(r-i); the n->inf limit of
// the worst case with a third of users malicious. (5,3) gives 17/81.
double worst_case_limit(std::uint64_t committee_size = 5, std::uint64_t majority = 3);

struct MonteCarloResult {
    double estimate = 0.0;
    double standard_error = 0.0;
};

// Per-trial seeds derive from (seed, trial index), so the result is
// independent of how trials are scheduled across workers.
MonteCarloResult monte_carlo_attack(const AttackScenario& s, std::uint64_t trials,
                                    std::uint64_t seed, unsigned workers = 1);

struct CurvePoint {
    std::uint64_t total_users = 0;
    double probability = 0.0;
};

// Exact attack probability for each n with g = floor(n * fraction).
std::vector<CurvePoint> convergence_curve(const std::vector<std::uint64_t>& n_values,
                                          double fraction = 1.0 / 3.0,
                                          std::uint64_t committee_size = 5,
                                          std::uint64_t majority = 3);

}  // namespace decentpeer
