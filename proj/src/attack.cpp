#include "decentpeer/attack.hpp"

#include <cmath>
#include <thread>

#include "decentpeer/rng.hpp"

namespace decentpeer {

static void check_scenario(const AttackScenario& s) {
    if (s.total_users < 1) throw InvalidScenarioError("n must be >= 1");
    if (s.committee_size > s.total_users) throw InvalidScenarioError("r exceeds n");
    if (s.malicious > s.total_users) throw InvalidScenarioError("g exceeds n");
    if (s.majority > s.committee_size) throw InvalidScenarioError("m exceeds r");
    if (s.committee_size < 1) throw InvalidScenarioError("r must be >= 1");
}

static long double log_choose(long double n, long double k) {
    return std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
}

// Exact binomial coefficient for the small committee-size factors.
static long double small_choose(std::uint64_t n, std::uint64_t k) {
    long double out = 1.0L;
    for (std::uint64_t j = 0; j < k; ++j)
        out = out * static_cast<long double>(n - j) / static_cast<long double>(j + 1);
    return out;
}

double majority_attack_probability(const AttackScenario& s) {
    check_scenario(s);
    const long double n = static_cast<long double>(s.total_users);
    const long double g = static_cast<long double>(s.malicious);
    const long double r = static_cast<long double>(s.committee_size);
    const long double log_denom = log_choose(n, r);
    long double tail = 0.0L;
    for (std::uint64_t i = s.majority; i <= s.committee_size; ++i) {
        if (i > s.malicious) break;
        if (s.committee_size - i > s.total_users - s.malicious) continue;
        const long double k = static_cast<long double>(i);
        tail += std::exp(log_choose(g, k) + log_choose(n - g, r - k) - log_denom);
    }
    return static_cast<double>(tail > 1.0L ? 1.0L : tail);
}

double majority_attack_probability_product_form(const AttackScenario& s) {
    check_scenario(s);
    const long double n = static_cast<long double>(s.total_users);
    const long double g = static_cast<long double>(s.malicious);
    long double tail = 0.0L;
    for (std::uint64_t i = s.majority; i <= s.committee_size; ++i) {
        if (i > s.malicious) break;
        if (s.committee_size - i > s.total_users - s.malicious) continue;
        long double p = small_choose(s.committee_size, i);
        for (std::uint64_t k = 0; k < i; ++k)
            p *= (g - static_cast<long double>(k)) / (n - static_cast<long double>(k));
        for (std::uint64_t j = i; j < s.committee_size; ++j)
            p *= (n - (g - static_cast<long double>(i)) - static_cast<long double>(j)) /
                 (n - static_cast<long double>(j));
        tail += p;
    }
    return static_cast<double>(tail > 1.0L ? 1.0L : tail);
}

double worst_case_limit(std::uint64_t committee_size, std::uint64_t majority) {
    long double tail = 0.0L;
    for (std::uint64_t i = majority; i <= committee_size; ++i) {
        tail += small_choose(committee_size, i) *
                std::pow(1.0L / 3.0L, static_cast<long double>(i)) *
                std::pow(2.0L / 3.0L, static_cast<long double>(committee_size - i));
    }
    return static_cast<double>(tail);
}

static bool attack_trial(const AttackScenario& s, RngStream rng) {
    // Draw r users without replacement; the first g indices are malicious.
    RngStream stream = rng;
    auto picks = sample_without_replacement(s.total_users, s.committee_size, stream);
    std::uint64_t hits = 0;
    for (std::size_t idx : picks)
        if (idx < s.malicious) ++hits;
    return hits >= s.majority;
}

MonteCarloResult monte_carlo_attack(const AttackScenario& s, std::uint64_t trials,
                                    std::uint64_t seed, unsigned workers) {
    check_scenario(s);
    if (trials == 0) throw std::invalid_argument("monte_carlo_attack: trials must be >= 1");
    if (workers == 0) workers = 1;

    const RngStream master(seed);
    auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t t = begin; t < end; ++t)
            if (attack_trial(s, master.child(0x6d63ULL, t))) ++hits;
        return hits;
    };

    std::uint64_t hits = 0;
    if (workers == 1) {
        hits = count_range(0, trials);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
            const std::uint64_t end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back([&, w, begin, end] { partial[w] = count_range(begin, end); });
        }
        for (auto& th : pool) th.join();
        for (std::uint64_t h : partial) hits += h;
    }

    MonteCarloResult out;
    out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    out.standard_error =
        std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    return out;
}

std::vector<CurvePoint> convergence_curve(const std::vector<std::uint64_t>& n_values,
                                          double fraction, std::uint64_t committee_size,
                                          std::uint64_t majority) {
    std::vector<CurvePoint> out;
    out.reserve(n_values.size());
    for (std::uint64_t n : n_values) {
        if (n < committee_size) throw InvalidScenarioError("curve point n below committee size");
        AttackScenario s{n, static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * fraction)),
                         committee_size, majority};
        out.push_back({n, majority_attack_probability(s)});
    }
    return out;
}

}  // namespace decentpeer
