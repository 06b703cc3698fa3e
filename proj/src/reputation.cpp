#include "decentpeer/reputation.hpp"

#include <cmath>

namespace decentpeer {

double punishment_factor(std::span<const InteractionRecord> interactions) {
    double honest_sum = 0.0;
    double total_sum = 0.0;
    bool any_faulty = false;
    for (const auto& rec : interactions) {
        if (rec.verdict == Verdict::PartiallyFaulty) continue;
        total_sum += rec.counterparty_reputation;
        if (rec.verdict == Verdict::Honest)
            honest_sum += rec.counterparty_reputation;
        else
            any_faulty = true;
    }
    if (!any_faulty) return 1.0;
    return (1.0 + honest_sum) / (1.0 + total_sum);
}

double g_shift(std::uint64_t active_intervals) {
    if (active_intervals == 0)
        throw std::domain_error("g_shift: t must be >= 1");
    if (active_intervals >= 64) return 2.0; // 2^(1-t) underflows the sum anyway
    return 2.0 - std::ldexp(1.0, 1 - static_cast<int>(active_intervals));
}

double gain_function(double x, std::uint64_t active_intervals, const GainParams& params) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error("gain_function: x must lie in (0,1)");
    const double b = 3.0 - g_shift(active_intervals);
    const double arg = x <= 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
    return params.alpha * std::pow(arg, b);
}

double expertise_adjusted_punishment(double p, double sigma) {
    return p + (1.0 - p) * (1.0 - sigma);
}

double partial_punishment(double p, double pi, double r) {
    const double q = ((1.0 - pi) + pi * p) / 2.0;
    return q + (1.0 - q) * r;
}

UpdateResult update_reputation(const ReputationState& state, const GainParams& params,
                               bool authored_paper, double oracle_pi) {
    if (state.current_interactions.empty() && !authored_paper)
        return {state, false};

    const double base_p = punishment_factor(state.current_interactions);
    // Partial punishments compose multiplicatively on top of the base factor.
    double p = base_p;
    for (const auto& rec : state.current_interactions) {
        if (rec.verdict == Verdict::PartiallyFaulty)
            p *= partial_punishment(base_p, oracle_pi, state.score);
    }

    const std::uint64_t t = state.active_intervals + 1; // t_i during this interval
    const double x = clamp_score(state.score * p);
    const double next = clamp_score(x + gain_function(x, t, params));

    ReputationState out;
    out.score = next;
    out.active_intervals = t;
    return {out, true};
}

}  // namespace decentpeer
