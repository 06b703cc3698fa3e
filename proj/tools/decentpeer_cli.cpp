#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decentpeer/attack.hpp"
#include "decentpeer/game.hpp"
#include "decentpeer/ledger.hpp"
#include "decentpeer/sim.hpp"

namespace fs = std::filesystem;
using namespace decentpeer;

namespace {

constexpr const char* kVersion = "decentpeer 0.1.0";

std::uint64_t parse_seed(const std::string& text) {
    std::size_t pos = 0;
    const int base = text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0 ? 16 : 10;
    const std::uint64_t v = std::stoull(text, &pos, base);
    if (pos != text.size()) throw std::invalid_argument("bad seed: " + text);
    return v;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::string& config_path, std::uint64_t seed) {
    nlohmann::json manifest{{"command", command},
                            {"tool_version", kVersion},
                            {"master_seed", seed},
                            {"output_directory", out_dir.string()}};
    if (!config_path.empty()) {
        manifest["config_path"] = config_path;
        manifest["config_digest"] = file_digest(config_path);
    }
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
}

std::string format_probability(double v) {
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed, bool seed_given,
                 const std::string& out_dir) {
    nlohmann::json config_json;
    WorldConfig config;
    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config file: " << config_path << "\n";
            return 2;
        }
        config_json = nlohmann::json::parse(in);
        config = WorldConfig::from_json(config_json);
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 2;
    }
    if (seed_given) config.master_seed = seed;

    fs::create_directories(out_dir);
    write_manifest(out_dir, "simulate", config_path, config.master_seed);

    Simulation sim(config, (fs::path(out_dir) / "ledger.jsonl").string());
    std::ofstream csv(fs::path(out_dir) / "intervals.csv");
    csv << "interval,user_count,mean_reputation,accepted,rejected,borderline_accepted\n";
    for (std::uint64_t i = 0; i < config.intervals; ++i) {
        const auto report = sim.run_interval();
        csv << report.interval << ',' << report.user_count << ','
            << format_probability(report.mean_reputation) << ',' << report.accepted << ','
            << report.rejected << ',' << report.borderline_accepted << '\n';
    }
    if (!config.honest_majority())
        std::cerr << "note: honest fraction below 2/3, outside the analyzed regime\n";
    std::cout << "world digest: " << sim.world_digest() << "\n";
    return 0;
}

int cmd_recovery(const std::vector<double>& faults, std::uint64_t intervals,
                 std::uint64_t switch_at, std::size_t cohort, double alpha, double pi,
                 std::uint64_t seed, const std::string& out_dir) {
    RecoveryConfig config;
    config.fault_probabilities = faults;
    config.intervals = intervals;
    config.switch_at = switch_at;
    config.cohort_size = cohort;
    config.alpha = alpha;
    config.detection_probability = pi;
    config.seed = seed;

    fs::create_directories(out_dir);
    write_manifest(out_dir, "recovery", "", seed);

    std::ofstream csv(fs::path(out_dir) / "recovery.csv");
    csv << "interval,fault_probability,mean_reputation\n";
    for (const auto& point : recovery_experiment(config))
        csv << point.interval << ',' << format_probability(point.fault_probability) << ','
            << format_probability(point.mean_reputation) << '\n';
    return 0;
}

int cmd_clustering(std::uint64_t n_max, std::uint64_t r, std::uint64_t m, double fraction,
                   std::uint64_t mc_trials, std::uint64_t seed, const std::string& out_dir) {
    fs::create_directories(out_dir);
    write_manifest(out_dir, "clustering", "", seed);

    std::vector<std::uint64_t> n_values;
    for (std::uint64_t n = std::max<std::uint64_t>(r, 3); n <= n_max; n += 3)
        if (n % 3 == 0) n_values.push_back(n);

    const double bound = worst_case_limit(r, m);
    std::ofstream csv(fs::path(out_dir) / "clustering.csv");
    csv << "n,exact_probability,mc_estimate,mc_stderr,limit_17_81\n";
    for (std::uint64_t n : n_values) {
        AttackScenario s{n, static_cast<std::uint64_t>(n * fraction), r, m};
        csv << n << ',' << format_probability(majority_attack_probability(s)) << ',';
        if (mc_trials > 0) {
            const auto mc = monte_carlo_attack(s, mc_trials, seed ^ n);
            csv << format_probability(mc.estimate) << ',' << format_probability(mc.standard_error);
        } else {
            csv << ',';
        }
        csv << ',' << format_probability(bound) << '\n';
    }
    return 0;
}

int cmd_game_check(std::uint64_t instances, double alpha, const std::string& oracle_spec,
                   std::uint64_t seed) {
    const bool in_regime = alpha > 0.0 && alpha < 1.0 / 6.0;
    if (!in_regime)
        std::cout << "alpha " << alpha << " outside (0, 1/6): out-of-regime sweep\n";

    std::optional<OracleParams> oracle;
    if (!oracle_spec.empty()) {
        OracleParams parsed;
        if (std::sscanf(oracle_spec.c_str(), "%lf,%lf", &parsed.pi, &parsed.pi_bar) != 2) {
            std::cerr << "bad --oracle value, expected pi,pi_bar\n";
            return 2;
        }
        oracle = parsed;
        if (parsed.pi_bar <= 1.0 - parsed.pi)
            std::cout << "oracle assumption violated (pi_bar <= 1-pi): instances may fail "
                         "without affecting the exit code\n";
    }

    const GainParams params{alpha};
    RngStream rng(seed);
    std::uint64_t pass = 0;
    for (std::uint64_t k = 0; k < instances; ++k) {
        auto game = build_game(random_player_state(rng), random_player_state(rng), params);
        if (oracle) game = perturb_with_oracle(game, *oracle);
        const auto eq = pure_nash_equilibria(game);
        const bool unique_hh = eq.size() == 1 && eq[0].first == Strategy::Honest &&
                               eq[0].second == Strategy::Honest;
        const bool dominant = game.x() > game.y() && game.a() > game.b();
        if (unique_hh && dominant) ++pass;
    }
    std::cout << pass << "/" << instances << " instances have unique (H,H) with strict dominance\n";
    const bool oracle_in_regime = !oracle || oracle->pi_bar > 1.0 - oracle->pi;
    if (in_regime && oracle_in_regime && pass != instances) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DecentPeeR reputation mechanism simulator"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", seed_text, oracle_spec;
    std::vector<double> faults{0.0, 0.1, 0.3, 0.5, 1.0};
    std::uint64_t intervals = 40, switch_at = 20, n_max = 300, r = 5, m = 3, mc_trials = 0,
                  instances = 1000;
    std::size_t cohort = 200;
    double alpha = 0.05, fraction = 1.0 / 3.0, pi = 0.9;

    auto* simulate = app.add_subcommand("simulate", "Run a full multi-interval world");
    simulate->add_option("config", config_path, "World config JSON")->required();
    simulate->add_option("--seed", seed_text, "Master seed (decimal or 0x-hex)");
    simulate->add_option("--out", out_dir, "Output directory");

    auto* recovery = app.add_subcommand("recovery", "Fault/recovery cohort trajectories");
    recovery->add_option("--faults", faults, "Fault probabilities")->delimiter(',');
    recovery->add_option("--intervals", intervals, "Number of intervals");
    recovery->add_option("--switch-at", switch_at, "Interval at which behavior turns honest");
    recovery->add_option("--cohort", cohort, "Users per cohort");
    recovery->add_option("--alpha", alpha, "Gain cap");
    recovery->add_option("--pi", pi, "Lazy-review detection probability");
    recovery->add_option("--seed", seed_text, "Seed");
    recovery->add_option("--out", out_dir, "Output directory");

    auto* clustering = app.add_subcommand("clustering", "Majority-attack probability curve");
    clustering->add_option("--n-max", n_max, "Largest population size");
    clustering->add_option("--r", r, "Committee size");
    clustering->add_option("--m", m, "Majority count");
    clustering->add_option("--fraction", fraction, "Malicious fraction");
    clustering->add_option("--mc-trials", mc_trials, "Monte Carlo trials per row (0 = exact only)");
    clustering->add_option("--seed", seed_text, "Seed");
    clustering->add_option("--out", out_dir, "Output directory");

    auto* game_check = app.add_subcommand("game-check", "Equilibrium sweep over random instances");
    game_check->add_option("--instances", instances, "Instance count");
    game_check->add_option("--alpha", alpha, "Gain cap");
    game_check->add_option("--oracle", oracle_spec, "pi,pi_bar detection probabilities");
    game_check->add_option("--seed", seed_text, "Seed");

    CLI11_PARSE(app, argc, argv);

    std::uint64_t seed = 0;
    bool seed_given = !seed_text.empty();
    try {
        if (seed_given) seed = parse_seed(seed_text);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, seed, seed_given, out_dir);
        if (recovery->parsed())
            return cmd_recovery(faults, intervals, switch_at, cohort, alpha, pi, seed, out_dir);
        if (clustering->parsed())
            return cmd_clustering(n_max, r, m, fraction, mc_trials, seed, out_dir);
        if (game_check->parsed()) return cmd_game_check(instances, alpha, oracle_spec, seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
