// Experiment runner for tensorized random projections.
//
// Exit status: 0 success, 1 configuration error, 2 verification failure.

#include "tensorjl/bench/config.hpp"
#include "tensorjl/bench/csv.hpp"
#include "tensorjl/bench/experiments.hpp"
#include "tensorjl/error.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitVerifyFailed = 2;

struct Overrides {
    std::string experiment = "distortion";
    std::string regime = "small";
    std::optional<std::size_t> d;
    std::optional<std::string> orders;
    std::optional<std::string> input_format;
    std::optional<std::size_t> input_rank;
    std::optional<std::string> families;
    std::optional<std::string> tt_ranks;
    std::optional<std::string> cp_ranks;
    std::optional<std::string> k_grid;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<double> sparsity;
    std::optional<std::string> dataset;
    bool fixed_input = false;
    std::optional<std::size_t> oracle_cap;
    std::optional<std::size_t> threads;
    std::optional<double> tt_interior_variance_scale;
};

tensorjl::bench::ExperimentConfig build_config(const Overrides& o) {
    using namespace tensorjl::bench;
    ExperimentConfig c = preset(parse_experiment(o.experiment), parse_regime(o.regime));
    if (o.d) c.d = *o.d;
    if (o.orders) c.orders = parse_size_list(*o.orders);
    if (o.input_format) c.input_formats = parse_input_formats(*o.input_format);
    if (o.input_rank) c.input_rank = *o.input_rank;
    if (o.families) c.families = parse_families(*o.families);
    if (o.tt_ranks) c.tt_ranks = parse_size_list(*o.tt_ranks);
    if (o.cp_ranks) c.cp_ranks = parse_size_list(*o.cp_ranks);
    if (o.k_grid) c.k_grid = parse_size_list(*o.k_grid);
    if (o.trials) c.trials = *o.trials;
    if (o.seed) c.seed = *o.seed;
    c.out = o.out;
    if (o.sparsity) c.sparsity = *o.sparsity;
    if (o.dataset) c.dataset = *o.dataset;
    c.fixed_input = o.fixed_input;
    if (o.oracle_cap) c.oracle_cap = *o.oracle_cap;
    if (o.threads) c.threads = *o.threads;
    if (o.tt_interior_variance_scale) c.tt_interior_variance_scale = *o.tt_interior_variance_scale;
    validate(c);
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tensorized Johnson-Lindenstrauss projection experiments"};
    app.set_config("--config", "", "key=value configuration file; command-line flags override it");

    Overrides o;
    app.add_option("--experiment", o.experiment, "distortion | timing | pairwise | verify")->capture_default_str();
    app.add_option("--regime", o.regime, "small (d=15,N=3) | medium (d=3,N=12) | high (d=3,N=25) | custom")
        ->capture_default_str();
    app.add_option("--d", o.d, "mode size d");
    app.add_option("--N", o.orders, "tensor order N (timing accepts a comma list, e.g. 8,11,12,13)")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--input-format", o.input_format, "tt | cp | both");
    app.add_option("--input-rank", o.input_rank, "rank of the low-rank input tensors");
    app.add_option("--families", o.families, "comma list of tt, cp, gaussian, very_sparse")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--tt-ranks", o.tt_ranks, "comma list of TT projection ranks")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--cp-ranks", o.cp_ranks, "comma list of CP projection ranks")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--k-grid", o.k_grid, "comma list of embedding dimensions")->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    app.add_option("--trials", o.trials, "trials per configuration");
    app.add_option("--seed", o.seed, "master seed");
    app.add_option("--out", o.out, "CSV output path (default: stdout)");
    app.add_option("--sparsity", o.sparsity, "very sparse parameter s (default sqrt(D))");
    app.add_option("--dataset", o.dataset, "CIFAR-10 binary batch for the pairwise study");
    app.add_flag("--fixed-input", o.fixed_input, "reuse one input tensor across trials");
    app.add_option("--oracle-cap", o.oracle_cap, "largest element count the runner will densify");
    app.add_option("--threads", o.threads, "worker threads for trials (0 = all cores)");
    // Fault injection for the verify suite; hidden from --help.
    app.add_option("--tt-interior-variance-scale", o.tt_interior_variance_scale)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    tensorjl::bench::ExperimentConfig config;
    try {
        config = build_config(o);
    } catch (const tensorjl::Error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const auto result = tensorjl::bench::run_experiment(config);
        if (config.out.empty()) {
            tensorjl::bench::write_csv(std::cout, result.records);
        } else {
            tensorjl::bench::write_csv_file(config.out, result.records);
        }
        for (const auto& check : result.checks)
            std::cerr << (check.passed ? "PASS " : "FAIL ") << check.name << "  " << check.detail << '\n';
        if (!result.passed()) return kExitVerifyFailed;
    } catch (const tensorjl::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const tensorjl::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
