#include "tensorjl/bench/config.hpp"

#include "tensorjl/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <limits>

namespace tensorjl::bench {

namespace {

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> parts;
    while (!s.empty()) {
        const auto comma = s.find(',');
        auto item = s.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) parts.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return parts;
}

[[noreturn]] void bad_value(std::string_view what, std::string_view value) {
    throw ConfigError("invalid " + std::string(what) + ": '" + std::string(value) + "'");
}

}  // namespace

ExperimentConfig preset(Experiment experiment, Regime regime) {
    ExperimentConfig c;
    c.experiment = experiment;
    c.regime = regime;
    switch (regime) {
        case Regime::Small:
            c.d = 15;
            c.orders = {3};
            c.families = {FamilyKind::TT, FamilyKind::CP, FamilyKind::Gaussian};
            break;
        case Regime::Medium:
            c.d = 3;
            c.orders = {12};
            c.families = {FamilyKind::TT, FamilyKind::CP, FamilyKind::VerySparse};
            break;
        case Regime::High:
            c.d = 3;
            c.orders = {25};
            c.families = {FamilyKind::TT, FamilyKind::CP};
            break;
        case Regime::Custom:
            c.d = 3;
            c.orders = {4};
            c.families = {FamilyKind::TT, FamilyKind::CP};
            break;
    }
    switch (experiment) {
        case Experiment::Timing:
            c.input_formats = {InputFormat::TT, InputFormat::CP};
            break;
        case Experiment::Pairwise:
            c.families = {FamilyKind::TT, FamilyKind::CP, FamilyKind::Gaussian};
            break;
        case Experiment::Verify:
            c.trials = 10'000;
            c.input_rank = 2;
            c.tt_ranks = {2};
            c.cp_ranks = {2};
            c.k_grid = {5, 10, 20, 40};
            c.families = {FamilyKind::TT, FamilyKind::CP};
            break;
        case Experiment::Distortion:
            break;
    }
    return c;
}

void validate(const ExperimentConfig& c) {
    if (c.trials == 0) throw ConfigError("trials must be positive");
    if (c.d == 0) throw ConfigError("mode size d must be positive");
    if (c.orders.empty() || std::find(c.orders.begin(), c.orders.end(), 0u) != c.orders.end())
        throw ConfigError("tensor order N must be positive");
    if (c.experiment != Experiment::Timing && c.orders.size() != 1)
        throw ConfigError("only timing runs accept several orders");
    if (c.input_rank == 0) throw ConfigError("input rank must be positive");
    if (c.input_formats.empty()) throw ConfigError("at least one input format is required");
    if (c.families.empty()) throw ConfigError("at least one projection family is required");
    if (c.k_grid.empty() || std::find(c.k_grid.begin(), c.k_grid.end(), 0u) != c.k_grid.end())
        throw ConfigError("k grid must be non-empty with positive entries");
    const auto has = [&](FamilyKind f) { return std::find(c.families.begin(), c.families.end(), f) != c.families.end(); };
    if (has(FamilyKind::TT) && (c.tt_ranks.empty() || std::find(c.tt_ranks.begin(), c.tt_ranks.end(), 0u) != c.tt_ranks.end()))
        throw ConfigError("TT ranks must be non-empty and positive");
    if (has(FamilyKind::CP) && (c.cp_ranks.empty() || std::find(c.cp_ranks.begin(), c.cp_ranks.end(), 0u) != c.cp_ranks.end()))
        throw ConfigError("CP ranks must be non-empty and positive");
    if (c.sparsity != 0.0 && !(c.sparsity >= 1.0)) throw ConfigError("sparsity s must be >= 1");
    if (c.timing_repeats == 0) throw ConfigError("timing repeats must be positive");
    if (c.pairwise_points < 2) throw ConfigError("pairwise study needs at least two points");
    if (!(c.tt_interior_variance_scale > 0.0)) throw ConfigError("variance scale must be positive");

    // Dense baselines need vec(x); the Gaussian one also stores a k x D matrix.
    if (c.experiment == Experiment::Pairwise) return;
    const std::size_t k_max = *std::max_element(c.k_grid.begin(), c.k_grid.end());
    for (std::size_t order : c.orders) {
        const double dim = std::pow(static_cast<double>(c.d), static_cast<double>(order));
        const bool too_big = dim > static_cast<double>(c.oracle_cap);
        if ((has(FamilyKind::VerySparse) || has(FamilyKind::Gaussian)) && too_big) {
            std::ostringstream msg;
            msg << "dense baselines cannot handle D = d^N = " << std::fixed << std::setprecision(0) << dim
                << " above the densification cap " << c.oracle_cap;
            throw ConfigError(msg.str());
        }
        if (has(FamilyKind::Gaussian) && dim * static_cast<double>(k_max) > static_cast<double>(c.oracle_cap))
            throw ConfigError("Gaussian baseline matrix k x D exceeds the densification cap " +
                              std::to_string(c.oracle_cap));
    }
}

Experiment parse_experiment(std::string_view s) {
    if (s == "distortion") return Experiment::Distortion;
    if (s == "timing") return Experiment::Timing;
    if (s == "pairwise") return Experiment::Pairwise;
    if (s == "verify") return Experiment::Verify;
    bad_value("experiment", s);
}

Regime parse_regime(std::string_view s) {
    if (s == "small") return Regime::Small;
    if (s == "medium") return Regime::Medium;
    if (s == "high") return Regime::High;
    if (s == "custom") return Regime::Custom;
    bad_value("regime", s);
}

std::vector<InputFormat> parse_input_formats(std::string_view s) {
    if (s == "tt") return {InputFormat::TT};
    if (s == "cp") return {InputFormat::CP};
    if (s == "both") return {InputFormat::TT, InputFormat::CP};
    bad_value("input format", s);
}

std::vector<FamilyKind> parse_families(std::string_view s) {
    std::vector<FamilyKind> out;
    for (auto item : split_list(s)) {
        if (item == "tt") out.push_back(FamilyKind::TT);
        else if (item == "cp") out.push_back(FamilyKind::CP);
        else if (item == "gaussian") out.push_back(FamilyKind::Gaussian);
        else if (item == "very_sparse") out.push_back(FamilyKind::VerySparse);
        else bad_value("family", item);
    }
    if (out.empty()) bad_value("family list", s);
    return out;
}

std::vector<std::size_t> parse_size_list(std::string_view s) {
    std::vector<std::size_t> out;
    for (auto item : split_list(s)) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size()) bad_value("integer list", s);
        out.push_back(v);
    }
    if (out.empty()) bad_value("integer list", s);
    return out;
}

const char* experiment_name(Experiment e) noexcept {
    switch (e) {
        case Experiment::Distortion: return "distortion";
        case Experiment::Timing: return "timing";
        case Experiment::Pairwise: return "pairwise";
        case Experiment::Verify: return "verify";
    }
    return "unknown";
}

const char* regime_name(Regime r) noexcept {
    switch (r) {
        case Regime::Small: return "small";
        case Regime::Medium: return "medium";
        case Regime::High: return "high";
        case Regime::Custom: return "custom";
    }
    return "unknown";
}

}  // namespace tensorjl::bench
