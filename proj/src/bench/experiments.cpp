#include "tensorjl/bench/experiments.hpp"

#include "tensorjl/bench/cifar.hpp"
#include "tensorjl/error.hpp"
#include "tensorjl/parallel.hpp"
#include "tensorjl/projection.hpp"
#include "tensorjl/rng.hpp"
#include "tensorjl/sampling.hpp"
#include "tensorjl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace tensorjl::bench {

namespace {

// Top-level sub-stream tags under the master seed.
constexpr std::uint64_t kInputStream = 1;
constexpr std::uint64_t kProjectionStream = 2;
constexpr std::uint64_t kPointStream = 3;
constexpr std::uint64_t kCheckStream = 4;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct FamilyInstance {
    FamilySpec spec;
    bool ranked = true;
};

std::vector<FamilyInstance> expand_families(const ExperimentConfig& c) {
    std::vector<FamilyInstance> out;
    for (FamilyKind kind : c.families) {
        switch (kind) {
            case FamilyKind::TT:
                for (std::size_t r : c.tt_ranks) out.push_back({{kind, r, 0.0}, true});
                break;
            case FamilyKind::CP:
                for (std::size_t r : c.cp_ranks) out.push_back({{kind, r, 0.0}, true});
                break;
            case FamilyKind::Gaussian: out.push_back({{kind, 1, 0.0}, false}); break;
            case FamilyKind::VerySparse: out.push_back({{kind, 1, c.sparsity}, false}); break;
        }
    }
    return out;
}

Seed projection_seed(const ExperimentConfig& c, const FamilyInstance& f, std::size_t k, std::size_t trial) {
    return derive_seed(Seed{c.seed}, {kProjectionStream, static_cast<std::uint64_t>(f.spec.kind), f.spec.rank, k,
                                      trial});
}

std::size_t resolved_threads(const ExperimentConfig& c) {
    return c.threads == 0 ? default_thread_count() : c.threads;
}

ResultRecord base_record(const ExperimentConfig& c, const std::string& regime, std::size_t threads) {
    ResultRecord r;
    r.experiment = experiment_name(c.experiment);
    r.regime = regime;
    r.seed = c.seed;
    r.rng = kRngTag;
    r.threads = threads;
    return r;
}

ResultRecord family_record(ResultRecord base, const FamilyInstance& f, std::size_t k) {
    base.family = family_name(f.spec.kind);
    if (f.ranked) base.rank = f.spec.rank;
    base.k = k;
    return base;
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

bool RunResult::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

RunResult run_distortion(const ExperimentConfig& c) {
    validate(c);
    const Shape shape = Shape::uniform(c.d, c.orders.front());
    const std::size_t threads = resolved_threads(c);
    const ProjectOptions options{c.oracle_cap};

    // Inputs depend only on the trial index, so every configuration sees the same inputs.
    std::vector<AnyTensor> inputs;
    inputs.reserve(c.trials);
    for (std::size_t t = 0; t < c.trials; ++t) {
        const std::size_t input_index = c.fixed_input ? 0 : t;
        inputs.push_back(random_input({shape, c.input_formats.front(), c.input_rank, true},
                                      derive_seed(Seed{c.seed}, {kInputStream, input_index})));
    }
    std::vector<double> input_sq_norms(c.trials);
    for (std::size_t t = 0; t < c.trials; ++t) input_sq_norms[t] = std::pow(frobenius_norm(inputs[t]), 2);

    RunResult result;
    const ResultRecord base = base_record(c, regime_name(c.regime), threads);
    for (const auto& family : expand_families(c)) {
        for (std::size_t k : c.k_grid) {
            std::vector<double> dist(c.trials), times(c.trials);
            parallel_for(c.trials, threads, [&](std::size_t t) {
                const Projection p = sample_projection(family.spec, shape, k, projection_seed(c, family, k, t));
                const auto start = Clock::now();
                const Embedding e = project(p, inputs[t], options);
                times[t] = seconds_since(start);
                dist[t] = distortion(e.squared_norm(), input_sq_norms[t]);
            });
            ResultRecord row = family_record(base, family, k);
            for (std::size_t t = 0; t < c.trials; ++t) {
                ResultRecord r = row;
                r.trial = t;
                r.metric = "distortion";
                r.value = dist[t];
                r.wall_time_s = times[t];
                result.records.push_back(std::move(r));
            }
            row.metric = "distortion_mean";
            row.value = mean_of(dist);
            result.records.push_back(row);
            row.metric = "distortion_stderr";
            row.value = sample_stddev(dist) / std::sqrt(static_cast<double>(c.trials));
            result.records.push_back(row);
        }
    }
    return result;
}

RunResult run_timing(const ExperimentConfig& c) {
    validate(c);
    const ProjectOptions options{c.oracle_cap};
    RunResult result;
    for (std::size_t order : c.orders) {
        const Shape shape = Shape::uniform(c.d, order);
        std::ostringstream regime;
        regime << regime_name(c.regime) << "/N" << order;
        const ResultRecord base = base_record(c, regime.str(), 1);
        for (InputFormat format : c.input_formats) {
            const AnyTensor x = random_input({shape, format, c.input_rank, true},
                                             derive_seed(Seed{c.seed}, {kInputStream, order,
                                                                        static_cast<std::uint64_t>(format)}));
            const std::string metric = format == InputFormat::TT ? "project_time_tt_input" : "project_time_cp_input";
            for (const auto& family : expand_families(c)) {
                for (std::size_t k : c.k_grid) {
                    const Projection p = sample_projection(family.spec, shape, k, projection_seed(c, family, k, 0));
                    double sink = 0.0;
                    for (std::size_t w = 0; w < c.timing_warmups; ++w) sink += project(p, x, options).values[0];
                    std::vector<double> times(c.timing_repeats);
                    for (double& t : times) {
                        const auto start = Clock::now();
                        sink += project(p, x, options).values[0];
                        t = seconds_since(start);
                    }
                    // Keep the projections observable so they are not optimized away.
                    if (!std::isfinite(sink)) throw Error("timing run produced a non-finite embedding");
                    std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(times.size() / 2),
                                     times.end());
                    ResultRecord r = family_record(base, family, k);
                    r.metric = metric;
                    r.value = static_cast<double>(c.timing_repeats);
                    r.wall_time_s = times[times.size() / 2];
                    result.records.push_back(std::move(r));
                }
            }
        }
    }
    return result;
}

double pairwise_mean_ratio(std::span<const DenseTensor> points, std::span<const std::vector<double>> images) {
    const std::size_t n = points.size();
    if (n < 2) throw InvalidParameter("pairwise ratio needs at least two points");
    if (images.size() != n) throw ShapeMismatch("pairwise ratio: one image per point required");
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto a = points[i].values();
            const auto b = points[j].values();
            if (a.size() != b.size()) throw ShapeMismatch("pairwise ratio: points differ in size");
            double input_dist = 0.0;
            for (std::size_t q = 0; q < a.size(); ++q) input_dist += (a[q] - b[q]) * (a[q] - b[q]);
            if (input_dist == 0.0) throw DegenerateInput("pairwise ratio: coincident points");
            double image_dist = 0.0;
            for (std::size_t q = 0; q < images[i].size(); ++q)
                image_dist += (images[i][q] - images[j][q]) * (images[i][q] - images[j][q]);
            // The ordered pairs (i, j) and (j, i) contribute the same ratio.
            sum += 2.0 * std::sqrt(image_dist / input_dist);
        }
    }
    return sum / static_cast<double>(n * (n - 1));
}

PairwiseStats pairwise_stats(std::size_t points, std::span<const double> per_trial_ratios) {
    if (per_trial_ratios.empty()) throw InvalidParameter("pairwise stats need at least one trial");
    return {points, per_trial_ratios.size(), mean_of(per_trial_ratios), sample_stddev(per_trial_ratios)};
}

RunResult run_pairwise(const ExperimentConfig& c) {
    validate(c);
    const std::size_t threads = resolved_threads(c);
    const Shape shape = cifar_tensor_shape();
    std::vector<DenseTensor> points;
    std::string regime;
    if (!c.dataset.empty()) {
        points = load_cifar10(c.dataset, c.pairwise_points);
        regime = "cifar10";
    } else {
        for (std::size_t i = 0; i < c.pairwise_points; ++i)
            points.push_back(random_dense(shape, derive_seed(Seed{c.seed}, {kPointStream, i}), true));
        regime = "synthetic";
    }
    const std::vector<AnyTensor> inputs(points.begin(), points.end());

    RunResult result;
    const ResultRecord base = base_record(c, regime, threads);
    for (const auto& family : expand_families(c)) {
        for (std::size_t k : c.k_grid) {
            std::vector<double> ratios(c.trials), times(c.trials);
            parallel_for(c.trials, threads, [&](std::size_t t) {
                const Projection p = sample_projection(family.spec, shape, k, projection_seed(c, family, k, t));
                const auto start = Clock::now();
                std::vector<std::vector<double>> images;
                images.reserve(inputs.size());
                for (const auto& x : inputs) images.push_back(project(p, x).values);
                times[t] = seconds_since(start);
                ratios[t] = pairwise_mean_ratio(points, images);
            });
            ResultRecord row = family_record(base, family, k);
            for (std::size_t t = 0; t < c.trials; ++t) {
                ResultRecord r = row;
                r.trial = t;
                r.metric = "pairwise_ratio";
                r.value = ratios[t];
                r.wall_time_s = times[t];
                result.records.push_back(std::move(r));
            }
            const PairwiseStats stats = pairwise_stats(points.size(), ratios);
            row.metric = "pairwise_ratio_mean";
            row.value = stats.mean_ratio;
            result.records.push_back(row);
            row.metric = "pairwise_ratio_std";
            row.value = stats.stddev;
            result.records.push_back(row);
        }
    }
    return result;
}

namespace {

// Collects the records and pass/fail outcome of one verification check.
class CheckWriter {
public:
    CheckWriter(RunResult& result, ResultRecord base) : result_(result), base_(std::move(base)) {}

    void add(const std::string& name, const std::string& family, std::optional<std::size_t> rank,
             std::optional<std::size_t> k, double estimate, double target, double stderr_value, bool passed) {
        ResultRecord r = base_;
        r.family = family;
        r.rank = rank;
        r.k = k;
        const std::pair<const char*, double> values[] = {
            {"estimate", estimate}, {"target", target}, {"stderr", stderr_value}, {"pass", passed ? 1.0 : 0.0}};
        for (const auto& [suffix, value] : values) {
            r.metric = name + ":" + suffix;
            r.value = value;
            result_.records.push_back(r);
        }
        std::ostringstream detail;
        detail << family << (rank ? " R=" + std::to_string(*rank) : "") << (k ? " k=" + std::to_string(*k) : "")
               << ": estimate " << estimate << ", target " << target << ", stderr " << stderr_value;
        result_.checks.push_back({name, passed, detail.str()});
    }

private:
    RunResult& result_;
    ResultRecord base_;
};

}  // namespace

RunResult run_verify(const ExperimentConfig& c) {
    validate(c);
    if (c.trials < 100) throw ConfigError("verification needs at least 100 trials");
    const std::size_t threads = resolved_threads(c);
    const std::size_t order = c.orders.front();
    const Shape shape = Shape::uniform(c.d, order);
    const Seed master{c.seed};
    const std::size_t k = c.k_grid.back();

    RunResult result;
    CheckWriter writer(result, base_record(c, regime_name(c.regime), threads));

    const AnyTensor x = random_input({shape, c.input_formats.front(), c.input_rank, true},
                                     derive_seed(master, {kInputStream, 0}));
    const double norm_sq = std::pow(frobenius_norm(x), 2);

    for (FamilyKind kind : c.families) {
        if (kind != FamilyKind::TT && kind != FamilyKind::CP) continue;
        const std::size_t rank = kind == FamilyKind::TT ? c.tt_ranks.front() : c.cp_ranks.front();
        if (kind == FamilyKind::TT && order == 1 && rank != 1) continue;
        const std::string fam = family_name(kind);
        const auto sampler_for = [&](std::size_t kk) -> ProjectionSampler {
            if (kind == FamilyKind::CP) return make_sampler({kind, rank, 0.0}, shape, kk);
            TTVarianceSchedule schedule = TTVarianceSchedule::standard(order, rank);
            schedule.interior_variance *= c.tt_interior_variance_scale;
            return [shape, rank, kk, schedule](Seed s) -> Projection {
                return sample_tt_projection(shape, rank, kk, s, schedule);
            };
        };
        const Seed family_seed = derive_seed(master, {kCheckStream, static_cast<std::uint64_t>(kind)});

        const MomentReport m = estimate_projection_moments(sampler_for(k), x, c.trials, family_seed, threads);
        writer.add("isometry", fam, rank, k, m.mean, norm_sq, m.mean_stderr,
                   std::abs(m.mean - norm_sq) <= 3.0 * m.mean_stderr);

        const double bound = (kind == FamilyKind::TT ? variance_bound_tt(order, rank, k)
                                                     : variance_bound_cp(order, rank, k)) *
                             norm_sq * norm_sq;
        writer.add("variance_bound", fam, rank, k, m.variance, bound, m.variance_stderr,
                   m.variance <= bound + 4.0 * m.variance_stderr);

        // Tail decay over the k grid with common random numbers, plus the
        // Chebyshev consequence of the variance bound.
        constexpr double kEpsilon = 0.5;
        const std::size_t tail_trials = std::max<std::size_t>(c.trials, 1000);
        std::vector<TailReport> tails;
        for (std::size_t kk : c.k_grid)
            tails.push_back(tail_check(sampler_for(kk), x, kEpsilon, tail_trials, family_seed, threads));
        for (std::size_t j = 0; j < tails.size(); ++j) {
            const std::size_t kk = c.k_grid[j];
            const double chebyshev = (kind == FamilyKind::TT ? variance_bound_tt(order, rank, kk)
                                                             : variance_bound_cp(order, rank, kk)) /
                                     (kEpsilon * kEpsilon);
            bool ok = tails[j].probability <= chebyshev + 3.0 * tails[j].standard_error;
            if (j > 0) {
                const double slack = 2.0 * std::hypot(tails[j - 1].standard_error, tails[j].standard_error);
                ok = ok && tails[j].probability <= tails[j - 1].probability + slack;
            }
            writer.add("tail", fam, rank, kk, tails[j].probability, std::min(1.0, chebyshev),
                       tails[j].standard_error, ok);
        }
    }

    const std::size_t lemma_trials = std::max<std::size_t>(c.trials, 10'000);
    {
        Xoshiro256 gen(derive_seed(master, {kCheckStream, 10}));
        std::normal_distribution<double> normal(0.0, 1.0);
        Matrix b(3, 4);
        for (double& v : b.data()) v = normal(gen);
        const double sigma = 0.5;
        const MomentReport m = isserlis_check(sigma, b, lemma_trials, derive_seed(master, {kCheckStream, 11}), threads);
        const double target = isserlis_closed_form(sigma, b);
        writer.add("isserlis", "lemma", std::nullopt, std::nullopt, m.mean, target, m.mean_stderr,
                   std::abs(m.mean - target) <= 4.0 * m.mean_stderr);
    }
    {
        Xoshiro256 gen(derive_seed(master, {kCheckStream, 12}));
        std::normal_distribution<double> normal(0.0, 1.0);
        Matrix b(2, 3);
        for (double& v : b.data()) v = normal(gen);
        const double sigma = 1.0;
        const std::size_t n = 4;
        const MomentReport m =
            wishart_check(sigma, b, n, lemma_trials, derive_seed(master, {kCheckStream, 13}), threads);
        const double target = wishart_closed_form(sigma, b, n);
        writer.add("wishart", "lemma", std::nullopt, std::nullopt, m.mean, target, m.mean_stderr,
                   std::abs(m.mean - target) <= 4.0 * m.mean_stderr);
    }
    if (std::find(c.families.begin(), c.families.end(), FamilyKind::TT) != c.families.end()) {
        // Exact matrix-input variance: needs ~2e5 trials for a 5% relative tolerance.
        const std::size_t rank = c.tt_ranks.front();
        const std::size_t kk = 10;
        const Shape matrix_shape{6, 6};
        const AnyTensor xm = random_dense(matrix_shape, derive_seed(master, {kCheckStream, 14}), false);
        TTVarianceSchedule schedule = TTVarianceSchedule::standard(2, rank);
        schedule.interior_variance *= c.tt_interior_variance_scale;
        const ProjectionSampler sampler = [&](Seed s) -> Projection {
            return sample_tt_projection(matrix_shape, rank, kk, s, schedule);
        };
        const MomentReport m = estimate_projection_moments(sampler, xm, std::max<std::size_t>(c.trials, 200'000),
                                                           derive_seed(master, {kCheckStream, 15}), threads);
        const double target = tt_variance_exact_order2(std::get<DenseTensor>(xm), rank, kk);
        writer.add("tt_variance_order2", "tt", rank, kk, m.variance, target, m.variance_stderr,
                   std::abs(m.variance - target) <= 0.05 * target);
    }
    return result;
}

RunResult run_experiment(const ExperimentConfig& config) {
    switch (config.experiment) {
        case Experiment::Distortion: return run_distortion(config);
        case Experiment::Timing: return run_timing(config);
        case Experiment::Pairwise: return run_pairwise(config);
        case Experiment::Verify: return run_verify(config);
    }
    throw ConfigError("unknown experiment");
}

double loglog_slope(std::span<const std::size_t> ks, std::span<const double> times) {
    if (ks.size() != times.size() || ks.size() < 2) throw InvalidParameter("loglog_slope needs matching points");
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        mx += std::log(static_cast<double>(ks[i]));
        my += std::log(times[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const double dx = std::log(static_cast<double>(ks[i])) - mx;
        sxy += dx * (std::log(times[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

const ResultRecord* find_record(const std::vector<ResultRecord>& records, const std::string& family,
                                std::optional<std::size_t> rank, std::optional<std::size_t> k,
                                const std::string& metric, const std::string& regime) {
    for (const auto& r : records) {
        if (r.family == family && r.rank == rank && r.k == k && r.metric == metric &&
            (regime.empty() || r.regime == regime))
            return &r;
    }
    return nullptr;
}

}  // namespace tensorjl::bench
