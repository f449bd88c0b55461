#include "tensorjl/verify.hpp"

#include "tensorjl/error.hpp"
#include "tensorjl/parallel.hpp"
#include "tensorjl/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tensorjl {

namespace {

void require_trials(std::size_t trials, std::size_t minimum, const char* what) {
    if (trials < minimum)
        throw InvalidParameter(std::string(what) + " needs at least " + std::to_string(minimum) + " trials");
}

double squared(double v) { return v * v; }

}  // namespace

MomentReport summarize(std::span<const double> samples, std::size_t blocks) {
    const std::size_t n = samples.size();
    if (n < 2) throw InvalidParameter("summarize needs at least two samples");
    MomentReport r;
    r.trials = n;
    double sum = 0.0;
    for (double v : samples) sum += v;
    r.mean = sum / static_cast<double>(n);

    // Work with centered values; the jackknife needs per-block raw sums.
    double s1 = 0.0, s2 = 0.0;
    for (double v : samples) {
        s1 += v - r.mean;
        s2 += squared(v - r.mean);
    }
    r.variance = (s2 - s1 * s1 / static_cast<double>(n)) / static_cast<double>(n - 1);
    r.mean_stderr = std::sqrt(r.variance / static_cast<double>(n));

    blocks = std::min(blocks, n / 2);
    if (blocks < 2) return r;
    std::vector<double> loo(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t begin = b * n / blocks;
        const std::size_t end = (b + 1) * n / blocks;
        double b1 = 0.0, b2 = 0.0;
        for (std::size_t t = begin; t < end; ++t) {
            b1 += samples[t] - r.mean;
            b2 += squared(samples[t] - r.mean);
        }
        const double m = static_cast<double>(n - (end - begin));
        const double rest1 = s1 - b1;
        loo[b] = (s2 - b2 - rest1 * rest1 / m) / (m - 1.0);
    }
    double loo_mean = 0.0;
    for (double v : loo) loo_mean += v;
    loo_mean /= static_cast<double>(blocks);
    double spread = 0.0;
    for (double v : loo) spread += squared(v - loo_mean);
    r.variance_stderr = std::sqrt(static_cast<double>(blocks - 1) / static_cast<double>(blocks) * spread);
    return r;
}

double distortion(double embedding_sq_norm, double input_sq_norm) {
    if (!(input_sq_norm > 0.0)) throw DegenerateInput("distortion is undefined for a zero input");
    return std::abs(embedding_sq_norm / input_sq_norm - 1.0);
}

double distortion(const Embedding& e, const AnyTensor& x) {
    return distortion(e.squared_norm(), squared(frobenius_norm(x)));
}

ProjectionSampler make_sampler(const FamilySpec& family, const Shape& shape, std::size_t k) {
    return [family, shape, k](Seed seed) { return sample_projection(family, shape, k, seed); };
}

std::vector<double> projected_sq_norms(const ProjectionSampler& sampler, const AnyTensor& x, std::size_t trials,
                                       Seed seed, std::size_t threads) {
    std::vector<double> out(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        const Projection p = sampler(derive_seed(seed, {t}));
        out[t] = project(p, x).squared_norm();
    });
    return out;
}

MomentReport estimate_projection_moments(const ProjectionSampler& sampler, const AnyTensor& x, std::size_t trials,
                                         Seed seed, std::size_t threads) {
    require_trials(trials, 100, "estimate_projection_moments");
    const auto samples = projected_sq_norms(sampler, x, trials, seed, threads);
    return summarize(samples);
}

double variance_bound_tt(std::size_t order, std::size_t rank, std::size_t k) {
    if (order < 1 || rank < 1 || k < 1) throw InvalidParameter("variance_bound_tt: arguments must be positive");
    const double growth = 1.0 + 2.0 / static_cast<double>(rank);
    return (3.0 * std::pow(growth, static_cast<double>(order - 1)) - 1.0) / static_cast<double>(k);
}

double variance_bound_cp(std::size_t order, std::size_t rank, std::size_t k) {
    if (order < 1 || rank < 1 || k < 1) throw InvalidParameter("variance_bound_cp: arguments must be positive");
    const double growth = 1.0 + 2.0 / static_cast<double>(rank);
    return (std::pow(3.0, static_cast<double>(order - 1)) * growth - 1.0) / static_cast<double>(k);
}

double tt_variance_exact_order2(const DenseTensor& x, std::size_t rank, std::size_t k) {
    if (x.shape().order() != 2) throw ShapeMismatch("tt_variance_exact_order2 expects an order-2 tensor");
    if (rank < 1 || k < 1) throw InvalidParameter("tt_variance_exact_order2: rank and k must be positive");
    const std::size_t rows = x.shape().dim(0);
    const std::size_t cols = x.shape().dim(1);
    const Matrix m(rows, cols, std::vector<double>(x.values().begin(), x.values().end()));
    const double norm_sq = squared(m.frobenius_norm());
    // tr((XᵀX)²) = ‖XᵀX‖_F² since XᵀX is symmetric.
    const double trace_term = squared((m.transpose() * m).frobenius_norm());
    return (2.0 * norm_sq * norm_sq + 6.0 / static_cast<double>(rank) * trace_term) / static_cast<double>(k);
}

double min_k_bound_unrounded(const BoundParams& p, FamilyKind format) {
    if (p.order < 1 || p.rank < 1 || !(p.points > 0.0) || !(p.constant > 0.0))
        throw InvalidParameter("min_k_bound: parameters must be positive");
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0) || !(p.delta > 0.0 && p.delta < 1.0))
        throw InvalidParameter("min_k_bound: epsilon and delta must lie in (0, 1)");
    const double n = static_cast<double>(p.order);
    const double growth = 1.0 + 2.0 / static_cast<double>(p.rank);
    const double log_term = std::pow(std::log(p.points / p.delta), 2.0 * n);
    double core = 0.0;
    switch (format) {
        case FamilyKind::TT: core = std::pow(growth, n); break;
        case FamilyKind::CP: core = std::pow(3.0, n - 1.0) * growth; break;
        default: throw InvalidParameter("min_k_bound: format must be TT or CP");
    }
    return p.constant * core * log_term / (p.epsilon * p.epsilon);
}

std::uint64_t min_k_bound(const BoundParams& p, FamilyKind format) {
    const double v = std::ceil(min_k_bound_unrounded(p, format));
    if (!(v < 18446744073709551615.0)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(v);
}

double isserlis_closed_form(double sigma, const Matrix& b) {
    const double nb = squared(b.frobenius_norm());
    return 3.0 * std::pow(sigma, 4) * nb * nb;
}

MomentReport isserlis_check(double sigma, const Matrix& b, std::size_t trials, Seed seed, std::size_t threads) {
    require_trials(trials, 10'000, "isserlis_check");
    std::vector<double> samples(trials);
    const auto& bv = b.data();
    parallel_for(trials, threads, [&](std::size_t t) {
        Xoshiro256 gen(derive_seed(seed, {t}));
        std::normal_distribution<double> normal(0.0, sigma);
        double ip = 0.0;
        for (double v : bv) ip += normal(gen) * v;
        samples[t] = squared(squared(ip));
    });
    return summarize(samples);
}

double wishart_closed_form(double sigma, const Matrix& b, std::size_t n) {
    const double nb = squared(b.frobenius_norm());
    const double trace_term = squared((b.transpose() * b).frobenius_norm());
    const double dn = static_cast<double>(n);
    return dn * std::pow(sigma, 4) * (dn * nb * nb + 2.0 * trace_term);
}

MomentReport wishart_check(double sigma, const Matrix& b, std::size_t n, std::size_t trials, Seed seed,
                           std::size_t threads) {
    require_trials(trials, 10'000, "wishart_check");
    if (n < 1) throw InvalidParameter("wishart_check: n must be positive");
    std::vector<double> samples(trials);
    parallel_for(trials, threads, [&](std::size_t t) {
        Xoshiro256 gen(derive_seed(seed, {t}));
        std::normal_distribution<double> normal(0.0, sigma);
        Matrix a(b.cols(), n);
        for (double& v : a.data()) v = normal(gen);
        samples[t] = squared(squared((b * a).frobenius_norm()));
    });
    return summarize(samples);
}

TailReport tail_check(const ProjectionSampler& sampler, const AnyTensor& x, double epsilon, std::size_t trials,
                      Seed seed, std::size_t threads) {
    require_trials(trials, 1'000, "tail_check");
    const double norm_sq = squared(frobenius_norm(x));
    const auto values = projected_sq_norms(sampler, x, trials, seed, threads);
    TailReport r;
    r.trials = trials;
    for (double v : values)
        if (distortion(v, norm_sq) >= epsilon) ++r.exceedances;
    r.probability = static_cast<double>(r.exceedances) / static_cast<double>(trials);
    r.standard_error = std::sqrt(r.probability * (1.0 - r.probability) / static_cast<double>(trials));
    return r;
}

TailGridReport tail_check_grid(const FamilySpec& family, const AnyTensor& x, std::span<const std::size_t> ks,
                               double epsilon, std::size_t trials, Seed seed, std::size_t threads) {
    TailGridReport g;
    for (std::size_t k : ks) {
        g.ks.push_back(k);
        g.reports.push_back(tail_check(make_sampler(family, shape_of(x), k), x, epsilon, trials, seed, threads));
    }
    for (std::size_t j = 1; j < g.reports.size(); ++j) {
        const auto& prev = g.reports[j - 1];
        const auto& cur = g.reports[j];
        const double slack = 2.0 * std::hypot(prev.standard_error, cur.standard_error);
        if (cur.probability > prev.probability + slack) g.non_increasing = false;
    }
    return g;
}

}  // namespace tensorjl
