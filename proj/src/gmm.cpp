#include "extscen/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace extscen::gmm {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836; // log(2*pi)
constexpr double kWeightTol = 1e-9;

double log_normal_pdf(double x, double mean, double variance)
{
    const double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(variance) + d * d / variance);
}

double log_normal2_pdf(double x1, double x2, const std::array<double, 2>& mean, const Cov2& c)
{
    const double det = c.v11 * c.v22 - c.v12 * c.v12;
    const double d1 = x1 - mean[0];
    const double d2 = x2 - mean[1];
    const double quad = (d1 * d1 * c.v22 - 2.0 * d1 * d2 * c.v12 + d2 * d2 * c.v11) / det;
    return -kLog2Pi - 0.5 * std::log(det) - 0.5 * quad;
}

double logsumexp(const std::vector<double>& terms)
{
    double m = -std::numeric_limits<double>::infinity();
    for (double t : terms) {
        m = std::max(m, t);
    }
    if (!std::isfinite(m)) {
        return m;
    }
    double sum = 0.0;
    for (double t : terms) {
        sum += std::exp(t - m);
    }
    return m + std::log(sum);
}

double normal_cdf(double x, double mean, double stddev)
{
    return 0.5 * std::erfc(-(x - mean) / (stddev * 1.4142135623730950488));
}

/// Eigenvalues of a symmetric 2x2, largest first.
std::array<double, 2> sym2_eigenvalues(const Cov2& c)
{
    const double tr = c.v11 + c.v22;
    const double disc = std::sqrt(std::max((c.v11 - c.v22) * (c.v11 - c.v22) + 4.0 * c.v12 * c.v12, 0.0));
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

/// Clamps the eigenvalues of a symmetric 2x2 scatter matrix to at least
/// `floor_eig` and reconstructs in the same eigenbasis.
Cov2 clamp_eigenvalues(const Cov2& c, double floor_eig)
{
    const auto eig = sym2_eigenvalues(c);
    if (eig[1] >= floor_eig) {
        return c;
    }
    if (std::abs(c.v12) < 1e-300) {
        return {std::max(c.v11, floor_eig), 0.0, std::max(c.v22, floor_eig)};
    }
    // Eigenvector for eig[0]: (v12, eig0 - v11), normalized.
    double ux = c.v12;
    double uy = eig[0] - c.v11;
    const double norm = std::sqrt(ux * ux + uy * uy);
    ux /= norm;
    uy /= norm;
    const double l1 = std::max(eig[0], floor_eig);
    const double l2 = std::max(eig[1], floor_eig);
    // Sigma = l1*u*u' + l2*v*v' with v = (-uy, ux).
    return {l1 * ux * ux + l2 * uy * uy,
            l1 * ux * uy - l2 * uy * ux,
            l1 * uy * uy + l2 * ux * ux};
}

/// Effective variance floor from the data range, with a fallback for
/// constant data so degenerate fits stay strictly positive definite.
double effective_floor(double configured, double range, double max_abs)
{
    if (configured > 0.0) {
        return configured;
    }
    const double from_range = 1e-8 * range * range; // (1e-4 * range)^2
    if (from_range > 0.0) {
        return from_range;
    }
    const double scale = std::max(1.0, max_abs);
    return std::max(1e-12, 1e-8 * scale * scale);
}

/// k-means++ style D^2 seeding over generic points with a squared-distance
/// callback; returns chosen indices.
template <typename DistFn>
std::vector<std::size_t> kmeanspp_indices(std::size_t n, int k, Rng& rng, DistFn&& sqdist)
{
    std::vector<std::size_t> centers;
    centers.reserve(static_cast<std::size_t>(k));
    centers.push_back(static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n)) % n);
    std::vector<double> d2(n, 0.0);
    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t ci : centers) {
                best = std::min(best, sqdist(i, ci));
            }
            d2[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            const double target = rng.uniform01() * total;
            double acc = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n)) % n;
        }
        centers.push_back(pick);
    }
    return centers;
}

struct EmRun1d {
    GmmModel model;
    double loglik = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;
};

EmRun1d em_1d(std::span<const double> x, int k, double floor_var, const FitConfig& cfg, Rng& rng)
{
    const std::size_t n = x.size();
    EmRun1d run;
    GmmModel& m = run.model;
    m.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
    m.means.resize(static_cast<std::size_t>(k));
    m.variances.resize(static_cast<std::size_t>(k));

    double mean_all = 0.0;
    for (double v : x) {
        mean_all += v;
    }
    mean_all /= static_cast<double>(n);
    double var_all = 0.0;
    for (double v : x) {
        var_all += (v - mean_all) * (v - mean_all);
    }
    var_all = std::max(var_all / static_cast<double>(n), floor_var);

    const auto seeds =
        kmeanspp_indices(n, k, rng, [&](std::size_t i, std::size_t c) {
            const double d = x[i] - x[c];
            return d * d;
        });
    for (int j = 0; j < k; ++j) {
        m.means[static_cast<std::size_t>(j)] = x[seeds[static_cast<std::size_t>(j)]];
        m.variances[static_cast<std::size_t>(j)] = var_all;
    }

    std::vector<double> logp(static_cast<std::size_t>(k));
    std::vector<double> resp(n * static_cast<std::size_t>(k));
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        // E-step
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                const double lw = m.weights[ju] > 0.0
                                      ? std::log(m.weights[ju])
                                      : -std::numeric_limits<double>::infinity();
                logp[ju] = lw + log_normal_pdf(x[i], m.means[ju], m.variances[ju]);
            }
            const double li = logsumexp(logp);
            ll += li;
            for (int j = 0; j < k; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                resp[i * static_cast<std::size_t>(k) + ju] = std::exp(logp[ju] - li);
            }
        }
        run.trace.push_back(ll);
        run.loglik = ll;
        if (iter > 0 && std::abs(ll - prev_ll) <= cfg.tol * (std::abs(prev_ll) + 1e-12)) {
            break;
        }
        if (iter == cfg.max_iters - 1) {
            break; // keep model and reported likelihood consistent
        }
        prev_ll = ll;

        // M-step (variances clamped to the floor, which is the constrained
        // maximizer, so the likelihood stays nondecreasing)
        for (int j = 0; j < k; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            double nk = 0.0;
            double sx = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = resp[i * static_cast<std::size_t>(k) + ju];
                nk += r;
                sx += r * x[i];
            }
            if (nk <= 1e-300) {
                m.weights[ju] = 0.0;
                continue;
            }
            const double mu = sx / nk;
            double sv = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = resp[i * static_cast<std::size_t>(k) + ju];
                const double d = x[i] - mu;
                sv += r * d * d;
            }
            m.weights[ju] = nk / static_cast<double>(n);
            m.means[ju] = mu;
            m.variances[ju] = std::max(sv / nk, floor_var);
        }
    }
    return run;
}

struct EmRun2d {
    BivariateGmmModel model;
    double loglik = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;
};

EmRun2d em_2d(std::span<const std::array<double, 2>> x, int k, double floor_eig,
              const FitConfig& cfg, Rng& rng)
{
    const std::size_t n = x.size();
    EmRun2d run;
    BivariateGmmModel& m = run.model;
    m.weights.assign(static_cast<std::size_t>(k), 1.0 / k);
    m.means.resize(static_cast<std::size_t>(k));
    m.covariances.resize(static_cast<std::size_t>(k));

    std::array<double, 2> mean_all = {0.0, 0.0};
    for (const auto& p : x) {
        mean_all[0] += p[0];
        mean_all[1] += p[1];
    }
    mean_all[0] /= static_cast<double>(n);
    mean_all[1] /= static_cast<double>(n);
    Cov2 cov_all{0.0, 0.0, 0.0};
    for (const auto& p : x) {
        const double d1 = p[0] - mean_all[0];
        const double d2 = p[1] - mean_all[1];
        cov_all.v11 += d1 * d1;
        cov_all.v12 += d1 * d2;
        cov_all.v22 += d2 * d2;
    }
    cov_all.v11 /= static_cast<double>(n);
    cov_all.v12 /= static_cast<double>(n);
    cov_all.v22 /= static_cast<double>(n);
    cov_all = clamp_eigenvalues(cov_all, floor_eig);

    const auto seeds =
        kmeanspp_indices(n, k, rng, [&](std::size_t i, std::size_t c) {
            const double d1 = x[i][0] - x[c][0];
            const double d2 = x[i][1] - x[c][1];
            return d1 * d1 + d2 * d2;
        });
    for (int j = 0; j < k; ++j) {
        m.means[static_cast<std::size_t>(j)] = x[seeds[static_cast<std::size_t>(j)]];
        m.covariances[static_cast<std::size_t>(j)] = cov_all;
    }

    std::vector<double> logp(static_cast<std::size_t>(k));
    std::vector<double> resp(n * static_cast<std::size_t>(k));
    double prev_ll = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (int j = 0; j < k; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                const double lw = m.weights[ju] > 0.0
                                      ? std::log(m.weights[ju])
                                      : -std::numeric_limits<double>::infinity();
                logp[ju] = lw + log_normal2_pdf(x[i][0], x[i][1], m.means[ju], m.covariances[ju]);
            }
            const double li = logsumexp(logp);
            ll += li;
            for (int j = 0; j < k; ++j) {
                const auto ju = static_cast<std::size_t>(j);
                resp[i * static_cast<std::size_t>(k) + ju] = std::exp(logp[ju] - li);
            }
        }
        run.trace.push_back(ll);
        run.loglik = ll;
        if (iter > 0 && std::abs(ll - prev_ll) <= cfg.tol * (std::abs(prev_ll) + 1e-12)) {
            break;
        }
        if (iter == cfg.max_iters - 1) {
            break; // keep model and reported likelihood consistent
        }
        prev_ll = ll;

        for (int j = 0; j < k; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            double nk = 0.0;
            double s1 = 0.0;
            double s2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double r = resp[i * static_cast<std::size_t>(k) + ju];
                nk += r;
                s1 += r * x[i][0];
                s2 += r * x[i][1];
            }
            if (nk <= 1e-300) {
                m.weights[ju] = 0.0;
                continue;
            }
            const double mu1 = s1 / nk;
            const double mu2 = s2 / nk;
            Cov2 s{0.0, 0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i) {
                const double r = resp[i * static_cast<std::size_t>(k) + ju];
                const double d1 = x[i][0] - mu1;
                const double d2 = x[i][1] - mu2;
                s.v11 += r * d1 * d1;
                s.v12 += r * d1 * d2;
                s.v22 += r * d2 * d2;
            }
            s.v11 /= nk;
            s.v12 /= nk;
            s.v22 /= nk;
            m.weights[ju] = nk / static_cast<double>(n);
            m.means[ju] = {mu1, mu2};
            m.covariances[ju] = clamp_eigenvalues(s, floor_eig);
        }
    }
    return run;
}

void check_samples_1d(std::span<const double> samples)
{
    if (samples.size() < 2) {
        throw std::invalid_argument("fit_gmm: need at least 2 samples, got " +
                                    std::to_string(samples.size()));
    }
    for (double v : samples) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("fit_gmm: non-finite sample");
        }
    }
}

} // namespace

void GmmModel::validate(double min_variance) const
{
    const std::size_t kk = weights.size();
    if (kk == 0 || means.size() != kk || variances.size() != kk) {
        throw std::invalid_argument("gmm: inconsistent component arrays");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("gmm: weight out of range");
        }
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > kWeightTol) {
        throw std::invalid_argument("gmm: weights sum to " + std::to_string(wsum));
    }
    for (double v : variances) {
        if (!(v > 0.0) || v < min_variance || !std::isfinite(v)) {
            throw std::invalid_argument("gmm: variance below floor");
        }
    }
    for (double mu : means) {
        if (!std::isfinite(mu)) {
            throw std::invalid_argument("gmm: non-finite mean");
        }
    }
}

void BivariateGmmModel::validate(double min_eigenvalue) const
{
    const std::size_t kk = weights.size();
    if (kk == 0 || means.size() != kk || covariances.size() != kk) {
        throw std::invalid_argument("gmm2: inconsistent component arrays");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("gmm2: weight out of range");
        }
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > kWeightTol) {
        throw std::invalid_argument("gmm2: weights sum to " + std::to_string(wsum));
    }
    for (const auto& c : covariances) {
        const auto eig = sym2_eigenvalues(c);
        if (!(eig[1] > 0.0) || eig[1] < min_eigenvalue || !std::isfinite(eig[0])) {
            throw std::invalid_argument("gmm2: covariance not positive definite above floor");
        }
    }
}

FitResult fit_gmm(std::span<const double> samples, const FitConfig& config)
{
    check_samples_1d(samples);
    if (config.k_max < 1 || config.max_iters < 1 || config.n_init < 1 || !(config.tol > 0.0)) {
        throw std::invalid_argument("fit_gmm: invalid FitConfig");
    }

    FitResult result;
    const auto n = samples.size();
    double lo = samples[0];
    double hi = samples[0];
    double max_abs = 0.0;
    std::size_t distinct_hint = 1;
    for (std::size_t i = 0; i < n; ++i) {
        lo = std::min(lo, samples[i]);
        hi = std::max(hi, samples[i]);
        max_abs = std::max(max_abs, std::abs(samples[i]));
        if (samples[i] != samples[0]) {
            distinct_hint = 2;
        }
    }
    const double floor_var = effective_floor(config.variance_floor, hi - lo, max_abs);
    result.variance_floor = floor_var;

    if (distinct_hint < 2) {
        result.warnings.push_back("all samples identical; returning a single floored component");
        GmmModel m;
        m.weights = {1.0};
        m.means = {samples[0]};
        m.variances = {floor_var};
        double ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ll += log_normal_pdf(samples[i], m.means[0], m.variances[0]);
        }
        result.model = std::move(m);
        result.loglik = ll;
        result.bic = -2.0 * ll + 2.0 * std::log(static_cast<double>(n));
        result.candidates.push_back({1, ll, result.bic});
        result.traces.push_back({1, 0, {ll}});
        return result;
    }

    const int k_cap = std::min<int>(config.k_max, static_cast<int>(n));
    if (n < 2 * static_cast<std::size_t>(config.k_max)) {
        result.warnings.push_back("fewer than 2*k_max samples; order selection may be unstable");
    }

    double best_bic = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_cap; ++k) {
        EmRun1d best_run;
        const int restarts = (k == 1) ? 1 : config.n_init;
        for (int r = 0; r < restarts; ++r) {
            Rng rng(derive_seed(config.seed, 0x1d, static_cast<std::uint64_t>(k),
                                static_cast<std::uint64_t>(r)));
            EmRun1d run = em_1d(samples, k, floor_var, config, rng);
            result.traces.push_back({k, r, run.trace});
            if (run.loglik > best_run.loglik) {
                best_run = std::move(run);
            }
        }
        const double p = 3.0 * k - 1.0;
        const double bic = -2.0 * best_run.loglik + p * std::log(static_cast<double>(n));
        result.candidates.push_back({k, best_run.loglik, bic});
        if (bic < best_bic) {
            best_bic = bic;
            result.model = std::move(best_run.model);
            result.loglik = best_run.loglik;
            result.bic = bic;
        }
    }
    result.model.validate(0.0);
    return result;
}

BivariateFitResult fit_bivariate_gmm(std::span<const std::array<double, 2>> pairs,
                                     const FitConfig& config)
{
    if (pairs.size() < 2) {
        throw std::invalid_argument("fit_bivariate_gmm: need at least 2 pairs, got " +
                                    std::to_string(pairs.size()));
    }
    for (const auto& p : pairs) {
        if (!std::isfinite(p[0]) || !std::isfinite(p[1])) {
            throw std::invalid_argument("fit_bivariate_gmm: non-finite sample");
        }
    }
    if (config.k_max < 1 || config.max_iters < 1 || config.n_init < 1 || !(config.tol > 0.0)) {
        throw std::invalid_argument("fit_bivariate_gmm: invalid FitConfig");
    }

    BivariateFitResult result;
    const auto n = pairs.size();
    double lo1 = pairs[0][0], hi1 = pairs[0][0];
    double lo2 = pairs[0][1], hi2 = pairs[0][1];
    double max_abs = 0.0;
    bool all_same = true;
    for (const auto& p : pairs) {
        lo1 = std::min(lo1, p[0]);
        hi1 = std::max(hi1, p[0]);
        lo2 = std::min(lo2, p[1]);
        hi2 = std::max(hi2, p[1]);
        max_abs = std::max({max_abs, std::abs(p[0]), std::abs(p[1])});
        if (p[0] != pairs[0][0] || p[1] != pairs[0][1]) {
            all_same = false;
        }
    }
    const double range = std::max(hi1 - lo1, hi2 - lo2);
    const double floor_eig = effective_floor(config.variance_floor, range, max_abs);
    result.variance_floor = floor_eig;

    if (all_same) {
        result.warnings.push_back("all pairs identical; returning a single floored component");
        BivariateGmmModel m;
        m.weights = {1.0};
        m.means = {pairs[0]};
        m.covariances = {{floor_eig, 0.0, floor_eig}};
        double ll = 0.0;
        for (const auto& p : pairs) {
            ll += log_normal2_pdf(p[0], p[1], m.means[0], m.covariances[0]);
        }
        result.model = std::move(m);
        result.loglik = ll;
        result.bic = -2.0 * ll + 5.0 * std::log(static_cast<double>(n));
        result.candidates.push_back({1, ll, result.bic});
        result.traces.push_back({1, 0, {ll}});
        return result;
    }

    const int k_cap = std::min<int>(config.k_max, static_cast<int>(n));
    if (n < 2 * static_cast<std::size_t>(config.k_max)) {
        result.warnings.push_back("fewer than 2*k_max pairs; order selection may be unstable");
    }

    double best_bic = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_cap; ++k) {
        EmRun2d best_run;
        const int restarts = (k == 1) ? 1 : config.n_init;
        for (int r = 0; r < restarts; ++r) {
            Rng rng(derive_seed(config.seed, 0x2d, static_cast<std::uint64_t>(k),
                                static_cast<std::uint64_t>(r)));
            EmRun2d run = em_2d(pairs, k, floor_eig, config, rng);
            result.traces.push_back({k, r, run.trace});
            if (run.loglik > best_run.loglik) {
                best_run = std::move(run);
            }
        }
        const double p = 6.0 * k - 1.0;
        const double bic = -2.0 * best_run.loglik + p * std::log(static_cast<double>(n));
        result.candidates.push_back({k, best_run.loglik, bic});
        if (bic < best_bic) {
            best_bic = bic;
            result.model = std::move(best_run.model);
            result.loglik = best_run.loglik;
            result.bic = bic;
        }
    }
    result.model.validate(0.0);
    return result;
}

GmmModel conditional_slice(const BivariateGmmModel& model, double x_prev)
{
    if (!std::isfinite(x_prev)) {
        throw std::invalid_argument("conditional_slice: non-finite slice point");
    }
    const int k = model.k();
    GmmModel cond;
    cond.weights.resize(static_cast<std::size_t>(k));
    cond.means.resize(static_cast<std::size_t>(k));
    cond.variances.resize(static_cast<std::size_t>(k));

    std::vector<double> logw(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const Cov2& c = model.covariances[ju];
        const double lw = model.weights[ju] > 0.0 ? std::log(model.weights[ju])
                                                  : -std::numeric_limits<double>::infinity();
        logw[ju] = lw + log_normal_pdf(x_prev, model.means[ju][0], c.v11);
        const double slope = c.v12 / c.v11;
        cond.means[ju] = model.means[ju][1] + slope * (x_prev - model.means[ju][0]);
        cond.variances[ju] = c.v22 - c.v12 * c.v12 / c.v11;
    }
    const double norm = logsumexp(logw);
    if (std::isfinite(norm)) {
        for (int j = 0; j < k; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            cond.weights[ju] = std::exp(logw[ju] - norm);
        }
    } else {
        // Slice point far enough into the tail that every component weight
        // underflowed; keep the joint weights so the result stays proper.
        cond.weights = model.weights;
    }
    return cond;
}

double log_density(const GmmModel& model, double x)
{
    std::vector<double> terms(model.weights.size());
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        terms[j] = model.weights[j] > 0.0
                       ? std::log(model.weights[j]) + log_normal_pdf(x, model.means[j], model.variances[j])
                       : -std::numeric_limits<double>::infinity();
    }
    return logsumexp(terms);
}

double log_density(const BivariateGmmModel& model, double x1, double x2)
{
    std::vector<double> terms(model.weights.size());
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        terms[j] = model.weights[j] > 0.0
                       ? std::log(model.weights[j]) +
                             log_normal2_pdf(x1, x2, model.means[j], model.covariances[j])
                       : -std::numeric_limits<double>::infinity();
    }
    return logsumexp(terms);
}

double cdf(const GmmModel& model, double x)
{
    double acc = 0.0;
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        acc += model.weights[j] * normal_cdf(x, model.means[j], std::sqrt(model.variances[j]));
    }
    return acc;
}

double sample(const GmmModel& model, Rng& rng)
{
    const double u = rng.uniform01();
    std::size_t pick = model.weights.size() - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        acc += model.weights[j];
        if (u < acc) {
            pick = j;
            break;
        }
    }
    return model.means[pick] + std::sqrt(model.variances[pick]) * rng.normal();
}

std::vector<double> sample_n(const GmmModel& model, std::size_t n, Rng& rng)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = sample(model, rng);
    }
    return out;
}

nlohmann::json to_json(const GmmModel& model)
{
    return nlohmann::json{{"type", "gmm"},
                          {"weights", model.weights},
                          {"means", model.means},
                          {"variances", model.variances}};
}

nlohmann::json to_json(const BivariateGmmModel& model)
{
    nlohmann::json means = nlohmann::json::array();
    nlohmann::json covs = nlohmann::json::array();
    for (std::size_t j = 0; j < model.weights.size(); ++j) {
        means.push_back({model.means[j][0], model.means[j][1]});
        covs.push_back({model.covariances[j].v11, model.covariances[j].v12, model.covariances[j].v22});
    }
    return nlohmann::json{
        {"type", "gmm2"}, {"weights", model.weights}, {"means", means}, {"covariances", covs}};
}

GmmModel gmm_from_json(const nlohmann::json& j)
{
    if (j.value("type", "") != "gmm") {
        throw std::invalid_argument("gmm_from_json: wrong type tag");
    }
    GmmModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.means = j.at("means").get<std::vector<double>>();
    m.variances = j.at("variances").get<std::vector<double>>();
    m.validate(0.0);
    return m;
}

BivariateGmmModel bivariate_gmm_from_json(const nlohmann::json& j)
{
    if (j.value("type", "") != "gmm2") {
        throw std::invalid_argument("bivariate_gmm_from_json: wrong type tag");
    }
    BivariateGmmModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    for (const auto& e : j.at("means")) {
        m.means.push_back({e.at(0).get<double>(), e.at(1).get<double>()});
    }
    for (const auto& e : j.at("covariances")) {
        m.covariances.push_back({e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>()});
    }
    m.validate(0.0);
    return m;
}

} // namespace extscen::gmm
