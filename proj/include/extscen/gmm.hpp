#pragma once

#include "extscen/rng.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace extscen::gmm {

/// Univariate Gaussian mixture. Weights are nonnegative and sum to one;
/// variances are strictly positive.
struct GmmModel {
    std::vector<double> weights;
    std::vector<double> means;
    std::vector<double> variances;

    [[nodiscard]] int k() const { return static_cast<int>(weights.size()); }

    /// Checks the structural invariants (matching sizes, weight simplex
    /// within 1e-9, variances >= min_variance). Throws std::invalid_argument.
    void validate(double min_variance = 0.0) const;
};

/// Symmetric 2x2 covariance, stored as its three free entries.
struct Cov2 {
    double v11 = 1.0;
    double v12 = 0.0;
    double v22 = 1.0;
};

/// Bivariate Gaussian mixture with full covariances.
struct BivariateGmmModel {
    std::vector<double> weights;
    std::vector<std::array<double, 2>> means;
    std::vector<Cov2> covariances;

    [[nodiscard]] int k() const { return static_cast<int>(weights.size()); }

    /// Structural invariants; every covariance must be symmetric positive
    /// definite with eigenvalues >= min_eigenvalue.
    void validate(double min_eigenvalue = 0.0) const;
};

struct FitConfig {
    int k_max = 3;
    int max_iters = 200;
    double tol = 1e-6;           // relative log-likelihood convergence
    double variance_floor = 0.0; // <= 0: derived as (1e-4 * data range)^2
    int n_init = 4;              // random restarts per component count
    std::uint64_t seed = 1;
};

/// Log-likelihood trajectory of one EM run, for convergence diagnostics.
struct EmTrace {
    int k = 0;
    int restart = 0;
    std::vector<double> loglik;
};

/// Score of one candidate component count in the order-selection sweep.
struct KCandidate {
    int k = 0;
    double loglik = 0.0;
    double bic = 0.0;
};

struct FitResult {
    GmmModel model;
    double loglik = 0.0;
    double bic = 0.0;
    double variance_floor = 0.0; // effective floor used by the fit
    std::vector<KCandidate> candidates;
    std::vector<EmTrace> traces;
    std::vector<std::string> warnings;
};

struct BivariateFitResult {
    BivariateGmmModel model;
    double loglik = 0.0;
    double bic = 0.0;
    double variance_floor = 0.0;
    std::vector<KCandidate> candidates;
    std::vector<EmTrace> traces;
    std::vector<std::string> warnings;
};

/// Fits mixtures for every component count in 1..k_max (n_init k-means++
/// seeded EM restarts each, best likelihood kept) and returns the model with
/// the lowest BIC, with 3K-1 free parameters per candidate. Requires at
/// least two samples, all finite. All-identical samples collapse to a
/// single floored component with a warning instead of an error.
FitResult fit_gmm(std::span<const double> samples, const FitConfig& config);

/// Bivariate counterpart with full covariances and 6K-1 free parameters.
/// Covariance updates clamp eigenvalues to the variance floor, so collinear
/// or degenerate data regularizes instead of failing.
BivariateFitResult fit_bivariate_gmm(std::span<const std::array<double, 2>> pairs,
                                     const FitConfig& config);

/// Exact conditional distribution of the second coordinate given the first.
/// Component weights are re-tilted by each component's marginal density at
/// x_prev and renormalized; if every tilt underflows (x_prev far outside the
/// mixture's support) the original weights are kept so the result stays a
/// valid distribution.
GmmModel conditional_slice(const BivariateGmmModel& model, double x_prev);

/// Log density, evaluated with log-sum-exp over components.
double log_density(const GmmModel& model, double x);
double log_density(const BivariateGmmModel& model, double x1, double x2);

/// Mixture CDF (weighted normal CDFs).
double cdf(const GmmModel& model, double x);

/// One draw: categorical component pick, then a normal variate.
/// Consumes three uniforms per draw (one categorical, two for the normal).
double sample(const GmmModel& model, Rng& rng);
std::vector<double> sample_n(const GmmModel& model, std::size_t n, Rng& rng);

nlohmann::json to_json(const GmmModel& model);
nlohmann::json to_json(const BivariateGmmModel& model);
GmmModel gmm_from_json(const nlohmann::json& j);
BivariateGmmModel bivariate_gmm_from_json(const nlohmann::json& j);

} // namespace extscen::gmm
