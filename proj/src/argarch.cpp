#include "tailrisk/argarch.hpp"

#include "optim.hpp"
#include "tailrisk/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <string>

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace tailrisk::argarch {

namespace {

constexpr double kIgarchMargin = 1e-6;

struct SampleMoments {
    double mean = 0.0;
    double var = 0.0;
};

SampleMoments moments(std::span<const double> x) {
    SampleMoments m;
    m.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    for (double v : x) m.var += (v - m.mean) * (v - m.mean);
    m.var /= static_cast<double>(x.size());
    return m;
}

double softplus(double u) { return u > 30.0 ? u : std::log1p(std::exp(u)); }
double softplus_inv(double w) { return w > 30.0 ? w : std::log(std::expm1(w)); }
double logistic(double v) { return 1.0 / (1.0 + std::exp(-v)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

using Raw = std::array<double, 5>;

ArGarchParams decode(const Raw& r) {
    ArGarchParams p;
    p.mu = r[0];
    p.phi = r[1];
    p.omega = softplus(r[2]);
    const double persistence = logistic(r[3]);
    p.a = persistence * logistic(r[4]);
    p.b_coef = persistence - p.a;
    return p;
}

Raw encode(const ArGarchParams& p) {
    const double persistence = std::clamp(p.a + p.b_coef, 1e-6, 1.0 - 1e-9);
    const double share = std::clamp(p.a / persistence, 1e-6, 1.0 - 1e-6);
    return {p.mu, p.phi, softplus_inv(std::max(p.omega, 1e-12)), logit(persistence), logit(share)};
}

// Walks the recursion, calling visit(t, innovation, sigma2) for t = 1..n-1 (0-based).
template <typename Visit>
void recurse(std::span<const double> x, const ArGarchParams& p, const SampleMoments& m, Visit&& visit) {
    double prev_a = x[0] - m.mean;
    double prev_s2 = m.var;
    for (std::size_t t = 1; t < x.size(); ++t) {
        const double s2 = p.omega + p.a * prev_a * prev_a + p.b_coef * prev_s2;
        const double a = x[t] - p.mu - p.phi * x[t - 1];
        visit(t, a, s2);
        prev_a = a;
        prev_s2 = s2;
    }
}

constexpr double kLog2Pi = 1.8378770664093454836;

double loglik_with(std::span<const double> x, const ArGarchParams& p, const SampleMoments& m) {
    double ll = 0.0;
    recurse(x, p, m, [&](std::size_t, double a, double s2) { ll -= 0.5 * (kLog2Pi + std::log(s2) + a * a / s2); });
    return ll;
}

void check_input(std::span<const double> x) {
    if (x.size() < kMinFitLength) {
        throw std::invalid_argument("fit_qmle: need at least " + std::to_string(kMinFitLength) + " observations");
    }
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    if (*mn == *mx) throw std::invalid_argument("fit_qmle: constant series");
}

struct Candidate {
    ArGarchParams params;
    double loglik = -std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    bool converged = false;
};

Candidate optimize_from(std::span<const double> x, const SampleMoments& m, const ArGarchParams& start,
                        const FitOptions& opt) {
    const std::function<double(const Raw&)> objective = [&](const Raw& r) {
        const double ll = loglik_with(x, decode(r), m);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
    };
    const double sd = std::sqrt(m.var);
    const Raw step{0.1 * sd, 0.05, 0.5, 0.5, 0.5};

    Candidate c;
    Raw at = encode(start);
    double previous = std::numeric_limits<double>::infinity();
    // Restart the simplex at the incumbent until a restart no longer improves.
    for (int restart = 0; restart < 6; ++restart) {
        const std::size_t budget = opt.max_evaluations > c.evaluations ? opt.max_evaluations - c.evaluations : 0;
        if (budget == 0) break;
        const auto res = detail::nelder_mead<5>(objective, at, step, opt.tolerance, 1e-7, budget);
        c.evaluations += res.evaluations;
        at = res.x;
        const bool settled = std::abs(previous - res.value) <= opt.tolerance * std::max(1.0, std::abs(res.value));
        previous = res.value;
        c.converged = res.converged;
        if (!res.converged) break;
        if (settled) break;
    }
    c.params = decode(at);
    c.loglik = -previous;
    return c;
}

}  // namespace

bool ArGarchParams::feasible() const noexcept {
    return std::isfinite(mu) && std::isfinite(phi) && omega > 0.0 && a >= 0.0 && b_coef >= 0.0 && a + b_coef < 1.0;
}

void ArGarchParams::validate() const {
    if (!feasible()) {
        throw std::invalid_argument("ArGarchParams: require omega > 0, a >= 0, b_coef >= 0, a + b_coef < 1");
    }
}

double quasi_loglik(std::span<const double> x, const ArGarchParams& params) {
    if (x.size() < 2) throw std::invalid_argument("quasi_loglik: need at least two observations");
    return loglik_with(x, params, moments(x));
}

std::vector<double> quasi_loglik_terms(std::span<const double> x, const ArGarchParams& params) {
    if (x.size() < 2) throw std::invalid_argument("quasi_loglik: need at least two observations");
    std::vector<double> out(x.size() - 1);
    recurse(x, params, moments(x), [&](std::size_t t, double a, double s2) {
        out[t - 1] = -0.5 * (kLog2Pi + std::log(s2) + a * a / s2);
    });
    return out;
}

FilteredSeries filter(std::span<const double> x, const ArGarchParams& params) {
    if (x.size() < 2) throw std::invalid_argument("filter: need at least two observations");
    params.validate();
    FilteredSeries f;
    f.params = params;
    f.sigma.resize(x.size() - 1);
    f.resid.resize(x.size() - 1);
    recurse(x, params, moments(x), [&](std::size_t t, double a, double s2) {
        const double s = std::sqrt(s2);
        f.sigma[t - 1] = s;
        f.resid[t - 1] = a / s;
        f.loglik -= 0.5 * (kLog2Pi + std::log(s2) + a * a / s2);
        f.last_innovation = a;
        f.last_sigma2 = s2;
    });
    return f;
}

FilteredSeries fit_qmle(std::span<const double> x, const std::optional<ArGarchParams>& init,
                        const FitOptions& options) {
    check_input(x);
    const auto m = moments(x);

    Candidate best;
    std::size_t evaluations = 0;
    auto consider = [&](const Candidate& c) {
        evaluations += c.evaluations;
        if (c.converged && c.loglik > best.loglik) best = c;
    };

    if (init && init->feasible()) consider(optimize_from(x, m, *init, options));
    if (!best.converged) {
        const ArGarchParams starts[] = {
            {m.mean, 0.0, 0.05 * m.var, 0.05, 0.90},
            {m.mean, 0.05, 0.10 * m.var, 0.10, 0.80},
            {m.mean, 0.0, 0.30 * m.var, 0.15, 0.55},
        };
        for (const auto& s : starts) consider(optimize_from(x, m, s, options));
    }
    if (!best.converged) throw ConvergenceError("fit_qmle: optimizer did not converge");

    ArGarchParams p = best.params;
    bool near_igarch = false;
    if (p.a + p.b_coef >= 1.0 - kIgarchMargin) {
        near_igarch = true;
        p.b_coef = std::max(0.0, 1.0 - kIgarchMargin - p.a);
    }
    auto f = filter(x, p);
    f.near_igarch = near_igarch;
    f.evaluations = evaluations;
    if (options.std_errors) {
        try {
            f.std_errors = sandwich_std_errors(x, p);
        } catch (const DomainError&) {
            // singular information matrix; leave standard errors unset
        }
    }
    return f;
}

std::array<double, 5> sandwich_std_errors(std::span<const double> x, const ArGarchParams& params) {
    const auto theta = params.to_array();
    std::array<double, 5> h{};
    for (std::size_t i = 0; i < 5; ++i) h[i] = 1e-4 * std::max(std::abs(theta[i]), 1e-2);
    // Keep perturbed points inside the parameter space.
    h[2] = std::min(h[2], 0.5 * theta[2]);
    if (theta[3] > 0.0) h[3] = std::min(h[3], 0.5 * theta[3]);
    if (theta[4] > 0.0) h[4] = std::min(h[4], 0.5 * theta[4]);
    auto at = [&](std::size_t i, double di, std::size_t j, double dj) {
        auto t = theta;
        t[i] += di;
        t[j] += dj;
        return ArGarchParams::from_array(t);
    };

    const auto m = moments(x);
    const std::size_t T = x.size() - 1;

    // Per-observation scores by central differences.
    Eigen::MatrixXd scores(T, 5);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto up = quasi_loglik_terms(x, at(i, h[i], i, 0.0));
        const auto dn = quasi_loglik_terms(x, at(i, -h[i], i, 0.0));
        for (std::size_t t = 0; t < T; ++t) scores(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(i)) =
            (up[t] - dn[t]) / (2.0 * h[i]);
    }
    const Eigen::MatrixXd J = scores.transpose() * scores;

    Eigen::Matrix<double, 5, 5> H;
    const double f0 = loglik_with(x, params, m);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i; j < 5; ++j) {
            double v;
            if (i == j) {
                v = (loglik_with(x, at(i, h[i], i, 0.0), m) - 2.0 * f0 + loglik_with(x, at(i, -h[i], i, 0.0), m)) /
                    (h[i] * h[i]);
            } else {
                v = (loglik_with(x, at(i, h[i], j, h[j]), m) - loglik_with(x, at(i, h[i], j, -h[j]), m) -
                     loglik_with(x, at(i, -h[i], j, h[j]), m) + loglik_with(x, at(i, -h[i], j, -h[j]), m)) /
                    (4.0 * h[i] * h[j]);
            }
            H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
        }
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>> lu(H);
    if (!lu.isInvertible()) throw DomainError("sandwich_std_errors: singular Hessian");
    const Eigen::Matrix<double, 5, 5> Hinv = lu.inverse();
    const Eigen::Matrix<double, 5, 5> cov = Hinv * J * Hinv;
    std::array<double, 5> se{};
    for (std::size_t i = 0; i < 5; ++i) {
        const double v = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        se[i] = v > 0.0 ? std::sqrt(v) : std::numeric_limits<double>::quiet_NaN();
    }
    return se;
}

Forecast forecast_next(const FilteredSeries& f, double x_last) {
    if (f.sigma.empty()) throw std::invalid_argument("forecast_next: empty filtered series");
    const auto& p = f.params;
    Forecast out;
    out.mu_next = p.mu + p.phi * x_last;
    out.sigma_next =
        std::sqrt(p.omega + p.a * f.last_innovation * f.last_innovation + p.b_coef * f.last_sigma2);
    return out;
}

Forecast forecast_next(const FilteredSeries& f, double x_last, double resid_quantile) {
    auto out = forecast_next(f, x_last);
    out.quantile = out.mu_next + out.sigma_next * resid_quantile;
    return out;
}

}  // namespace tailrisk::argarch
