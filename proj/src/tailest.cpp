#include "tailrisk/tailest.hpp"

#include "tailrisk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace tailrisk::tailest {

OrderedSample::OrderedSample(std::span<const double> x) : sorted_(x.begin(), x.end()), n_(x.size()) {
    if (n_ < 2) throw std::invalid_argument("OrderedSample: need at least two observations");
    std::stable_sort(sorted_.begin(), sorted_.end());
}

OrderedSample OrderedSample::upper_tail(std::span<const double> x, std::size_t m) {
    if (x.size() < 2) throw std::invalid_argument("OrderedSample: need at least two observations");
    if (m >= x.size()) return OrderedSample(x);
    OrderedSample s;
    s.n_ = x.size();
    std::vector<double> buf(x.begin(), x.end());
    const auto cut = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() - m);
    std::nth_element(buf.begin(), cut, buf.end());
    s.sorted_.assign(cut, buf.end());
    std::sort(s.sorted_.begin(), s.sorted_.end());
    return s;
}

double OrderedSample::at(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("OrderedSample::at: index out of range");
    const std::size_t offset = n_ - sorted_.size();
    if (i <= offset) throw std::out_of_range("OrderedSample::at: order statistic not stored");
    return sorted_[i - 1 - offset];
}

double OrderedSample::top(std::size_t i) const {
    if (i < 1 || i > sorted_.size()) throw std::out_of_range("OrderedSample::top: index out of range");
    return sorted_[sorted_.size() - i];
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::standard_hill: return "hill";
        case Method::corrected_hill: return "corrected";
        case Method::qq_regression: return "qq";
    }
    return "unknown";
}

Method method_from_string(std::string_view s) {
    if (s == "hill" || s == "standard" || s == "standard_hill") return Method::standard_hill;
    if (s == "corrected" || s == "corrected_hill") return Method::corrected_hill;
    if (s == "qq" || s == "qq_regression") return Method::qq_regression;
    throw std::invalid_argument("unknown tail method '" + std::string(s) + "'");
}

std::vector<QQPoint> pareto_qq_points(std::span<const double> x, std::size_t k) {
    if (k < 1 || k > x.size()) throw std::invalid_argument("pareto_qq_points: k out of range");
    const auto s = OrderedSample::upper_tail(x, k);
    std::vector<QQPoint> pts;
    pts.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) {
        const double v = s.top(i);
        if (!(v > 0.0)) throw DomainError("pareto_qq_points: non-positive value among the top k");
        pts.push_back({-std::log(static_cast<double>(i) / static_cast<double>(k + 1)), std::log(v)});
    }
    return pts;
}

TailFit qq_slope_alpha(std::span<const QQPoint> points) {
    if (points.size() < 2) throw std::invalid_argument("qq_slope_alpha: need at least two points");
    double su = 0.0, sv = 0.0;
    for (const auto& p : points) {
        su += p.u;
        sv += p.v;
    }
    const double n = static_cast<double>(points.size());
    const double mu = su / n, mv = sv / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : points) {
        sxx += (p.u - mu) * (p.u - mu);
        sxy += (p.u - mu) * (p.v - mv);
    }
    if (!(sxx > 0.0)) throw DomainError("qq_slope_alpha: constant abscissa");
    const double slope = sxy / sxx;
    if (!(slope > 0.0)) throw DomainError("qq_slope_alpha: non-positive slope");
    TailFit fit;
    fit.gamma = slope;
    fit.alpha = 1.0 / slope;
    fit.k_alpha = points.size();
    fit.method = Method::qq_regression;
    return fit;
}

LogExcessMoments log_excess_moments(const OrderedSample& s, std::size_t k) {
    if (k < 1 || k >= s.n()) throw std::invalid_argument("hill: k_alpha must satisfy 1 <= k_alpha < n");
    if (k + 1 > s.stored()) throw std::invalid_argument("hill: sample does not store k_alpha + 1 order statistics");
    const double threshold = s.top(k + 1);
    if (!(threshold > 0.0)) throw DomainError("hill: non-positive order statistic among the top k_alpha + 1");
    const double log_thr = std::log(threshold);
    LogExcessMoments m;
    for (std::size_t i = 1; i <= k; ++i) {
        const double e = std::log(s.top(i)) - log_thr;
        m.m1 += e;
        m.m2 += e * e;
    }
    m.m1 /= static_cast<double>(k);
    m.m2 /= static_cast<double>(k);
    return m;
}

TailFit hill(const OrderedSample& s, std::size_t k_alpha) {
    const auto m = log_excess_moments(s, k_alpha);
    if (!(m.m1 > 0.0)) throw DomainError("hill: top k_alpha + 1 values coincide (gamma = 0)");
    TailFit fit;
    fit.gamma = m.m1;
    fit.alpha = 1.0 / m.m1;
    fit.k_alpha = k_alpha;
    fit.method = Method::standard_hill;
    return fit;
}

TailFit hill(std::span<const double> x, std::size_t k_alpha) {
    return hill(OrderedSample::upper_tail(x, k_alpha + 1), k_alpha);
}

TailFit hill_corrected(const OrderedSample& s, std::size_t k_alpha, double rho) {
    if (!(rho < 0.0)) throw std::invalid_argument("hill_corrected: rho must be negative");
    const auto m = log_excess_moments(s, k_alpha);
    if (!(m.m1 > 0.0)) throw DomainError("hill_corrected: top k_alpha + 1 values coincide (gamma = 0)");
    const double t = m.m2 / (2.0 * m.m1);
    const double gamma = (m.m1 - (1.0 - rho) * t) / rho;
    if (!(gamma > 0.0)) {
        throw NonPositiveEstimate("hill_corrected: non-positive corrected gamma at k_alpha = " +
                                      std::to_string(k_alpha),
                                  gamma, m.m1);
    }
    TailFit fit;
    fit.gamma = gamma;
    fit.alpha = 1.0 / gamma;
    fit.k_alpha = k_alpha;
    fit.method = Method::corrected_hill;
    fit.rho = rho;
    return fit;
}

TailFit hill_corrected(std::span<const double> x, std::size_t k_alpha, double rho) {
    return hill_corrected(OrderedSample::upper_tail(x, k_alpha + 1), k_alpha, rho);
}

TailFit fit_tail(const OrderedSample& s, Method method, std::size_t k_alpha, double rho) {
    switch (method) {
        case Method::standard_hill: return hill(s, k_alpha);
        case Method::corrected_hill: return hill_corrected(s, k_alpha, rho);
        case Method::qq_regression: {
            if (k_alpha < 2 || k_alpha > s.stored()) throw std::invalid_argument("fit_tail: k out of range");
            std::vector<QQPoint> pts;
            pts.reserve(k_alpha);
            for (std::size_t i = 1; i <= k_alpha; ++i) {
                const double v = s.top(i);
                if (!(v > 0.0)) throw DomainError("pareto_qq_points: non-positive value among the top k");
                pts.push_back({-std::log(static_cast<double>(i) / static_cast<double>(k_alpha + 1)), std::log(v)});
            }
            return qq_slope_alpha(pts);
        }
    }
    throw std::invalid_argument("fit_tail: unknown method");
}

QuantileEstimate weissman_quantile(const OrderedSample& s, double p, std::size_t k, const TailFit& fit) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("weissman_quantile: p must lie in (0, 1)");
    if (k < 1 || k >= s.n()) throw std::invalid_argument("weissman_quantile: k must satisfy 1 <= k < n");
    if (!(fit.alpha > 0.0)) throw std::invalid_argument("weissman_quantile: alpha must be positive");
    const double base = s.top(k + 1);
    if (!(base > 0.0)) throw DomainError("weissman_quantile: X_(n-k) is not positive");
    const double ratio = static_cast<double>(k) / (static_cast<double>(s.n()) * (1.0 - p));
    QuantileEstimate q;
    q.p = p;
    q.k = k;
    q.value = base * std::pow(ratio, 1.0 / fit.alpha);
    q.tail_fit = fit;
    return q;
}

QuantileEstimate weissman_quantile(std::span<const double> x, double p, std::size_t k, const TailFit& fit) {
    return weissman_quantile(OrderedSample::upper_tail(x, k + 1), p, k, fit);
}

double empirical_quantile(const OrderedSample& s, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("empirical_quantile: p must lie in (0, 1)");
    const double n = static_cast<double>(s.n());
    // n * p can land a hair above an integer in floating point (100 * 0.99).
    auto rank = static_cast<std::size_t>(std::ceil(n * p - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, s.n());
    return s.at(rank);
}

double empirical_quantile(std::span<const double> x, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("empirical_quantile: p must lie in (0, 1)");
    if (x.size() == 1) return x[0];
    if (x.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    const double n = static_cast<double>(x.size());
    const auto rank = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(n * p - 1e-9)), 1, x.size());
    return OrderedSample::upper_tail(x, x.size() - rank + 1).at(rank);
}

}  // namespace tailrisk::tailest
