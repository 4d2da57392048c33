#pragma once

// Internal derivative-free minimizer used by the QMLE fit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>

namespace tailrisk::detail {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5). Stops when the
/// spread of function values across the simplex drops below `ftol` and the
/// simplex diameter below `xtol`.
template <std::size_t N>
SimplexResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                             const std::array<double, N>& start, const std::array<double, N>& step, double ftol,
                             double xtol, std::size_t max_evals) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    SimplexResult<N> res;
    auto eval = [&](const Point& p) {
        ++res.evaluations;
        return f(p);
    };
    pts[0] = start;
    vals[0] = eval(start);
    for (std::size_t i = 0; i < N; ++i) {
        pts[i + 1] = start;
        pts[i + 1][i] += step[i];
        vals[i + 1] = eval(pts[i + 1]);
    }

    std::array<std::size_t, N + 1> order;
    while (res.evaluations < max_evals) {
        for (std::size_t i = 0; i <= N; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0], worst = order[N], second = order[N - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= N; ++i) {
            for (std::size_t j = 0; j < N; ++j) diameter = std::max(diameter, std::abs(pts[i][j] - pts[best][j]));
        }
        if (vals[worst] - vals[best] <= ftol && diameter <= xtol) {
            res.converged = true;
            break;
        }

        Point centroid{};
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < N; ++j) centroid[j] += pts[i][j] / static_cast<double>(N);
        }
        auto along = [&](double t) {
            Point p;
            for (std::size_t j = 0; j < N; ++j) p[j] = centroid[j] + t * (pts[worst][j] - centroid[j]);
            return p;
        };

        const Point xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            const Point xe = along(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        const Point xc = along(outside ? -0.5 : 0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : vals[worst])) {
            pts[worst] = xc;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < N; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
            vals[i] = eval(pts[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= N; ++i) {
        if (vals[i] < vals[best]) best = i;
    }
    res.x = pts[best];
    res.value = vals[best];
    return res;
}

}  // namespace tailrisk::detail
