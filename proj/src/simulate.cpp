#include "tailrisk/simulate.hpp"

#include "tailrisk/random.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tailrisk::simulate {

ArGarchPath sim_argarch_path(const argarch::ArGarchParams& params, std::size_t n, Innovation innovation,
                             std::uint64_t seed) {
    params.validate();
    if (innovation.kind == Innovation::Kind::student_t && !(innovation.df > 2.0)) {
        throw std::invalid_argument("sim_argarch: Student-t innovations need df > 2");
    }
    auto eng = make_engine(seed);
    std::normal_distribution<double> normal;
    std::student_t_distribution<double> student(innovation.kind == Innovation::Kind::student_t ? innovation.df
                                                                                                : 3.0);
    const double t_scale = innovation.kind == Innovation::Kind::student_t
                               ? std::sqrt((innovation.df - 2.0) / innovation.df)
                               : 1.0;
    auto draw = [&] {
        return innovation.kind == Innovation::Kind::gaussian ? normal(eng) : t_scale * student(eng);
    };

    const auto& p = params;
    double s2 = p.omega / (1.0 - p.a - p.b_coef);
    double prev_x = p.phi != 1.0 ? p.mu / (1.0 - p.phi) : 0.0;
    double prev_a = 0.0;

    ArGarchPath path;
    path.x.reserve(n);
    path.sigma.reserve(n);
    for (std::size_t t = 0; t < kBurnIn + n; ++t) {
        if (t > 0) s2 = p.omega + p.a * prev_a * prev_a + p.b_coef * s2;
        const double sigma = std::sqrt(s2);
        const double a = sigma * draw();
        const double x = p.mu + p.phi * prev_x + a;
        if (t >= kBurnIn) {
            path.x.push_back(x);
            path.sigma.push_back(sigma);
        }
        prev_a = a;
        prev_x = x;
    }
    path.innovation_last = prev_a;
    path.sigma_next = std::sqrt(p.omega + p.a * prev_a * prev_a + p.b_coef * s2);
    return path;
}

std::vector<double> sim_argarch(const argarch::ArGarchParams& params, std::size_t n, Innovation innovation,
                                std::uint64_t seed) {
    return sim_argarch_path(params, n, innovation, seed).x;
}

std::vector<double> sim_pareto(double alpha, std::size_t n, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw std::invalid_argument("sim_pareto: alpha must be positive");
    auto eng = make_engine(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = std::pow(uniform_open(eng), -1.0 / alpha);
    return out;
}

std::vector<double> sim_frechet(double alpha, std::size_t n, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw std::invalid_argument("sim_frechet: alpha must be positive");
    auto eng = make_engine(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = std::pow(-std::log(uniform_open(eng)), -1.0 / alpha);
    return out;
}

std::vector<double> sim_duplicated(const Sampler& base, std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("sim_duplicated: m must be >= 1");
    const std::size_t draws = (n + m - 1) / m;
    const auto values = base(draws, seed);
    if (values.size() < draws) throw std::invalid_argument("sim_duplicated: base sampler returned too few draws");
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; out.size() < n; ++i) {
        for (std::size_t j = 0; j < m && out.size() < n; ++j) out.push_back(values[i]);
    }
    return out;
}

}  // namespace tailrisk::simulate
