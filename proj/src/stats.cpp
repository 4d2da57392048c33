#include "tailrisk/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <stdexcept>

namespace tailrisk::stats {

double chi2_sf(double x, double df) {
    if (!(x > 0.0)) return 1.0;
    if (std::isinf(x)) return 0.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(df), x));
}

double chi2_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chi2_quantile: p must lie in (0, 1)");
    return boost::math::quantile(boost::math::chi_squared(df), p);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal(), p);
}

double student_t_cdf(double x, double df) {
    return boost::math::cdf(boost::math::students_t(df), x);
}

}  // namespace tailrisk::stats
