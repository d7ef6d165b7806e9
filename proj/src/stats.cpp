#include "remile/stats.hpp"

#include "remile/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace remile::stats {

double pearson_r(const std::vector<std::pair<double, double>>& pairs, const std::string& x_name,
                 const std::string& y_name)
{
    const auto n = pairs.size();
    if (n < 3)
        throw InsufficientDataError("correlation needs at least 3 complete pairs, got " +
                                    std::to_string(n));

    double mx = 0, my = 0;
    for (const auto& [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxy = 0, sxx = 0, syy = 0;
    for (const auto& [x, y] : pairs) {
        const double dx = x - mx;
        const double dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0)
        throw DegenerateInputError("zero variance in '" + x_name + "'");
    if (syy == 0)
        throw DegenerateInputError("zero variance in '" + y_name + "'");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double t_statistic(double r, int n)
{
    if (n < 3)
        throw InsufficientDataError("t statistic needs n >= 3");
    if (std::abs(r) >= 1.0)
        return std::copysign(std::numeric_limits<double>::infinity(), r);
    return r * std::sqrt((n - 2) / (1.0 - r * r));
}

namespace {

// Continued fraction for I_x(a, b), modified Lentz. Converges fast for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double x, double a, double b)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-15;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= eps)
            return h;
    }
    throw NumericalError("incomplete beta continued fraction did not converge for x=" +
                         std::to_string(x) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
}

} // namespace

double regularized_incomplete_beta(double x, double a, double b)
{
    if (!(a > 0) || !(b > 0))
        throw ConfigError("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw ConfigError("incomplete beta needs 0 <= x <= 1");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    double value;
    if (x <= (a + 1.0) / (a + b + 2.0))
        value = front * beta_continued_fraction(x, a, b) / a;
    else
        value = 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
    return std::clamp(value, 0.0, 1.0);
}

TailProbabilities t_tail_p(double t, double df)
{
    if (!(df >= 1.0))
        throw ConfigError("Student t needs df >= 1");
    if (std::isnan(t))
        throw NumericalError("t statistic is NaN");
    if (std::isinf(t))
        return {0.0, 0.0};
    const double p_two = regularized_incomplete_beta(df / (df + t * t), df / 2.0, 0.5);
    return {p_two / 2.0, p_two};
}

CorrelationResult correlate(const PairedSample& sample)
{
    if (sample.xs.size() != sample.ys.size())
        throw DataError("paired sample has unequal lengths");

    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < sample.xs.size(); ++i)
        if (sample.xs[i] && sample.ys[i])
            pairs.emplace_back(*sample.xs[i], *sample.ys[i]);

    CorrelationResult res;
    res.n = static_cast<int>(pairs.size());
    res.r = pearson_r(pairs, sample.x_name, sample.y_name);
    res.df = res.n - 2;
    res.t = t_statistic(res.r, res.n);
    res.degenerate = std::isinf(res.t);
    const auto p = t_tail_p(res.t, res.df);
    res.p_one = p.p_one;
    res.p_two = p.p_two;
    return res;
}

} // namespace remile::stats
