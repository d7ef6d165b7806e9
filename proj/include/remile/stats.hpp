#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace remile::stats {

inline constexpr double kBetaTolerance = 1e-12;
inline constexpr int kBetaMaxIterations = 300;

/// Aligned optional observations. Missing values are removed pairwise.
struct PairedSample {
    std::vector<std::string> labels;
    std::vector<std::optional<double>> xs;
    std::vector<std::optional<double>> ys;
    std::string x_name = "x";
    std::string y_name = "y";
};

struct CorrelationResult {
    int n = 0;
    double r = 0.0;
    double t = 0.0;
    int df = 0;
    double p_one = 1.0;
    double p_two = 1.0;
    /// |r| == 1: t is infinite and both p-values are 0.
    bool degenerate = false;
};

/// Pearson product-moment coefficient over complete pairs.
/// Throws InsufficientDataError for fewer than 3 pairs and DegenerateInputError
/// when either variable is constant.
double pearson_r(const std::vector<std::pair<double, double>>& pairs,
                 const std::string& x_name = "x", const std::string& y_name = "y");

/// r * sqrt((n - 2) / (1 - r^2)); infinite with the sign of r when |r| == 1.
double t_statistic(double r, int n);

/// I_x(a, b) by Lentz continued fraction, switching to 1 - I_{1-x}(b, a)
/// above (a + 1) / (a + b + 2). Throws NumericalError when the fraction does
/// not converge within kBetaMaxIterations.
double regularized_incomplete_beta(double x, double a, double b);

struct TailProbabilities {
    double p_one;  ///< tail beyond t on the side of its sign
    double p_two;
};

/// Student-t tail probabilities for statistic t with df degrees of freedom.
TailProbabilities t_tail_p(double t, double df);

/// Pairwise deletion, then r, t and both p-values.
CorrelationResult correlate(const PairedSample& sample);

} // namespace remile::stats
