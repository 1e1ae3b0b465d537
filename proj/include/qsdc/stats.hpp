#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace qsdc::stats {

/// Regularized upper incomplete gamma Q(a, x), series/continued-fraction
/// split at x = a + 1.
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with `dof` degrees of
/// freedom, i.e. the p-value of an observed statistic.
inline double chi_square_sf(double statistic, int dof) {
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

/// Pearson chi-square statistic of observed counts against a uniform
/// distribution over the same cells.
double chi_square_uniform(const std::vector<std::uint64_t>& counts);

/// Total variation distance between two empirical count tables of equal size.
double total_variation(const std::vector<std::uint64_t>& a,
                       const std::vector<std::uint64_t>& b);

/// Plug-in mutual information (bits) of a joint count table, rows indexed by
/// the first variable. Miller-Madow bias correction applied, clamped at 0;
/// without it the plug-in estimate of a zero-information table sits at about
/// (|S|-1)(|E|-1) / (2 N ln 2) bits above zero.
double mutual_information_bits(const std::vector<std::vector<std::uint64_t>>& joint);

/// |p_hat - p| <= sigmas * sqrt(p (1-p) / n), the binomial standard-error gate.
bool within_standard_error(double p_hat, double p, std::uint64_t n, double sigmas);

} // namespace qsdc::stats
