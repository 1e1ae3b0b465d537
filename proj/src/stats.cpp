#include "qsdc/stats.hpp"

#include <limits>

#include "qsdc/errors.hpp"

namespace qsdc::stats {

namespace {

double gamma_q_series(double a, double x) {
    // P(a,x) by series, returns Q = 1 - P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    // Lentz continued fraction for Q(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw dimension_error("gamma_q domain");
    if (x == 0.0) return 1.0;
    return (x < a + 1.0) ? gamma_q_series(a, x) : gamma_q_contfrac(a, x);
}

double chi_square_uniform(const std::vector<std::uint64_t>& counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    if (counts.empty() || n == 0) return 0.0;
    double expected = static_cast<double>(n) / counts.size();
    double stat = 0.0;
    for (auto c : counts) {
        double dev = c - expected;
        stat += dev * dev / expected;
    }
    return stat;
}

double total_variation(const std::vector<std::uint64_t>& a,
                       const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) throw dimension_error("total_variation table sizes differ");
    std::uint64_t na = 0, nb = 0;
    for (auto c : a) na += c;
    for (auto c : b) nb += c;
    if (na == 0 || nb == 0) throw dimension_error("total_variation of empty sample");
    double tv = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        tv += std::fabs(double(a[i]) / na - double(b[i]) / nb);
    return 0.5 * tv;
}

double mutual_information_bits(const std::vector<std::vector<std::uint64_t>>& joint) {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> row_sum(joint.size(), 0);
    std::vector<std::uint64_t> col_sum;
    for (std::size_t r = 0; r < joint.size(); ++r) {
        if (col_sum.empty()) col_sum.assign(joint[r].size(), 0);
        for (std::size_t c = 0; c < joint[r].size(); ++c) {
            row_sum[r] += joint[r][c];
            col_sum[c] += joint[r][c];
            n += joint[r][c];
        }
    }
    if (n == 0) return 0.0;
    double mi = 0.0;
    for (std::size_t r = 0; r < joint.size(); ++r) {
        if (row_sum[r] == 0) continue;
        for (std::size_t c = 0; c < joint[r].size(); ++c) {
            if (joint[r][c] == 0 || col_sum[c] == 0) continue;
            double pxy = double(joint[r][c]) / n;
            double px = double(row_sum[r]) / n;
            double py = double(col_sum[c]) / n;
            mi += pxy * std::log2(pxy / (px * py));
        }
    }
    // Miller-Madow: subtract (cells-1 - (rows-1) - (cols-1)) / (2 N ln 2).
    std::size_t occupied = 0, rows = 0, cols = 0;
    for (auto s : row_sum) rows += s > 0;
    for (auto s : col_sum) cols += s > 0;
    for (const auto& row : joint)
        for (auto c : row) occupied += c > 0;
    double correction = (double(occupied) - rows - cols + 1) / (2.0 * n * std::log(2.0));
    return std::max(0.0, mi - correction);
}

bool within_standard_error(double p_hat, double p, std::uint64_t n, double sigmas) {
    double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return std::fabs(p_hat - p) <= sigmas * se;
}

} // namespace qsdc::stats
