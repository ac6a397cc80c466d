#ifndef MOWST_HISTOGRAM_HPP
#define MOWST_HISTOGRAM_HPP

#include <string>
#include <vector>

namespace mowst {

/// Discrete distribution: support points in R^d plus nonnegative weights.
/// A histogram is "normalized" when its weights sum to 1 within 1e-9; the
/// transport operations state whether they require that.
struct Histogram {
    std::vector<std::vector<double>> support;
    std::vector<double> weights;

    Histogram() = default;
    Histogram(std::vector<std::vector<double>> s, std::vector<double> w);

    /// 1-D convenience constructor.
    static Histogram from_1d(const std::vector<double>& points, const std::vector<double>& w);

    std::size_t size() const { return weights.size(); }
    std::size_t dimension() const { return support.empty() ? 0 : support.front().size(); }

    double total_mass() const;
    bool is_normalized(double tol = 1e-9) const;

    /// Scales weights so they sum to 1. No-op on zero-mass histograms.
    Histogram normalized() const;

    /// Mean of a 1-D histogram (weighted by normalized weights).
    double mean_1d() const;

    /// Checks the structural invariants (matching lengths, shared dimension,
    /// nonnegative weights) and throws on violation.
    void validate() const;

    bool same_support(const Histogram& other, double tol = 0.0) const;
};

/// Text format for CLI round-trips: header `coord_1,...,coord_d,weight`,
/// one support point per row.
Histogram read_histogram_csv(const std::string& path);
void write_histogram_csv(const std::string& path, const Histogram& h);
std::string histogram_to_csv(const Histogram& h);

} // namespace mowst

#endif
