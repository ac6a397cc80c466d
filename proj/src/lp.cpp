#include "mowst/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mowst::lp {
namespace {

constexpr double kTol = 1e-9;
constexpr long kMaxPivots = 2000000;

// Tableau layout: rows x (cols + 1); last column is the rhs. `basis[r]` is
// the variable basic in row r. The reduced-cost row [z | zval] is kept
// separately; zval tracks the negated objective of the current basis.
struct Tableau {
    std::size_t rows, cols;
    std::vector<double> t;
    std::vector<std::size_t> basis;

    double& at(std::size_t r, std::size_t c) { return t[r * (cols + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return t[r * (cols + 1) + c]; }
    double& rhs(std::size_t r) { return t[r * (cols + 1) + cols]; }
    double rhs(std::size_t r) const { return t[r * (cols + 1) + cols]; }
};

void pivot(Tableau& tab, std::vector<double>& z, double& zval, std::size_t pr, std::size_t pc) {
    const double pivot_val = tab.at(pr, pc);
    const std::size_t width = tab.cols + 1;
    double* prow = &tab.t[pr * width];
    for (std::size_t c = 0; c < width; ++c) prow[c] /= pivot_val;
    for (std::size_t r = 0; r < tab.rows; ++r) {
        if (r == pr) continue;
        double factor = tab.at(r, pc);
        if (factor == 0.0) continue;
        double* row = &tab.t[r * width];
        for (std::size_t c = 0; c < width; ++c) row[c] -= factor * prow[c];
    }
    double zfac = z[pc];
    if (zfac != 0.0) {
        for (std::size_t c = 0; c < tab.cols; ++c) z[c] -= zfac * prow[c];
        zval -= zfac * prow[tab.cols];
    }
    tab.basis[pr] = pc;
}

// Bland-style pivoting: entering = lowest-index column with negative reduced
// cost, leaving = lowest basic index among min-ratio ties.
bool run_simplex(Tableau& tab, std::vector<double>& z, double& zval, std::size_t usable_cols) {
    for (long iter = 0; iter < kMaxPivots; ++iter) {
        std::size_t pc = usable_cols;
        for (std::size_t c = 0; c < usable_cols; ++c) {
            if (z[c] < -kTol) {
                pc = c;
                break;
            }
        }
        if (pc == usable_cols) return true; // optimal

        std::size_t pr = tab.rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < tab.rows; ++r) {
            double a = tab.at(r, pc);
            if (a > kTol) {
                double ratio = tab.rhs(r) / a;
                if (ratio < best_ratio - kTol ||
                    (ratio < best_ratio + kTol && (pr == tab.rows || tab.basis[r] < tab.basis[pr]))) {
                    if (ratio < best_ratio) best_ratio = ratio;
                    pr = r;
                }
            }
        }
        if (pr == tab.rows) return false; // unbounded
        pivot(tab, z, zval, pr, pc);
    }
    throw std::runtime_error("simplex pivot limit exceeded");
}

} // namespace

Solution solve(const Program& p) {
    Solution sol;
    const std::size_t m = p.rows, n = p.cols;

    // Phase 1: artificials on every row, minimize their sum.
    Tableau tab;
    tab.rows = m;
    tab.cols = n + m;
    tab.t.assign(m * (tab.cols + 1), 0.0);
    tab.basis.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        double sign = p.b[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < n; ++c) tab.at(r, c) = sign * p.at(r, c);
        tab.at(r, n + r) = 1.0;
        tab.rhs(r) = sign * p.b[r];
        tab.basis[r] = n + r;
    }

    std::vector<double> z(tab.cols, 0.0);
    double zval = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += tab.at(r, c);
        z[c] = -s;
    }
    for (std::size_t r = 0; r < m; ++r) zval -= tab.rhs(r);

    if (!run_simplex(tab, z, zval, tab.cols)) return sol;
    if (zval < -1e-7) return sol; // artificial mass left: infeasible

    // Swap zero-valued artificials out of the basis where a real column can
    // take their place; rows without one are redundant constraints.
    for (std::size_t r = 0; r < m; ++r) {
        if (tab.basis[r] >= n) {
            for (std::size_t c = 0; c < n; ++c) {
                if (std::abs(tab.at(r, c)) > 1e-8) {
                    pivot(tab, z, zval, r, c);
                    break;
                }
            }
        }
    }

    // Phase 2 over the real columns only.
    std::vector<double> z2(tab.cols, 0.0);
    for (std::size_t c = 0; c < n; ++c) z2[c] = p.c[c];
    double z2val = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        std::size_t bc = tab.basis[r];
        if (bc < n && p.c[bc] != 0.0) {
            double factor = z2[bc];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < tab.cols; ++c) z2[c] -= factor * tab.at(r, c);
            z2val -= factor * tab.rhs(r);
        }
    }

    if (!run_simplex(tab, z2, z2val, n)) return sol; // unbounded

    sol.feasible = true;
    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (tab.basis[r] < n) sol.x[tab.basis[r]] = tab.rhs(r);
    sol.objective = -z2val;
    return sol;
}

} // namespace mowst::lp
