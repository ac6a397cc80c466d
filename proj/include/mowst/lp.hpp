#ifndef MOWST_LP_HPP
#define MOWST_LP_HPP

#include <cstddef>
#include <vector>

namespace mowst::lp {

/// Linear program in standard form: minimize c'x subject to A x = b, x >= 0.
/// Dense two-phase simplex with Bland's rule, which guarantees termination
/// at the cost of speed; intended for the small problems this library
/// builds (a few thousand variables, a few hundred rows).
struct Program {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a; // row-major rows x cols
    std::vector<double> b;
    std::vector<double> c;

    double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
    double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

struct Solution {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

Solution solve(const Program& p);

} // namespace mowst::lp

#endif
