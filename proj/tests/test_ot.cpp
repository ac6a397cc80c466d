#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "mowst/error.hpp"
#include "mowst/histogram.hpp"
#include "mowst/ot.hpp"
#include "mowst/rng.hpp"

using mowst::Error;
using mowst::Histogram;
using mowst::Rng;
namespace ot = mowst::ot;

namespace {

Histogram dirac(double x) { return Histogram::from_1d({x}, {1.0}); }

} // namespace

TEST_CASE("emd of a histogram with itself is zero") {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        Histogram h = fixtures::random_histogram_1d(rng, 8);
        auto plan = ot::emd_lp(h, h);
        CHECK(plan.cost == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("point masses transport at the ground distance") {
    CHECK(ot::emd_lp(dirac(0.0), dirac(0.0)).cost == 0.0);
    CHECK(ot::emd_lp(dirac(0.0), dirac(1.0)).cost == 1.0);
    CHECK(ot::emd_lp(dirac(0.0), dirac(100.0)).cost == 100.0);
    CHECK(ot::emd_lp(dirac(0.0), dirac(1e-4)).cost == 1e-4);
    CHECK(ot::emd_lp(dirac(0.0), dirac(-3.5)).cost == 3.5);
}

TEST_CASE("emd rejects mass mismatch and empty supports") {
    Histogram a = Histogram::from_1d({0.0, 1.0}, {0.6, 0.4});
    Histogram b = Histogram::from_1d({0.0, 1.0}, {0.6, 0.3});
    CHECK_THROWS_WITH_AS(ot::emd_lp(a, b), doctest::Contains("MassMismatch"), Error);
    Histogram empty;
    CHECK_THROWS_AS(ot::emd_lp(empty, a), Error);
}

TEST_CASE("transport plans satisfy both marginal constraints") {
    Rng rng(2);
    for (int t = 0; t < 25; ++t) {
        Histogram a = fixtures::random_histogram_1d(rng, 9);
        Histogram b = fixtures::random_histogram_1d(rng, 9);
        auto plan = ot::emd_lp(a, b);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(plan.row_sum(i) - a.weights[i]) <= 1e-7);
        for (std::size_t j = 0; j < b.size(); ++j)
            CHECK(std::abs(plan.col_sum(j) - b.weights[j]) <= 1e-7);
        for (double g : plan.gamma) CHECK(g >= 0.0);
    }
}

TEST_CASE("plans stay feasible on multidimensional supports") {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        Histogram a, b;
        for (int i = 0; i < 6; ++i) {
            a.support.push_back({rng.real(0, 10), rng.real(0, 10), rng.real(0, 10)});
            b.support.push_back({rng.real(0, 10), rng.real(0, 10), rng.real(0, 10)});
            a.weights.push_back(1.0 / 6.0);
            b.weights.push_back(1.0 / 6.0);
        }
        auto plan = ot::emd_lp(a, b);
        CHECK(plan.cost >= 0.0);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(std::abs(plan.row_sum(i) - 1.0 / 6.0) <= 1e-7);
            CHECK(std::abs(plan.col_sum(i) - 1.0 / 6.0) <= 1e-7);
        }
    }
}

TEST_CASE("closed form matches the linear program on random 1-D pairs") {
    Rng rng(4);
    for (int t = 0; t < 300; ++t) {
        Histogram a = fixtures::random_histogram_1d(rng, 10);
        Histogram b = fixtures::random_histogram_1d(rng, 10);
        double w_sort = ot::wasserstein_1d(a, b);
        double w_lp = ot::emd_lp(a, b).cost;
        CHECK(std::abs(w_sort - w_lp) <= 1e-9);
    }
}

TEST_CASE("closed form matches the solver for other exponents too") {
    Rng rng(14);
    for (int t = 0; t < 40; ++t) {
        Histogram a = fixtures::random_histogram_1d(rng, 8);
        Histogram b = fixtures::random_histogram_1d(rng, 8);
        double w_sort = ot::wasserstein_1d(a, b, 2.0);
        double w_lp = ot::emd_lp(a, b, ot::GroundMetric::euclidean(2.0)).cost;
        CHECK(w_sort == doctest::Approx(w_lp).epsilon(1e-9));
    }
}

TEST_CASE("closed form requires scalar supports") {
    Histogram a;
    a.support = {{0.0, 0.0}};
    a.weights = {1.0};
    CHECK_THROWS_WITH_AS(ot::wasserstein_1d(a, a), doctest::Contains("DimensionError"), Error);
}

TEST_CASE("translating a histogram moves it by exactly the shift") {
    Rng rng(5);
    for (double shift : {0.25, 3.0, 42.0}) {
        Histogram a = fixtures::random_histogram_1d(rng, 7);
        Histogram b = a;
        for (auto& p : b.support) p[0] += shift;
        CHECK(ot::wasserstein_1d(a, b) == doctest::Approx(shift).epsilon(1e-12));
    }
}

TEST_CASE("network-level hop distributions compare like the solver says") {
    // Two graph-level distance distributions on hops 1..8 with rounded
    // weights, hence the renormalization before comparing.
    Histogram p = Histogram::from_1d({1, 2, 3, 4, 5, 6, 7, 8},
                                     {0.147, 0.263, 0.297, 0.177, 0.083, 0.030, 0.003, 0.0})
                      .normalized();
    Histogram q = Histogram::from_1d({1, 2, 3, 4, 5, 6, 7, 8},
                                     {0.133, 0.237, 0.290, 0.183, 0.100, 0.043, 0.010, 0.003})
                      .normalized();
    double w_sort = ot::wasserstein_1d(p, q);
    double w_lp = ot::emd_lp(p, q).cost;
    CHECK(w_sort > 0.0);
    CHECK(std::abs(w_sort - w_lp) <= 1e-9);
}

TEST_CASE("solver survives degenerate ties and larger supports") {
    Rng rng(15);
    SUBCASE("uniform weights everywhere force degenerate pivots") {
        for (int t = 0; t < 50; ++t) {
            std::size_t m = 2 + rng.index(40);
            std::vector<double> pts1(m), pts2(m), w(m, 1.0 / static_cast<double>(m));
            for (std::size_t i = 0; i < m; ++i) {
                pts1[i] = rng.real(0, 50);
                pts2[i] = rng.real(0, 50);
            }
            Histogram a = Histogram::from_1d(pts1, w);
            Histogram b = Histogram::from_1d(pts2, w);
            CHECK(std::abs(ot::wasserstein_1d(a, b) - ot::emd_lp(a, b).cost) <= 1e-9);
        }
    }
    SUBCASE("identical coordinates collapse to zero cost") {
        std::vector<double> pts(12, 3.5), w(12, 1.0 / 12.0);
        Histogram a = Histogram::from_1d(pts, w);
        CHECK(ot::emd_lp(a, a).cost == doctest::Approx(0.0));
    }
    SUBCASE("two hundred bins stay exact and fast") {
        std::size_t m = 200;
        std::vector<double> pts(m), w1(m), w2(m);
        double s1 = 0, s2 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            pts[i] = static_cast<double>(i);
            w1[i] = rng.real01() + 1e-3;
            w2[i] = rng.real01() + 1e-3;
            s1 += w1[i];
            s2 += w2[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            w1[i] /= s1;
            w2[i] /= s2;
        }
        Histogram a = Histogram::from_1d(pts, w1);
        Histogram b = Histogram::from_1d(pts, w2);
        CHECK(std::abs(ot::wasserstein_1d(a, b) - ot::emd_lp(a, b).cost) <= 1e-8);
    }
    SUBCASE("zero-weight bins carry no flow") {
        Histogram a = Histogram::from_1d({0, 1, 2, 3}, {0.5, 0.0, 0.5, 0.0});
        Histogram b = Histogram::from_1d({0, 1, 2, 3}, {0.0, 0.5, 0.0, 0.5});
        auto plan = ot::emd_lp(a, b);
        CHECK(plan.cost == doctest::Approx(1.0));
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(plan.at(1, j) == 0.0);
            CHECK(plan.at(3, j) == 0.0);
        }
        CHECK(std::abs(plan.row_sum(0) - 0.5) <= 1e-12);
    }
}

TEST_CASE("metric axioms hold on random histogram triples") {
    Rng rng(6);
    for (int t = 0; t < 60; ++t) {
        Histogram a = fixtures::random_histogram_1d(rng, 10);
        Histogram b = fixtures::random_histogram_1d(rng, 10);
        Histogram c = fixtures::random_histogram_1d(rng, 10);
        double ab = ot::emd_lp(a, b).cost;
        double ba = ot::emd_lp(b, a).cost;
        double ac = ot::emd_lp(a, c).cost;
        double cb = ot::emd_lp(c, b).cost;
        CHECK(ab >= 0.0);
        CHECK(std::abs(ab - ba) <= 1e-9);
        CHECK(ab <= ac + cb + 1e-7);
    }
}

TEST_CASE("barycenter of identical inputs is the input") {
    Histogram h = Histogram::from_1d({0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4});
    auto bary = ot::barycenter_fixed_support({h, h, h});
    REQUIRE(bary.size() == h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(bary.weights[i] == doctest::Approx(h.weights[i]).epsilon(1e-9));
}

TEST_CASE("barycenter of a single input is that input") {
    Histogram h = Histogram::from_1d({5, 9}, {0.25, 0.75});
    auto bary = ot::barycenter_fixed_support({h});
    CHECK(bary.weights == h.weights);
}

TEST_CASE("barycenter of two opposite point masses lands in the middle") {
    Histogram a = Histogram::from_1d({0, 1, 2}, {1.0, 0.0, 0.0});
    Histogram b = Histogram::from_1d({0, 1, 2}, {0.0, 0.0, 1.0});
    auto bary = ot::barycenter_fixed_support({a, b});
    CHECK(bary.weights[0] == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(bary.weights[1] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(bary.weights[2] == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("barycenter validates inputs") {
    Histogram a = Histogram::from_1d({0, 1}, {0.5, 0.5});
    Histogram b = Histogram::from_1d({0, 2}, {0.5, 0.5});
    CHECK_THROWS_WITH_AS(ot::barycenter_fixed_support({}), doctest::Contains("EmptyInput"), Error);
    CHECK_THROWS_WITH_AS(ot::barycenter_fixed_support({a, b}),
                         doctest::Contains("SupportMismatch"), Error);
    CHECK_THROWS_AS(ot::barycenter_fixed_support({a, a}, {0.9, 0.9}), Error);
}

TEST_CASE("barycenter objective beats a dense grid search") {
    // Independent check: no weight vector on a fine simplex grid does better
    // than the joint linear program's solution.
    Histogram p1 = Histogram::from_1d({0, 1, 2}, {0.7, 0.2, 0.1});
    Histogram p2 = Histogram::from_1d({0, 1, 2}, {0.1, 0.1, 0.8});
    std::vector<double> lambdas = {0.5, 0.5};

    auto objective = [&](const Histogram& w) {
        double acc = 0.0;
        const std::vector<Histogram> inputs = {p1, p2};
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            double w2 = ot::wasserstein_1d(w, inputs[k], 2.0);
            acc += lambdas[k] * w2 * w2;
        }
        return acc;
    };

    Histogram bary = ot::barycenter_fixed_support({p1, p2}, lambdas);
    double lp_obj = objective(bary);

    double best_grid = 1e300;
    const int steps = 60;
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; i + j <= steps; ++j) {
            double w0 = static_cast<double>(i) / steps;
            double w1 = static_cast<double>(j) / steps;
            Histogram w = Histogram::from_1d({0, 1, 2}, {w0, w1, std::max(0.0, 1.0 - w0 - w1)});
            best_grid = std::min(best_grid, objective(w));
        }
    CHECK(lp_obj <= best_grid + 1e-9);
    CHECK(best_grid - lp_obj <= 0.05); // grid resolution slack
}

TEST_CASE("barycenter of translated shapes averages the locations") {
    // One shape shifted along a shared fine grid; the barycenter mean should
    // match the lambda-weighted average of the input means within one step.
    std::vector<double> grid(25);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<double>(i);
    auto shape_at = [&](std::size_t offset) {
        std::vector<double> w(grid.size(), 0.0);
        w[offset] = 0.25;
        w[offset + 1] = 0.5;
        w[offset + 2] = 0.25;
        return Histogram::from_1d(grid, w);
    };
    std::vector<Histogram> inputs = {shape_at(2), shape_at(10), shape_at(17)};
    std::vector<double> lambdas = {0.25, 0.25, 0.5};
    double want_mean = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) want_mean += lambdas[k] * inputs[k].mean_1d();

    auto bary = ot::barycenter_fixed_support(inputs, lambdas);
    CHECK(std::abs(bary.mean_1d() - want_mean) <= 1.0);
}

TEST_CASE("wasserstein k-means separates well-separated groups") {
    Rng rng(8);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(10.0 * i);

    std::vector<Histogram> hists;
    for (int t = 0; t < 4; ++t) { // group near coordinate 0
        std::vector<double> w(grid.size(), 0.0);
        double a = rng.real(0.5, 1.0);
        w[0] = a;
        w[1] = 1.0 - a;
        hists.push_back(Histogram::from_1d(grid, w));
    }
    for (int t = 0; t < 4; ++t) { // group near coordinate 100
        std::vector<double> w(grid.size(), 0.0);
        double a = rng.real(0.5, 1.0);
        w[10] = a;
        w[9] = 1.0 - a;
        hists.push_back(Histogram::from_1d(grid, w));
    }

    auto assign = ot::wst_kmeans(hists, 2, 50, 99);

    // Oracle: the bipartition minimizing within-cluster pairwise W1 sums.
    auto dists = ot::pairwise_wasserstein_1d_serial(hists);
    const std::size_t n = hists.size();
    double best = 1e300;
    unsigned best_mask = 0;
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                bool side_i = i == 0 ? false : (mask >> (i - 1)) & 1;
                bool side_j = j == 0 ? false : (mask >> (j - 1)) & 1;
                if (side_i == side_j) obj += dists[i * n + j];
            }
        if (obj < best) {
            best = obj;
            best_mask = mask;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool same_ours = assign[i] == assign[j];
            bool side_i = i == 0 ? false : (best_mask >> (i - 1)) & 1;
            bool side_j = j == 0 ? false : (best_mask >> (j - 1)) & 1;
            CHECK(same_ours == (side_i == side_j));
        }
}

TEST_CASE("k-means objective never increases between iterations") {
    Rng rng(9);
    std::vector<double> grid;
    for (int i = 0; i < 8; ++i) grid.push_back(static_cast<double>(i));
    std::vector<Histogram> hists;
    for (int t = 0; t < 10; ++t) {
        std::vector<double> w(grid.size());
        double total = 0.0;
        for (double& x : w) {
            x = rng.real01();
            total += x;
        }
        for (double& x : w) x /= total;
        hists.push_back(Histogram::from_1d(grid, w));
    }
    auto res = ot::wst_kmeans_detailed(hists, 3, 30, 1234);
    for (std::size_t i = 1; i < res.objective_history.size(); ++i)
        CHECK(res.objective_history[i] <= res.objective_history[i - 1] + 1e-9);
}

TEST_CASE("k-means degenerate cluster counts") {
    std::vector<Histogram> hists;
    for (int i = 0; i < 4; ++i) {
        std::vector<double> w(4, 0.0);
        w[static_cast<std::size_t>(i)] = 1.0;
        hists.push_back(Histogram::from_1d({0, 1, 2, 3}, w));
    }
    SUBCASE("k equal to n gives every histogram its own cluster") {
        auto assign = ot::wst_kmeans(hists, 4, 10, 5);
        std::set<std::size_t> distinct(assign.begin(), assign.end());
        CHECK(distinct.size() == 4);
    }
    SUBCASE("k = 1 pools everyone and fits the overall barycenter") {
        auto res = ot::wst_kmeans_detailed(hists, 1, 10, 5);
        for (auto a : res.assignments) CHECK(a == 0);
        auto direct = ot::barycenter_fixed_support(hists);
        for (std::size_t i = 0; i < direct.size(); ++i)
            CHECK(res.barycenters[0].weights[i] ==
                  doctest::Approx(direct.weights[i]).epsilon(1e-9));
    }
    SUBCASE("k beyond n is rejected") {
        CHECK_THROWS_WITH_AS(ot::wst_kmeans(hists, 5, 10, 5), doctest::Contains("KTooLarge"),
                             Error);
    }
}

TEST_CASE("divergences on shared supports") {
    Histogram p = Histogram::from_1d({0, 1}, {1.0, 0.0});
    Histogram q = Histogram::from_1d({0, 1}, {0.0, 1.0});
    SUBCASE("identical distributions have zero divergence") {
        CHECK(ot::kl_divergence(p, p) == doctest::Approx(0.0));
        CHECK(ot::js_divergence(p, p) == doctest::Approx(0.0));
        CHECK(ot::js_metric(p, p) == doctest::Approx(0.0));
    }
    SUBCASE("disjoint supports saturate at one") {
        CHECK(ot::js_divergence(p, q) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ot::js_metric(p, q) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("the metric is symmetric and bounded on random pairs") {
        Rng rng(10);
        for (int t = 0; t < 30; ++t) {
            std::vector<double> w1(6), w2(6);
            double s1 = 0, s2 = 0;
            for (int i = 0; i < 6; ++i) {
                w1[i] = rng.real01();
                w2[i] = rng.real01();
                s1 += w1[i];
                s2 += w2[i];
            }
            for (int i = 0; i < 6; ++i) {
                w1[i] /= s1;
                w2[i] /= s2;
            }
            Histogram a = Histogram::from_1d({0, 1, 2, 3, 4, 5}, w1);
            Histogram b = Histogram::from_1d({0, 1, 2, 3, 4, 5}, w2);
            double m1 = ot::js_metric(a, b), m2 = ot::js_metric(b, a);
            CHECK(m1 == doctest::Approx(m2).epsilon(1e-12));
            CHECK(m1 >= 0.0);
            CHECK(m1 <= 1.0 + 1e-12);
        }
    }
    SUBCASE("mismatched supports are rejected") {
        Histogram r = Histogram::from_1d({0, 2}, {0.5, 0.5});
        CHECK_THROWS_WITH_AS(ot::kl_divergence(p, r), doctest::Contains("SupportMismatch"), Error);
    }
}

TEST_CASE("histogram CSV round-trips through the text format") {
    namespace fs = std::filesystem;
    Histogram h;
    h.support = {{0.5, 1.5}, {2.0, -3.25}};
    h.weights = {0.4, 0.6};
    fs::path path = fs::temp_directory_path() / "mowst_hist_roundtrip.csv";
    mowst::write_histogram_csv(path.string(), h);
    Histogram back = mowst::read_histogram_csv(path.string());
    REQUIRE(back.size() == h.size());
    CHECK(back.support == h.support);
    CHECK(back.weights == h.weights);
    fs::remove(path);
}
