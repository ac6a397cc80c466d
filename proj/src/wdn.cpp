#include "mowst/wdn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "mowst/csv.hpp"
#include "mowst/error.hpp"
#include "mowst/parallel.hpp"

namespace mowst::wdn {

void DetectionMatrix::validate() const {
    if (events.empty() || locations.empty())
        throw Error(ErrorKind::EmptyInput, "detection matrix needs events and locations");
    if (times.size() != events.size() * locations.size())
        throw Error(ErrorKind::ShapeMismatch, "detection matrix size mismatch");
    for (double t : times) {
        if (t == kUndetected) continue;
        if (t < 0.0) throw Error(ErrorKind::NegativeTime, "negative detection time");
        if (t > t_max) throw Error(ErrorKind::TimeBeyondHorizon, "detection time beyond horizon");
    }
    if (!event_probabilities.empty() && event_probabilities.size() != events.size())
        throw Error(ErrorKind::LengthMismatch, "one probability per event required");
}

namespace {

std::vector<double> dijkstra(const graph::NetworkGraph& g, std::size_t source,
                             std::optional<double> uniform_time) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.node_count(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : g.adjacency()[u]) {
            double step = uniform_time ? *uniform_time : w;
            if (dist[u] + step < dist[v]) {
                dist[v] = dist[u] + step;
                heap.push({dist[v], v});
            }
        }
    }
    return dist;
}

DetectionMatrix simulate_impl(const graph::NetworkGraph& g, const std::vector<std::size_t>& events,
                              const std::vector<std::size_t>& locations,
                              std::optional<double> travel_time_per_edge, double t_max,
                              bool parallel) {
    for (std::size_t node : events)
        if (node >= g.node_count())
            throw Error(ErrorKind::NodeOutOfRange, "event node " + std::to_string(node));
    for (std::size_t node : locations)
        if (node >= g.node_count())
            throw Error(ErrorKind::NodeOutOfRange, "location node " + std::to_string(node));
    if (travel_time_per_edge && !(*travel_time_per_edge > 0.0))
        throw Error(ErrorKind::NonpositiveTravelTime, "edge travel time must be positive");

    DetectionMatrix d;
    d.events = events;
    d.locations = locations;
    d.t_max = t_max;
    d.times.assign(events.size() * locations.size(), kUndetected);
    d.event_probabilities.assign(events.size(), 1.0 / static_cast<double>(events.size()));

    auto body = [&](std::size_t a) {
        auto dist = dijkstra(g, events[a], travel_time_per_edge);
        for (std::size_t i = 0; i < locations.size(); ++i) {
            double t = dist[locations[i]];
            if (std::isfinite(t) && t <= t_max) d.times[a * locations.size() + i] = t;
        }
    };
    if (parallel)
        parallel_for(events.size(), body);
    else
        for (std::size_t a = 0; a < events.size(); ++a) body(a);
    return d;
}

} // namespace

DetectionMatrix simulate_detection_matrix(const graph::NetworkGraph& g,
                                          const std::vector<std::size_t>& events,
                                          const std::vector<std::size_t>& locations,
                                          std::optional<double> travel_time_per_edge,
                                          double t_max) {
    return simulate_impl(g, events, locations, travel_time_per_edge, t_max, true);
}

DetectionMatrix simulate_detection_matrix_serial(const graph::NetworkGraph& g,
                                                 const std::vector<std::size_t>& events,
                                                 const std::vector<std::size_t>& locations,
                                                 std::optional<double> travel_time_per_edge,
                                                 double t_max) {
    return simulate_impl(g, events, locations, travel_time_per_edge, t_max, false);
}

DetectionMatrix ingest_detection_matrix(const std::string& path, double t_max) {
    auto rows = csv::read_rows(path);
    if (rows.size() < 2)
        throw Error(ErrorKind::ParseError, path + ": expected a header and at least one event row");
    const auto& header = rows.front();
    if (header.size() < 2 || header[0] != "event")
        throw Error(ErrorKind::ParseError, path + ": header must start with 'event'");

    DetectionMatrix d;
    d.t_max = t_max;
    for (std::size_t c = 1; c < header.size(); ++c) {
        long long id = csv::parse_int(header[c], path + " header column " + std::to_string(c + 1));
        if (id < 0) throw Error(ErrorKind::ParseError, path + ": negative location id");
        d.locations.push_back(static_cast<std::size_t>(id));
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string where = path + " row " + std::to_string(r + 1);
        if (row.size() != header.size())
            throw Error(ErrorKind::ParseError, where + ": wrong field count");
        long long ev = csv::parse_int(row[0], where + " column 1");
        if (ev < 0) throw Error(ErrorKind::ParseError, where + ": negative event id");
        d.events.push_back(static_cast<std::size_t>(ev));
        for (std::size_t c = 1; c < row.size(); ++c) {
            double t = csv::parse_double(row[c], where + " column " + std::to_string(c + 1));
            if (t == -1.0) {
                d.times.push_back(kUndetected);
            } else if (t < 0.0) {
                throw Error(ErrorKind::NegativeTime, where + ": negative time (use -1 for undetected)");
            } else if (t > t_max) {
                throw Error(ErrorKind::TimeBeyondHorizon,
                            where + ": " + csv::cell(t) + " exceeds horizon " + csv::cell(t_max));
            } else {
                d.times.push_back(t);
            }
        }
    }
    d.event_probabilities.assign(d.events.size(), 1.0 / static_cast<double>(d.events.size()));
    d.validate();
    return d;
}

std::size_t SensorPlacement::placed_count() const {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), std::uint8_t{1}));
}

double SensorPlacement::constraint_violation() const {
    double over = static_cast<double>(placed_count()) - static_cast<double>(budget);
    return over > 0.0 ? over : 0.0;
}

SpEvaluation evaluate_placement(const std::vector<std::uint8_t>& s, const DetectionMatrix& d) {
    if (s.size() != d.location_count())
        throw Error(ErrorKind::LengthMismatch, "placement length differs from location count");
    const std::size_t a_count = d.event_count();

    SpEvaluation ev;
    ev.per_event_time.resize(a_count);
    for (std::size_t a = 0; a < a_count; ++a) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i] || !d.detected(a, i)) continue;
            best = std::min(best, d.at(a, i));
        }
        if (!std::isfinite(best)) {
            best = d.t_max; // undetected penalty
            ++ev.undetected_count;
        }
        ev.per_event_time[a] = best;
    }

    const auto& alpha = d.event_probabilities;
    double f1 = 0.0;
    for (std::size_t a = 0; a < a_count; ++a)
        f1 += (alpha.empty() ? 1.0 / static_cast<double>(a_count) : alpha[a]) *
              ev.per_event_time[a];
    double var = 0.0;
    for (double t : ev.per_event_time) var += (t - f1) * (t - f1);
    ev.mean_detection_time = f1;
    ev.detection_time_std = std::sqrt(var / static_cast<double>(a_count));
    return ev;
}

Histogram placement_histogram(const std::vector<std::uint8_t>& s, const DetectionMatrix& d) {
    if (s.size() != d.location_count())
        throw Error(ErrorKind::LengthMismatch, "placement length differs from location count");
    constexpr std::size_t kBins = 24;
    const double width = d.t_max / static_cast<double>(kBins);
    const std::size_t a_count = d.event_count();

    std::vector<double> counts(kBins + 1, 0.0);
    for (std::size_t a = 0; a < a_count; ++a) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] && d.detected(a, i)) best = std::min(best, d.at(a, i));
        if (!std::isfinite(best)) {
            counts[kBins] += 1.0;
            continue;
        }
        std::size_t bin = best <= 0.0
                              ? 0
                              : static_cast<std::size_t>(std::ceil(best / width)) - 1;
        if (bin >= kBins) bin = kBins - 1;
        counts[bin] += 1.0;
    }

    std::vector<double> centers(kBins + 1), weights(kBins + 1);
    for (std::size_t k = 0; k < kBins; ++k)
        centers[k] = (static_cast<double>(k) + 0.5) * width;
    centers[kBins] = d.t_max + 0.5 * width; // undetected bin past the horizon
    for (std::size_t k = 0; k <= kBins; ++k)
        weights[k] = counts[k] / static_cast<double>(a_count);
    return Histogram::from_1d(centers, weights);
}

SensorMatrix placement_matrix(const std::vector<std::uint8_t>& s,
                              const std::vector<SensorMatrix>& sensor_matrices) {
    if (s.size() != sensor_matrices.size())
        throw Error(ErrorKind::LengthMismatch, "one sensor matrix per location required");
    SensorMatrix out;
    bool first = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s[i]) continue;
        const SensorMatrix& m = sensor_matrices[i];
        if (first) {
            out = m;
            first = false;
            continue;
        }
        if (m.time_steps != out.time_steps || m.event_count != out.event_count)
            throw Error(ErrorKind::ShapeMismatch, "sensor matrices of different shape");
        for (std::size_t k = 0; k < out.values.size(); ++k)
            out.values[k] = std::max(out.values[k], m.values[k]);
    }
    if (first) {
        // empty placement: zero concentrations with the common shape
        if (!sensor_matrices.empty()) {
            out = sensor_matrices.front();
            std::fill(out.values.begin(), out.values.end(), 0.0);
        }
    }
    return out;
}

moea::Problem make_sp_problem(const DetectionMatrix& d, std::size_t budget) {
    d.validate();
    if (budget < 1) throw Error(ErrorKind::ConfigError, "budget must be at least 1");
    if (budget > d.location_count())
        throw Error(ErrorKind::BudgetTooLarge, "budget exceeds the number of candidate locations");

    const std::size_t len = d.location_count();
    moea::Problem problem;
    problem.name = "sensor_placement";
    problem.kind = moea::GenotypeKind::Binary;
    problem.objective_names = {"mean_detection_time", "detection_time_std"};
    problem.maximized = {false, false};

    problem.sample = [len, budget](Rng& rng) {
        std::vector<std::size_t> idx(len);
        std::iota(idx.begin(), idx.end(), 0);
        rng.shuffle(idx);
        moea::BinaryGenotype bits(len, 0);
        for (std::size_t i = 0; i < budget; ++i) bits[idx[i]] = 1;
        return moea::Genotype(std::move(bits));
    };

    problem.evaluate = [d, budget](const moea::Genotype& g) {
        const auto& bits = std::get<moea::BinaryGenotype>(g);
        SpEvaluation ev = evaluate_placement(bits, d);
        moea::Evaluation out;
        out.objectives = {ev.mean_detection_time, ev.detection_time_std};
        SensorPlacement placement{bits, budget};
        out.constraint_violation = placement.constraint_violation();
        out.signature = placement_histogram(bits, d);
        return out;
    };

    problem.crossover = [budget](const moea::Genotype& a, const moea::Genotype& b, Rng& rng) {
        auto [c1, c2] = moea::feasible_by_design_crossover(std::get<moea::BinaryGenotype>(a),
                                                           std::get<moea::BinaryGenotype>(b),
                                                           budget, rng);
        return std::make_pair(moea::Genotype(std::move(c1)), moea::Genotype(std::move(c2)));
    };

    // Variation can overshoot the budget; dropping random surplus sensors
    // keeps every evaluation a feasible placement.
    problem.repair = [budget](moea::Genotype& g, Rng& rng) {
        auto& bits = std::get<moea::BinaryGenotype>(g);
        std::vector<std::size_t> placed;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) placed.push_back(i);
        while (placed.size() > budget) {
            std::size_t pos = static_cast<std::size_t>(rng.index(placed.size()));
            bits[placed[pos]] = 0;
            placed[pos] = placed.back();
            placed.pop_back();
        }
    };

    return problem;
}

} // namespace mowst::wdn
