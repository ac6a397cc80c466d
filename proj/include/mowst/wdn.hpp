#ifndef MOWST_WDN_HPP
#define MOWST_WDN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mowst/engine.hpp"
#include "mowst/graph.hpp"
#include "mowst/histogram.hpp"

namespace mowst::wdn {

constexpr double kUndetected = -1.0;
constexpr double kDefaultHorizon = 86400.0; // 24 hours in seconds

/// Detection times in seconds for every (event, candidate location) pair,
/// with kUndetected where the event never reaches the location within the
/// horizon. Event probabilities default to uniform.
struct DetectionMatrix {
    std::vector<std::size_t> events;
    std::vector<std::size_t> locations;
    std::vector<double> times; // |events| x |locations|
    double t_max = kDefaultHorizon;
    std::vector<double> event_probabilities;

    std::size_t event_count() const { return events.size(); }
    std::size_t location_count() const { return locations.size(); }
    double at(std::size_t a, std::size_t i) const { return times[a * locations.size() + i]; }
    bool detected(std::size_t a, std::size_t i) const { return at(a, i) >= 0.0; }

    void validate() const;
};

/// Proxy simulator: detection time = shortest weighted travel time from the
/// event node to the sensor node (Dijkstra), UNDETECTED beyond the horizon
/// or when unreachable. `travel_time_per_edge` overrides the graph's edge
/// weights with one constant when given. Parallel across events.
DetectionMatrix simulate_detection_matrix(const graph::NetworkGraph& g,
                                          const std::vector<std::size_t>& events,
                                          const std::vector<std::size_t>& locations,
                                          std::optional<double> travel_time_per_edge = std::nullopt,
                                          double t_max = kDefaultHorizon);
DetectionMatrix simulate_detection_matrix_serial(const graph::NetworkGraph& g,
                                                 const std::vector<std::size_t>& events,
                                                 const std::vector<std::size_t>& locations,
                                                 std::optional<double> travel_time_per_edge = std::nullopt,
                                                 double t_max = kDefaultHorizon);

/// CSV bridge for externally produced detection data. Header
/// `event,<loc_1>,<loc_2>,...`; body rows hold seconds or -1 for undetected.
DetectionMatrix ingest_detection_matrix(const std::string& path, double t_max = kDefaultHorizon);

struct SensorPlacement {
    std::vector<std::uint8_t> s;
    std::size_t budget = 0;

    std::size_t placed_count() const;
    bool feasible() const { return placed_count() <= budget; }
    double constraint_violation() const;
};

struct SpEvaluation {
    double mean_detection_time = 0.0; // f1, seconds
    double detection_time_std = 0.0;  // f2, population standard deviation
    std::vector<double> per_event_time;
    std::size_t undetected_count = 0;
};

/// Per-event earliest detection over the placed sensors; events no placed
/// sensor detects (or an empty placement) take the horizon as penalty time.
SpEvaluation evaluate_placement(const std::vector<std::uint8_t>& s, const DetectionMatrix& d);

/// 24 equal time bins over (0, t_max] plus one extra bin for undetected
/// events; weights are event fractions. Bin centers carry the support
/// geometry (the undetected bin sits half a bin width past the horizon).
Histogram placement_histogram(const std::vector<std::uint8_t>& s, const DetectionMatrix& d);

/// Contaminant concentration per (time step, event) for one sensor location.
struct SensorMatrix {
    std::size_t time_steps = 0; // K + 1 rows
    std::size_t event_count = 0;
    std::vector<double> values; // row-major, entries in [0, 1]
    double threshold = 0.10;

    double at(std::size_t t, std::size_t a) const { return values[t * event_count + a]; }
};

/// Elementwise maximum of the placed sensors' matrices.
SensorMatrix placement_matrix(const std::vector<std::uint8_t>& s,
                              const std::vector<SensorMatrix>& sensor_matrices);

/// Binary-genotype problem over the candidate locations: minimize mean and
/// standard deviation of detection time, constraint sum(s) <= budget,
/// signature = placement histogram, recombination = feasible-by-design
/// crossover, sampling = exactly `budget` distinct locations.
moea::Problem make_sp_problem(const DetectionMatrix& d, std::size_t budget);

} // namespace mowst::wdn

#endif
