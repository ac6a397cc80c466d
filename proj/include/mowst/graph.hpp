#ifndef MOWST_GRAPH_HPP
#define MOWST_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mowst/histogram.hpp"

namespace mowst::graph {

struct Edge {
    std::size_t u, v;
    double weight = 1.0;
};

/// Undirected simple graph with optional positive edge weights. Node ids are
/// dense in [0, node_count); self-loops and duplicate edges are rejected.
class NetworkGraph {
public:
    NetworkGraph() = default;
    NetworkGraph(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency() const {
        return adj_;
    }

    bool has_edge(std::size_t u, std::size_t v) const;
    double weighted_degree(std::size_t u) const;

    /// Copy of the graph with the listed edges removed (UnknownEdge if one
    /// is not present). Node set unchanged.
    NetworkGraph without_edges(const std::vector<std::pair<std::size_t, std::size_t>>& removed) const;
    /// Copy with node `u` and its incident edges removed; remaining ids are
    /// compacted downward.
    NetworkGraph without_node(std::size_t u) const;

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<std::size_t, double>>> adj_;
};

/// Parses `u,v[,weight]` rows; node count is max id + 1.
NetworkGraph load_graph(const std::string& path);
NetworkGraph parse_edge_list(const std::vector<std::vector<std::string>>& rows,
                             const std::string& origin);

constexpr int kUnreachable = -1;

/// Hop-distance matrix (row-major n x n, kUnreachable where disconnected).
/// BFS fans out across source nodes in parallel; the serial variant is the
/// reference the parity tests and the benchmark compare against.
std::vector<int> all_pairs_hop_distances(const NetworkGraph& g);
std::vector<int> all_pairs_hop_distances_serial(const NetworkGraph& g);

std::vector<int> bfs_hop_distances(const NetworkGraph& g, std::size_t source);

/// Fraction of nodes at each hop distance k = 1..D(G) from node i
/// (unreachable pairs excluded, so total mass < 1 flags disconnection).
Histogram node_distance_distribution(const NetworkGraph& g, std::size_t node);
/// Mean of the node distributions over all nodes.
Histogram graph_distance_distribution(const NetworkGraph& g);

struct CentralityReport {
    int diameter = 0;
    double characteristic_path_length = 0.0;
    double density = 0.0;
    double link_per_node = 0.0;
    double central_point_dominance = 0.0;
    double clustering_coefficient = 0.0;
    std::vector<double> betweenness; // per node, 1/n^2 normalization
    bool connected = true;
};

/// Density, link-per-node ratio, diameter, characteristic path length,
/// betweenness (node i counts when it is strictly interior to some shortest
/// s-t path), central point dominance and the global clustering coefficient
/// (each triangle closes three triples). Disconnected graphs are reported
/// over reachable pairs with `connected = false`.
CentralityReport centrality_report(const NetworkGraph& g);

struct VulnerabilityReport {
    double efficiency = 0.0;
    double v_max = 0.0;       // largest relative efficiency drop over node removals
    double v_mean = 0.0;      // mean relative efficiency drop
    double v_max_ratio = 0.0; // same sweep, ratio form E(G)/E(G\{v})
    double v_mean_ratio = 0.0;
    double algebraic_connectivity = 0.0; // second-smallest Laplacian eigenvalue
};

/// Network efficiency: mean inverse hop distance over ordered pairs,
/// unreachable pairs contributing zero. Graphs with fewer than two nodes
/// have efficiency 0.
double efficiency(const NetworkGraph& g);

/// Efficiency of the graph and relative drop statistics over all
/// single-node removals, plus algebraic connectivity of the combinatorial
/// Laplacian (weighted when edge weights are given).
VulnerabilityReport vulnerability_report(const NetworkGraph& g);

/// Per-removal efficiencies E(G \ {v}) for v = 0..n-1; parallel kernel plus
/// serial reference.
std::vector<double> node_removal_efficiencies(const NetworkGraph& g);
std::vector<double> node_removal_efficiencies_serial(const NetworkGraph& g);

/// Relative efficiency drop 1 - e_removed / e_base (0 when e_base == 0).
double loss_of_efficiency(double e_base, double e_removed);
/// Drop caused by deleting the given edges from the graph.
double loss_of_efficiency(const NetworkGraph& g,
                          const std::vector<std::pair<std::size_t, std::size_t>>& removed_edges);
/// Ratio form E(G)/E(G \ edges), the secondary output.
double efficiency_ratio(double e_base, double e_removed);

struct EdgeRemovalImpact {
    double efficiency_removed = 0.0;
    double loss = 0.0;  // 1 - E'/E
    double ratio = 0.0; // E/E'
};
EdgeRemovalImpact edge_removal_impact(const NetworkGraph& g,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& removed);

enum class CriticalityMetric { Wasserstein, JensenShannon };

/// For every edge, the distributional distance between the graph-level hop
/// distributions of G and G minus that edge, on the padded common support
/// {1..max(D, D')}. Distributions are renormalized when a removal
/// disconnects the graph. Parallel across edges; serial reference kept.
std::vector<double> edge_criticality_map(const NetworkGraph& g,
                                         CriticalityMetric metric = CriticalityMetric::Wasserstein);
std::vector<double> edge_criticality_map_serial(const NetworkGraph& g,
                                                CriticalityMetric metric = CriticalityMetric::Wasserstein);

/// Distance between two graphs' hop-distance distributions on the padded
/// common support (renormalized if either has mass < 1).
double graph_distribution_distance(const NetworkGraph& a, const NetworkGraph& b,
                                   CriticalityMetric metric);

/// Spectral clustering on the self-loop-normalized similarity
/// D^{-1/2} (I + A) D^{-1/2} with D the row sums of I + A: embeds nodes in
/// the k leading eigenvectors, row-normalizes, then runs seeded k-means.
/// Deterministic for a fixed seed.
std::vector<std::size_t> spectral_clustering(const NetworkGraph& g, std::size_t k,
                                             std::uint64_t seed);

/// Connected components by BFS; returns per-node component index ordered by
/// lowest contained node id.
std::vector<std::size_t> connected_components(const NetworkGraph& g);

} // namespace mowst::graph

#endif
