#pragma once

#include <iosfwd>
#include <vector>

#include "geocert/types.hpp"

namespace geocert {

enum class Openness { open, closed };
enum class MeasureKind { empirical, degree_volume };

/// Unweighted epsilon-neighborhood graph: edge iff Euclidean distance <= eps.
struct EpsilonGraph {
    mat_t points;  // one ambient row per vertex
    double epsilon = 0.0;
    int n = 0;
    std::vector<std::vector<index_t>> adj;  // sorted neighbor lists
    std::vector<int> degrees;
    long long volume = 0;  // sum of degrees

    bool has_edge(index_t i, index_t j) const;
};

EpsilonGraph build_epsilon_graph(const mat_t& points, double epsilon);
EpsilonGraph build_epsilon_graph_brute(const mat_t& points, double epsilon);

/// BFS hop counts from source; -1 marks unreachable vertices.
std::vector<int> sp_distances_from(const EpsilonGraph& g, index_t source);

/// Dijkstra with Euclidean edge lengths; +inf marks unreachable vertices.
std::vector<double> ge_distances_from(const EpsilonGraph& g, index_t source);
double euclidean_graph_distance(const EpsilonGraph& g, index_t x, index_t y);

std::vector<index_t> ball_sp(const EpsilonGraph& g, index_t center, double r, Openness openness);

double measure_of(const EpsilonGraph& g, MeasureKind kind, const std::vector<index_t>& vertices);

std::vector<int> connected_components(const EpsilonGraph& g);
bool is_connected(const EpsilonGraph& g);

/// Text export: header "n eps" then one "i j" line per edge with i < j.
void write_edge_list(const EpsilonGraph& g, std::ostream& out);
/// CSV export of a graph measure: "vertex,weight".
void write_measure_csv(const EpsilonGraph& g, MeasureKind kind, std::ostream& out);
/// CSV export of vertex coordinates at 17 significant digits.
void write_points_csv(const mat_t& points, std::ostream& out);

}  // namespace geocert
