#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bsing {

struct BGraph {
    struct Vertex {
        std::string id;
        int genus = 0;
    };
    struct Edge {
        std::string id;
        std::string a;
        std::string b;
        bool is_loop() const { return a == b; }
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    void validate() const;  // throws std::invalid_argument on dangling endpoints
    int degree(const std::string& vertex) const;  // loops count twice
    const Vertex* find_vertex(const std::string& id) const;
};

struct EdgeOrientation {
    // edge id -> (initial vertex, terminal vertex)
    std::map<std::string, std::pair<std::string, std::string>> directed;
};

struct SignAssignment {
    enum class Kind { vertex2coloring, edge2coloring };
    Kind kind = Kind::vertex2coloring;
    std::map<std::string, int> sign;  // id -> +1 / -1
};

struct TwoColorResult {
    std::optional<SignAssignment> coloring;
    // On absence: edge ids of an odd closed walk certifying non-bipartiteness.
    std::vector<std::string> odd_walk_witness;
};

/// Vertex 2-coloring (bipartiteness); loops obstruct, witness returned.
TwoColorResult two_color(const BGraph& g);

/// Orientation such that every vertex of degree >= 2 has at least one
/// incoming and one outgoing edge. Peel edges at vertices of degree > 2,
/// orient the residual paths/cycles/isolated vertices consistently, reinsert
/// in reverse order with the three endpoint-degree cases.
EdgeOrientation good_orientation(const BGraph& g);

/// Edge 2-coloring: every vertex of degree >= 2 incident to both signs.
/// Bipartiteness precheck (odd cycle -> nullopt), then exhaustive
/// backtracking; invariant graphs are small.
std::optional<SignAssignment> edge_two_color(const BGraph& g);

/// Independent odd-cycle oracle: exhaustive vertex-sign search (2^V), used
/// to cross-validate the BFS bipartiteness path.
bool has_odd_cycle_bruteforce(const BGraph& g);

/// Sum over vertices of 2*genus + |deg - 2|; loops contribute 2 to degree.
int arnold_bound_surface(const BGraph& g);

/// Sum of supplied GF(2) Betti numbers.
int arnold_bound_smooth(const std::vector<int>& betti);

/// Sum over vertices of max(betti_sum - sum(leaf orbit counts), 0).
/// Throws std::invalid_argument on negative inputs.
int arnold_bound_mapping_tori(
    const std::vector<std::pair<int, std::vector<int>>>& per_vertex);

/// Loops and parallel edges count as cycles.
bool is_acyclic(const BGraph& g);

/// DOT text export for visualization.
std::string to_dot(const BGraph& g);

}  // namespace bsing
