#pragma once

// Combinatorics of the Bialynicki-Birula decomposition: the flow digraph on
// fixed points, quasicycle detection and the canonical filtration.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace morseq {

/// alpha -> beta when some point flows out of the cell of alpha (under C)
/// into beta (under -C).
struct FlowDigraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  /// Throws InvalidInput on duplicate vertices or dangling edges.
  void validate() const;
  FlowDigraph reversed() const;
};

/// Layers F_0..F_m: disjoint antichains covering all vertices, with the layer
/// index strictly increasing along every edge.
struct Filtration {
  std::vector<std::vector<std::string>> layers;

  /// m, the index of the last layer.
  std::size_t length() const { return layers.empty() ? 0 : layers.size() - 1; }
  std::map<std::string, std::size_t> layer_map() const;
  std::size_t layer_of(const std::string& id) const;
};

/// A directed cycle (as a vertex list, first vertex not repeated), or nothing
/// when the flow relation is a partial order.
std::optional<std::vector<std::string>> detect_quasicycle(const FlowDigraph& g);

/// Longest-path layering.  Throws NotFilterable carrying the cycle.
Filtration build_filtration(const FlowDigraph& g);

/// Checks the Filtration invariants against g (cover, antichains, strict
/// increase along edges).
bool is_valid_filtration(const FlowDigraph& g, const Filtration& f);

}  // namespace morseq
