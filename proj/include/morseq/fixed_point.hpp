#pragma once

// Torus actions with isolated fixed points: isotropy weights, fiber
// characters, chamber validation and polarization.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morseq/character.hpp"
#include "morseq/flow_poset.hpp"

namespace morseq {

struct FixedPointRecord {
  std::string id;
  std::vector<Weight> isotropy_weights;
  FiniteCharacter fiber;  // char E_x
};

struct FixedPointDataset {
  LatticeContext context;
  std::size_t ambient_dim = 0;
  std::vector<FixedPointRecord> points;
  bool compact = false;
  std::optional<std::vector<std::pair<std::string, std::string>>> edges;

  /// Throws InvalidInput: duplicate ids, zero or wrong-rank weights, weight
  /// count different from ambient_dim, dangling edges.
  void validate() const;
  const FixedPointRecord& point(const std::string& id) const;
  /// Vertices in point order; edges from the dataset (empty if absent).
  FlowDigraph digraph() const;
};

struct PolarizedRecord {
  std::string id;
  std::size_t nu_plus = 0;              // nu^C: weights with <lambda, v> > 0
  std::vector<Weight> weights_plus;     // N^C
  std::vector<Weight> weights_minus;    // N^{-C}

  std::size_t nu_minus() const { return weights_minus.size(); }
};

/// Returns v as a chamber vector after checking <lambda, v> != 0 for every
/// isotropy weight.  The error names the offending point and weight.
ChamberVector validate_chamber(const FixedPointDataset& ds, const std::vector<std::int64_t>& v);

PolarizedRecord polarize_record(const FixedPointRecord& r, const ChamberVector& v);

}  // namespace morseq
