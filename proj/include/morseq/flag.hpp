#pragma once

// Flag manifolds G/B: root systems, Weyl groups with Bruhat order, fixed-point
// datasets, Verma and local-cohomology characters, BGG and Borel-Weil-Bott.
//
// Weights are written in the fundamental-weight basis.  The Cartan matrix is
// A_ij = <alpha_i, alpha_j^vee>, so alpha_i has coordinates given by row i.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "morseq/character.hpp"
#include "morseq/fixed_point.hpp"
#include "morseq/flow_poset.hpp"

namespace morseq {

struct RootSystemSpec {
  char type = 'A';
  std::size_t rank = 1;

  std::string name() const { return std::string(1, type) + std::to_string(rank); }
};

using IntSquare = std::vector<std::vector<std::int64_t>>;

struct WeylElement {
  std::vector<std::size_t> word;  // reduced word, 1-based simple reflections
  IntSquare matrix;               // acts on fundamental-weight coordinates
  std::size_t length = 0;

  /// "e" or "s1s2..." for the word.
  std::string id() const;
};

struct RootSystem {
  RootSystemSpec spec;
  IntSquare cartan;
  std::vector<mpq_class> length_sq;   // (alpha_i, alpha_i)
  std::vector<Weight> simple_roots;
  std::vector<Weight> positive_roots;
  Weight rho;
  std::vector<WeylElement> weyl;      // breadth-first, weyl[0] = e

  std::size_t rank() const { return spec.rank; }
  Weight act(const WeylElement& w, const Weight& lambda) const;
  /// Coordinates in the simple-root basis.
  std::vector<mpq_class> root_coords(const Weight& lambda) const;
  /// lambda - mu is a nonnegative integer combination of simple roots.
  bool dominates(const Weight& lambda, const Weight& mu) const;
  mpq_class inner(const Weight& a, const Weight& b) const;
  /// Interior lattice vector of the dominant chamber, in coroot coordinates.
  ChamberVector dominant_chamber() const;
  const WeylElement& element(const std::string& id) const;
  std::size_t index_of(const IntSquare& matrix) const;
};

/// Supported: A1..A4, B2, G2.  Throws InvalidInput otherwise.
RootSystem build_root_system(const RootSystemSpec& spec);

/// w -> wt for reflections t with l(wt) = l(w) + 1.
FlowDigraph bruhat_cover_digraph(const RootSystem& rs);

/// One point per w: weights {w alpha : alpha > 0}, fiber e^{w lambda}, edges
/// the Bruhat covers.
FixedPointDataset flag_dataset(const RootSystem& rs, const Weight& lambda);

/// e^mu / prod_{alpha > 0} (1 - e^{-alpha}), expanded towards -C.
PolarizedRational verma_character(const RootSystem& rs, const Weight& mu);
/// e^{w(lambda+rho)-rho} / prod_{alpha > 0} (1 - e^{-alpha}).
PolarizedRational local_cohomology_character(const RootSystem& rs, const Weight& lambda, const WeylElement& w);

struct DominantRep {
  std::string w;       // id of w_lambda
  Weight mu;           // w(lambda+rho) - rho
  std::size_t degree;  // l(w_lambda)
};

/// Empty when lambda + rho is singular.
std::optional<DominantRep> dominant_rep(const RootSystem& rs, const Weight& lambda);

/// Weight multiplicities of the irreducible module of highest weight mu by
/// Freudenthal's recursion.  Throws InvalidInput if mu is not dominant.
FiniteCharacter freudenthal_character(const RootSystem& rs, const Weight& mu);

struct BggCheck {
  bool holds = false;
  FiniteCharacter lhs;  // sum_w (-1)^{l(w)} e^{w(lambda+rho)-rho}
  FiniteCharacter rhs;  // char R_lambda * prod_{alpha > 0} (1 - e^{-alpha})
};

BggCheck bgg_alternating_identity(const RootSystem& rs, const Weight& lambda);

/// Borel-Weil-Bott prediction: q -> character (empty when singular).
BoxedGraded bott_cohomology(const RootSystem& rs, const Weight& lambda);

}  // namespace morseq
