#pragma once

// Weight-by-weight Cech complexes of toric line bundles on the cover by
// maximal-cone charts, and the spectral sequence of the filtration by
// Bialynicki-Birula cells.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "morseq/character.hpp"
#include "morseq/flow_poset.hpp"
#include "morseq/linalg.hpp"
#include "morseq/toric.hpp"

namespace morseq {

struct ChartSet {
  std::vector<std::size_t> charts;  // sorted maximal-cone indices I
  std::vector<std::size_t> face;    // rays of gamma_I
  int filtration = 0;               // largest p with U_I inside V_p
};

class CechCover {
 public:
  /// Unfiltered cover; enough for cohomology.
  CechCover(Fan f, ToricDivisor d);
  /// Filtered by the canonical filtration for v; needs a complete fan.  V_p is
  /// the union of the cells whose layer is at most m - p.  Throws
  /// NotFilterable on a quasicycle.
  CechCover(Fan f, ToricDivisor d, const ChamberVector& v);

  const Fan& fan() const { return fan_; }
  const ToricDivisor& divisor() const { return divisor_; }
  std::size_t top_degree() const { return sets_.size() - 1; }
  const std::vector<ChartSet>& sets(std::size_t q) const { return sets_[q]; }

  bool filtered() const { return filtration_.has_value(); }
  const Filtration& filtration() const;
  std::size_t filtration_length() const { return filtered() ? filtration_->length() : 0; }

  bool contains(const ChartSet& s, const Weight& xi) const;

 private:
  void build_sets();

  Fan fan_;
  ToricDivisor divisor_;
  std::vector<std::vector<ChartSet>> sets_;
  std::optional<Filtration> filtration_;
};

struct WeightComplex {
  Weight xi;
  std::vector<std::vector<ChartSet>> basis;    // degree q -> sets of size q+1 containing xi
  std::vector<linalg::IntMatrix> boundary;     // boundary[q] : C^q -> C^{q+1}

  std::vector<std::size_t> dims() const;
  bool d_squared_zero() const;
};

WeightComplex weight_cochain_complex(const CechCover& cover, const Weight& xi);
WeightComplex weight_cochain_complex(const Fan& f, const ToricDivisor& d, const Weight& xi);

std::vector<std::size_t> cohomology_dims(const WeightComplex& wc);

using Bidegree = std::pair<int, int>;  // (p, q)

struct SSPage {
  std::size_t r = 0;
  std::map<Bidegree, std::size_t> dims;                  // nonzero only
  std::map<Bidegree, std::size_t> differential_ranks;    // d_r leaving (p,q), nonzero only
  std::map<Bidegree, linalg::QMatrix> differentials;     // explicit d_r on chosen bases
  bool infinity = false;

  long euler_characteristic() const;
};

struct SpectralSequence {
  Weight xi;
  std::size_t m = 0;
  std::vector<SSPage> pages;               // E_0, E_1, ...
  std::vector<std::size_t> cohomology;     // of the total complex
  /// Rank formulas and explicit subquotients agree, d_r o d_r = 0 on every page,
  /// and E_infinity matches the cohomology degree by degree.
  bool consistent = true;
};

/// Pages E_0..E_{r_max}; by default up to E_{m+1} = E_infinity.
SpectralSequence spectral_pages(const CechCover& cover, const Weight& xi, std::optional<std::size_t> r_max = {});

/// q -> character of H^q over the box (empty degrees omitted).
BoxedGraded full_cohomology_character(const CechCover& cover, const CoordinateBox& box);
BoxedGraded full_cohomology_character(const Fan& f, const ToricDivisor& d, const CoordinateBox& box);

/// (p,q) -> character of E_r^{pq} over the box.
std::map<Bidegree, FiniteCharacter> page_characters(const CechCover& cover, const CoordinateBox& box, std::size_t r);

}  // namespace morseq
