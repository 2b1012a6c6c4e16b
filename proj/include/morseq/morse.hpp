#pragma once

// Discrete fixed-point formulas: Morse series, index characters, E1 pages of
// the two instanton spectral sequences, and Morse-inequality certificates.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morseq/character.hpp"
#include "morseq/fixed_point.hpp"
#include "morseq/flow_poset.hpp"

namespace morseq {

/// Which cohomology the spectral sequence converges to.
enum class Variant { CompactSupport, Ordinary };

const char* to_string(Variant v);
Variant parse_variant(const std::string& s);

/// Contribution of one fixed point to the compact-support Morse series:
/// char E_x * prod_{C*} e^l/(1-e^l) * prod_{-C*} 1/(1-e^{-l}), expanded
/// towards +C.
PolarizedRational cs_term(const FixedPointRecord& r, const ChamberVector& v);
/// Contribution to the ordinary Morse series:
/// char E_x * prod_{C*} 1/(1-e^{-l}) * prod_{-C*} e^l/(1-e^l), towards -C.
PolarizedRational ordinary_term(const FixedPointRecord& r, const ChamberVector& v);

/// Degree nu^C_x for the compact-support variant, n - nu^C_x otherwise.
int morse_degree(const FixedPointDataset& ds, const FixedPointRecord& r, const ChamberVector& v, Variant variant);

GradedCharacter morse_series_cs(const FixedPointDataset& ds, const ChamberVector& v);
GradedCharacter morse_series(const FixedPointDataset& ds, const ChamberVector& v);
GradedCharacter morse_series(const FixedPointDataset& ds, const ChamberVector& v, Variant variant);

RationalSum index_cs(const FixedPointDataset& ds, const ChamberVector& v);
RationalSum index(const FixedPointDataset& ds, const ChamberVector& v);

struct E1Entry {
  std::vector<std::string> points;
  RationalSum character;
};

struct E1Page {
  Variant variant = Variant::Ordinary;
  std::size_t filtration_length = 0;  // m
  std::map<std::pair<int, int>, E1Entry> entries;
  /// True when every entry off the row q = 0 vanishes; the page is then the
  /// global Grothendieck-Cousin complex and the sequence degenerates at E2.
  bool degenerate = false;
};

/// Places each fixed point at p = m - layer(x) (compact support) or
/// p = layer(x) (ordinary) and total degree from morse_degree.
E1Page e1_page(const FixedPointDataset& ds, const ChamberVector& v, const Filtration& filt, Variant variant);

/// Sum over p of the E1 entries of total degree d, for every d.
GradedCharacter e1_total_degrees(const E1Page& page);

struct MorseReport {
  Variant variant = Variant::Ordinary;
  GradedCharacter lhs;
  BoxedGraded lhs_boxed;
  BoxedGraded rhs;
  BoxedGraded q;
  bool divisible = false;
  bool nonneg = false;
  std::string failure;  // remainder diagnostics when not divisible
};

/// Q = (LHS - candidate) / (1+t) weightwise inside the box.  Nonnegativity is
/// a certificate relative to the box only.
MorseReport verify_morse(const FixedPointDataset& ds, const ChamberVector& v, const BoxedGraded& candidate,
                         Variant variant, const CoordinateBox& box);

/// Data for a (possibly non-isolated) fixed component, supplied by the user.
struct ComponentSeries {
  std::size_t fixed_dim = 0;  // n_alpha
  std::size_t nu_plus = 0;    // nu^C_alpha
  BoxedGraded series;         // q -> char H^q(component, ...)
};

/// sum_alpha t^{n - n_alpha - nu^C_alpha} sum_q t^q series_alpha(q).
BoxedGraded assemble_component_series(const std::vector<ComponentSeries>& components, std::size_t n);

}  // namespace morseq
