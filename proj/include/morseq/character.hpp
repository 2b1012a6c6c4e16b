#pragma once

// Exact arithmetic in the formal character ring Z[l*] and in its extension by
// polarized geometric series e^eta / prod (1 - e^mu).

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace morseq {

using Integer = mpz_class;

struct LatticeContext {
  std::size_t rank = 1;
};

/// An element of the weight lattice l* = Z^rank.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::size_t rank) : coords_(rank, 0) {}
  explicit Weight(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  Weight(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  std::size_t rank() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  bool is_zero() const;

  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  Weight operator-() const;

  auto operator<=>(const Weight&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> coords_;
};

Weight operator+(Weight a, const Weight& b);
Weight operator-(Weight a, const Weight& b);
Weight operator*(std::int64_t k, Weight a);

/// Interior lattice vector of an action chamber; pairs with weights.
struct ChamberVector {
  std::vector<std::int64_t> coords;

  std::size_t rank() const { return coords.size(); }
  ChamberVector operator-() const;
  bool operator==(const ChamberVector&) const = default;
};

std::int64_t pairing(const Weight& w, const ChamberVector& v);
std::int64_t pairing(const Weight& w, std::span<const std::int64_t> v);

/// Inclusive per-axis window used to truncate infinite formal series.
class CoordinateBox {
 public:
  CoordinateBox(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi);
  static CoordinateBox cube(std::size_t rank, std::int64_t lo, std::int64_t hi);

  std::size_t rank() const { return lo_.size(); }
  const std::vector<std::int64_t>& lo() const { return lo_; }
  const std::vector<std::int64_t>& hi() const { return hi_; }
  bool contains(const Weight& w) const;
  bool on_boundary(const Weight& w) const;
  std::uint64_t count() const;
  CoordinateBox inflated(std::int64_t margin) const;

  /// Lattice points in lexicographic order.
  std::vector<Weight> points() const;
  void for_each(const std::function<void(const Weight&)>& fn) const;

  /// Smallest box containing all weights (rank taken from the first).
  static CoordinateBox bounding(std::span<const Weight> weights);

 private:
  std::vector<std::int64_t> lo_;
  std::vector<std::int64_t> hi_;
};

/// Finitely supported integer function on l*; zero coefficients are never
/// stored and iteration is lexicographic on weights.
class FiniteCharacter {
 public:
  using Terms = std::map<Weight, Integer>;

  explicit FiniteCharacter(std::size_t rank = 1) : rank_(rank) {}
  static FiniteCharacter monomial(const Weight& w, const Integer& c = 1);
  static FiniteCharacter one(std::size_t rank);

  std::size_t rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Integer coefficient(const Weight& w) const;
  Integer total() const;

  void add_term(const Weight& w, const Integer& c);

  FiniteCharacter& operator+=(const FiniteCharacter& o);
  FiniteCharacter& operator-=(const FiniteCharacter& o);
  FiniteCharacter operator-() const;
  FiniteCharacter shifted(const Weight& by) const;
  FiniteCharacter scaled(const Integer& k) const;
  FiniteCharacter restricted(const CoordinateBox& box) const;

  std::optional<Weight> min_weight() const;
  std::optional<Weight> max_weight() const;

  bool operator==(const FiniteCharacter& o) const;

 private:
  void check_rank(const Weight& w) const;

  std::size_t rank_;
  Terms terms_;
};

FiniteCharacter operator+(FiniteCharacter a, const FiniteCharacter& b);
FiniteCharacter operator-(FiniteCharacter a, const FiniteCharacter& b);
FiniteCharacter operator*(const FiniteCharacter& a, const FiniteCharacter& b);

enum class ArithOp { Add, Mul };
FiniteCharacter char_arith(const FiniteCharacter& a, const FiniteCharacter& b, ArithOp op);

/// (1 - e^mu) as a finite character.
FiniteCharacter one_minus(const Weight& mu);

bool is_nonnegative(const FiniteCharacter& c);

enum class Polarization { Plus, Minus };

inline int sign_of(Polarization p) { return p == Polarization::Plus ? 1 : -1; }
inline Polarization opposite(Polarization p) {
  return p == Polarization::Plus ? Polarization::Minus : Polarization::Plus;
}

/// numerator * prod_mu (sum_{k>=0} e^{k mu}), expanded towards the half-space
/// sign * <., chamber> > 0.
class PolarizedRational {
 public:
  PolarizedRational(FiniteCharacter numerator, std::vector<Weight> denominators,
                    Polarization sign, ChamberVector chamber);
  static PolarizedRational finite(FiniteCharacter c, ChamberVector chamber);

  const FiniteCharacter& numerator() const { return numerator_; }
  const std::vector<Weight>& denominators() const { return denominators_; }
  Polarization sign() const { return sign_; }
  const ChamberVector& chamber() const { return chamber_; }
  std::size_t rank() const { return numerator_.rank(); }

  /// True when every denominator weight pairs strictly positively with
  /// sign * chamber, i.e. the series has finite coefficients.
  bool is_polarized() const;

  PolarizedRational negated() const;
  PolarizedRational times(const FiniteCharacter& c) const;

 private:
  FiniteCharacter numerator_;
  std::vector<Weight> denominators_;
  Polarization sign_;
  ChamberVector chamber_;
};

/// Formal sums of polarized rationals (index characters are kept unsimplified).
using RationalSum = std::vector<PolarizedRational>;

RationalSum negated(const RationalSum& s);
RationalSum concat(RationalSum a, const RationalSum& b);

FiniteCharacter expand_in_box(const PolarizedRational& s, const CoordinateBox& box);
FiniteCharacter expand_in_box(const RationalSum& s, const CoordinateBox& box);

PolarizedRational flip_polarization(const PolarizedRational& s, std::size_t which);

bool rational_equal(const RationalSum& a, const RationalSum& b);
bool rational_equal(const PolarizedRational& a, const PolarizedRational& b);
bool rational_is_zero(const RationalSum& s);

/// Reduce a sum of polarized rationals over a common denominator and divide
/// out exactly; empty when the rational character is not a Laurent
/// polynomial.
std::optional<FiniteCharacter> reduce_to_finite(const RationalSum& s);

/// Graded characters: degree (power of t) -> sum of polarized rationals.
using GradedCharacter = std::map<int, RationalSum>;
/// Graded characters truncated to a box.
using BoxedGraded = std::map<int, FiniteCharacter>;

BoxedGraded expand_graded(const GradedCharacter& g, const CoordinateBox& box);
RationalSum evaluate_at_minus_one(const GradedCharacter& g);

/// Weightwise division by (1+t).  Throws NotDivisible naming the first weight
/// whose polynomial does not vanish at t = -1.
BoxedGraded divide_by_one_plus_t(const BoxedGraded& g);
BoxedGraded divide_by_one_plus_t(const GradedCharacter& g, const CoordinateBox& box);

/// (1+t) * q, used to recombine a quotient.
BoxedGraded multiply_by_one_plus_t(const BoxedGraded& q);

bool is_nonnegative(const BoxedGraded& g);

}  // namespace morseq
