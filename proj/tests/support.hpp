#pragma once

// Fixtures and independent oracles shared by the test binaries.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "morseq/character.hpp"
#include "morseq/fixed_point.hpp"
#include "morseq/toric.hpp"

namespace morseq::testing {

inline Fan p2_fan() {
  Fan f;
  f.context.rank = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, -1}};
  f.max_cones = {{0, 1}, {1, 2}, {0, 2}};
  return f;
}

inline Fan p1xp1_fan() {
  Fan f;
  f.context.rank = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return f;
}

inline Fan f1_fan() {
  Fan f;
  f.context.rank = 2;
  f.rays = {{1, 0}, {0, 1}, {-1, 1}, {0, -1}};
  f.max_cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return f;
}

inline Fan p1_fan() {
  Fan f;
  f.context.rank = 1;
  f.rays = {{1}, {-1}};
  f.max_cones = {{0}, {1}};
  return f;
}

inline Fan line_fan() {
  Fan f;
  f.context.rank = 1;
  f.rays = {{1}};
  f.max_cones = {{0}};
  return f;
}

/// D = c * D_{(-1,-1)} on the projective plane.
inline ToricDivisor p2_divisor(std::int64_t c) { return ToricDivisor{{0, 0, c}}; }

/// Ten divisors per surface: a spread of nef and non-nef classes.
inline std::vector<ToricDivisor> surface_divisors(const Fan& f) {
  std::vector<ToricDivisor> out;
  if (f.rays.size() == 3) {
    for (std::int64_t c : {-4, -3, -2, -1, 0, 1, 2, 3}) out.push_back(p2_divisor(c));
    out.push_back({{1, 1, 0}});
    out.push_back({{-1, 0, -1}});
    return out;
  }
  const std::vector<std::vector<std::int64_t>> coeffs = {{0, 0, 0, 0},  {1, 0, 0, 0},  {1, 1, 0, 0},
                                                         {2, 1, 0, 0},  {0, 0, 1, 2},  {-2, 0, 0, 0},
                                                         {-3, 0, 0, 1}, {1, -3, 0, 0}, {-2, -2, 0, 0},
                                                         {2, 0, 0, -3}};
  for (const auto& c : coeffs) out.push_back({c});
  return out;
}

/// Datasets of C, the point, and P^1 with O(1).
inline FixedPointDataset line_dataset() {
  FixedPointDataset ds;
  ds.context.rank = 1;
  ds.ambient_dim = 1;
  ds.points.push_back({"o", {Weight{1}}, FiniteCharacter::one(1)});
  return ds;
}

inline FixedPointDataset point_dataset() {
  FixedPointDataset ds;
  ds.context.rank = 1;
  ds.ambient_dim = 0;
  ds.compact = true;
  ds.points.push_back({"pt", {}, FiniteCharacter::one(1)});
  return ds;
}

inline FixedPointDataset p1_o1_dataset() {
  FixedPointDataset ds;
  ds.context.rank = 1;
  ds.ambient_dim = 1;
  ds.compact = true;
  ds.points.push_back({"p0", {Weight{1}}, FiniteCharacter::monomial(Weight{0})});
  ds.points.push_back({"pinf", {Weight{-1}}, FiniteCharacter::monomial(Weight{-1})});
  ds.edges = std::vector<std::pair<std::string, std::string>>{{"p0", "pinf"}};
  return ds;
}

inline FiniteCharacter chr(std::size_t rank, const std::vector<std::pair<Weight, long>>& terms) {
  FiniteCharacter c(rank);
  for (const auto& [w, k] : terms) c.add_term(w, k);
  return c;
}

/// Convolution by a double loop over plain maps.
inline std::map<std::vector<std::int64_t>, long> naive_product(const std::map<std::vector<std::int64_t>, long>& a,
                                                               const std::map<std::vector<std::int64_t>, long>& b) {
  std::map<std::vector<std::int64_t>, long> out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      auto w = wa;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += wb[i];
      out[w] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  return out;
}

inline std::map<std::vector<std::int64_t>, long> plain(const FiniteCharacter& c) {
  std::map<std::vector<std::int64_t>, long> out;
  for (const auto& [w, k] : c.terms()) out[w.coords()] = k.get_si();
  return out;
}

/// Expansion of numerator * prod_i sum_{k_i >= 0} e^{k_i mu_i} by direct
/// enumeration of the exponent vectors k with every k_i <= kmax.
inline FiniteCharacter naive_expand(const FiniteCharacter& num, const std::vector<Weight>& dens,
                                    const CoordinateBox& box, int kmax) {
  FiniteCharacter out(num.rank());
  std::vector<int> k(dens.size(), 0);
  while (true) {
    for (const auto& [w, c] : num.terms()) {
      Weight x = w;
      for (std::size_t i = 0; i < dens.size(); ++i) x += static_cast<std::int64_t>(k[i]) * dens[i];
      if (box.contains(x)) out.add_term(x, c);
    }
    std::size_t i = 0;
    while (i < k.size() && k[i] == kmax) k[i++] = 0;
    if (i == k.size()) break;
    ++k[i];
  }
  return out;
}

/// num_a / prod(1 - e^mu) == num_b / prod(1 - e^nu), by cross-multiplication.
inline bool cross_multiplied_equal(const PolarizedRational& a, const PolarizedRational& b) {
  FiniteCharacter lhs = a.numerator();
  FiniteCharacter rhs = b.numerator();
  for (const auto& nu : b.denominators()) lhs = lhs * one_minus(nu);
  for (const auto& mu : a.denominators()) rhs = rhs * one_minus(mu);
  return lhs == rhs;
}

/// Random rank-r weight with coordinates in [-bound, bound], nonzero pairing
/// with v.
inline Weight random_weight(std::mt19937& rng, std::size_t rank, int bound, const ChamberVector* v = nullptr) {
  std::uniform_int_distribution<int> d(-bound, bound);
  while (true) {
    Weight w(rank);
    for (std::size_t i = 0; i < rank; ++i) w[i] = d(rng);
    if (w.is_zero()) continue;
    if (v && pairing(w, *v) == 0) continue;
    return w;
  }
}

inline FiniteCharacter random_character(std::mt19937& rng, std::size_t rank, int terms, int bound) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> d(-bound, bound);
  FiniteCharacter c(rank);
  for (int t = 0; t < terms; ++t) {
    Weight w(rank);
    for (std::size_t i = 0; i < rank; ++i) w[i] = d(rng);
    c.add_term(w, coeff(rng));
  }
  return c;
}

/// A polarized rational whose denominators all pair positively with
/// sign * v.
inline PolarizedRational random_polarized(std::mt19937& rng, const ChamberVector& v, int max_dens) {
  const std::size_t rank = v.rank();
  std::uniform_int_distribution<int> nd(0, max_dens);
  std::bernoulli_distribution coin;
  const Polarization sign = coin(rng) ? Polarization::Plus : Polarization::Minus;
  std::vector<Weight> dens;
  const int n = nd(rng);
  for (int i = 0; i < n; ++i) {
    Weight w = random_weight(rng, rank, 3, &v);
    if (pairing(w, v) * sign_of(sign) < 0) w = -w;
    dens.push_back(w);
  }
  auto num = random_character(rng, rank, 3, 3);
  if (num.empty()) num = FiniteCharacter::one(rank);
  return PolarizedRational(num, dens, sign, v);
}

/// Valid chamber vectors for a dataset, drawn at random.
inline std::vector<ChamberVector> random_chambers(const FixedPointDataset& ds, std::mt19937& rng, int count, int bound) {
  std::vector<ChamberVector> out;
  std::uniform_int_distribution<int> d(-bound, bound);
  while (static_cast<int>(out.size()) < count) {
    ChamberVector v;
    for (std::size_t i = 0; i < ds.context.rank; ++i) v.coords.push_back(d(rng));
    bool ok = true;
    for (const auto& p : ds.points) {
      for (const auto& w : p.isotropy_weights) ok = ok && pairing(w, v) != 0;
    }
    if (ok) out.push_back(v);
  }
  return out;
}

}  // namespace morseq::testing
