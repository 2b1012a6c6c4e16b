#pragma once

// Smooth toric varieties from fans: fixed-point datasets, flow digraphs,
// chart section regions and the lattice-polytope oracle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morseq/character.hpp"
#include "morseq/fixed_point.hpp"
#include "morseq/flow_poset.hpp"

namespace morseq {

struct Fan {
  LatticeContext context;
  std::vector<std::vector<std::int64_t>> rays;      // primitive, in the cocharacter lattice
  std::vector<std::vector<std::size_t>> max_cones;  // ray indices, r per cone

  /// Shape checks, primitivity, smoothness (|det| = 1) and walls shared by at
  /// most two cones.  Throws InvalidInput.
  void validate() const;
  std::size_t rank() const { return context.rank; }
  static std::string point_id(std::size_t cone) { return "p" + std::to_string(cone); }
};

/// D = sum a_i D_i.
struct ToricDivisor {
  std::vector<std::int64_t> coeffs;
};

/// dual[j] pairs to 1 with rays[j] and to 0 with the other rays of the cone.
struct ConeDual {
  std::vector<std::size_t> rays;
  std::vector<Weight> dual;
};

std::vector<ConeDual> cone_duals(const Fan& f);

/// tau = sigma_a \ {off_a}; cone_b is empty on the boundary of the support.
struct Wall {
  std::vector<std::size_t> rays;
  std::size_t cone_a = 0;
  std::size_t off_a = 0;
  std::optional<std::size_t> cone_b;
  std::size_t off_b = 0;
};

std::vector<Wall> fan_walls(const Fan& f);
/// Every wall shared by exactly two maximal cones.
bool is_complete(const Fan& f);

/// One point per maximal cone, id "p<index>", weights = -(dual basis);
/// trivial fibers, no edges.
FixedPointDataset dataset_from_fan(const Fan& f);
/// As above with fiber e^{u_sigma}.
FixedPointDataset dataset_from_fan(const Fan& f, const ToricDivisor& d);

/// u_sigma with <u_sigma, ray_i> = -a_i for the rays of sigma, per cone.
std::vector<Weight> divisor_fiber_weights(const Fan& f, const ToricDivisor& d);

FlowDigraph flow_digraph_from_fan(const Fan& f, const ChamberVector& v);

/// Rays common to all the listed maximal cones (the face gamma_I).
std::vector<std::size_t> common_rays(const Fan& f, const std::vector<std::size_t>& charts);

/// <m, ray> >= -a_ray for every listed ray.
bool in_section_region(const Fan& f, const ToricDivisor& d, const std::vector<std::size_t>& rays, const Weight& m);

FiniteCharacter chart_sections_in_box(const Fan& f, const ToricDivisor& d, const std::vector<std::size_t>& charts,
                                      const CoordinateBox& box);

/// Lattice points of P_D.  Throws PolytopeEscapesBox when a point of P_D sits
/// on the box boundary.
FiniteCharacter polytope_character_oracle(const Fan& f, const ToricDivisor& d, const CoordinateBox& box);

/// Every u_sigma lies in P_D.
bool is_nef(const Fan& f, const ToricDivisor& d);

/// The maximal cone sigma containing the face whose relative interior (modulo
/// the face) contains v; empty when no cone qualifies (non-complete fans).
/// Throws InvalidInput when v projects onto a wall.
std::optional<std::size_t> bb_limit_cone(const Fan& f, const std::vector<std::size_t>& face, const ChamberVector& v);

/// Bounding box of the u_sigma inflated by margin.
CoordinateBox default_box(const Fan& f, const ToricDivisor& d, std::int64_t margin);

}  // namespace morseq
