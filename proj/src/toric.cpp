#include "morseq/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "morseq/errors.hpp"
#include "morseq/linalg.hpp"

namespace morseq {

namespace {

std::int64_t dot(const Weight& m, const std::vector<std::int64_t>& ray) { return pairing(m, ray); }

std::string cone_text(const std::vector<std::size_t>& cone) {
  std::string s = "[";
  for (std::size_t i = 0; i < cone.size(); ++i) s += (i ? "," : "") + std::to_string(cone[i]);
  return s + "]";
}

void check_divisor(const Fan& f, const ToricDivisor& d) {
  if (d.coeffs.size() != f.rays.size()) {
    throw InvalidInput("divisor has " + std::to_string(d.coeffs.size()) + " coefficients, fan has " +
                       std::to_string(f.rays.size()) + " rays");
  }
}

ConeDual dual_of(const Fan& f, std::size_t c) {
  const auto& cone = f.max_cones[c];
  const std::size_t r = f.rank();
  linalg::QMatrix rt(r, r);  // columns are the rays
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) rt(i, j) = static_cast<long>(f.rays[cone[j]][i]);
  }
  const auto inv = linalg::inverse(rt);
  if (!inv) throw InvalidInput("maximal cone " + cone_text(cone) + " is degenerate");
  ConeDual out;
  out.rays = cone;
  for (std::size_t j = 0; j < r; ++j) {
    Weight m(r);
    for (std::size_t i = 0; i < r; ++i) {
      const auto& q = (*inv)(j, i);
      if (q.get_den() != 1) {
        throw InvalidInput("maximal cone " + cone_text(cone) + " is not smooth (|det| != 1)");
      }
      m[i] = q.get_num().get_si();
    }
    out.dual.push_back(std::move(m));
  }
  return out;
}

}  // namespace

void Fan::validate() const {
  const std::size_t r = context.rank;
  if (r == 0) throw InvalidInput("fan rank must be positive");
  if (max_cones.empty()) throw InvalidInput("fan has no maximal cones");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != r) {
      throw InvalidInput("rank mismatch: ray " + std::to_string(i) + " has length " + std::to_string(rays[i].size()));
    }
    std::int64_t g = 0;
    for (auto x : rays[i]) g = std::gcd(g, x);
    if (g != 1) throw InvalidInput("ray " + std::to_string(i) + " is not primitive");
  }
  std::set<std::vector<std::size_t>> seen;
  for (const auto& cone : max_cones) {
    if (cone.size() != r) {
      throw InvalidInput("maximal cone " + cone_text(cone) + " has " + std::to_string(cone.size()) + " rays, need " +
                         std::to_string(r));
    }
    for (auto i : cone) {
      if (i >= rays.size()) throw InvalidInput("maximal cone " + cone_text(cone) + " references a missing ray");
    }
    auto sorted = cone;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("maximal cone " + cone_text(cone) + " repeats a ray");
    }
    if (!seen.insert(sorted).second) throw InvalidInput("maximal cone " + cone_text(cone) + " is listed twice");
  }
  for (std::size_t c = 0; c < max_cones.size(); ++c) dual_of(*this, c);
  std::map<std::vector<std::size_t>, int> wall_count;
  for (const auto& cone : max_cones) {
    for (std::size_t k = 0; k < cone.size(); ++k) {
      std::vector<std::size_t> tau;
      for (std::size_t j = 0; j < cone.size(); ++j) {
        if (j != k) tau.push_back(cone[j]);
      }
      std::sort(tau.begin(), tau.end());
      if (++wall_count[tau] > 2) throw InvalidInput("wall " + cone_text(tau) + " is shared by more than two cones");
    }
  }
}

std::vector<ConeDual> cone_duals(const Fan& f) {
  f.validate();
  std::vector<ConeDual> out;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) out.push_back(dual_of(f, c));
  return out;
}

std::vector<Wall> fan_walls(const Fan& f) {
  f.validate();
  std::map<std::vector<std::size_t>, Wall> walls;
  for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
    const auto& cone = f.max_cones[c];
    for (std::size_t k = 0; k < cone.size(); ++k) {
      std::vector<std::size_t> tau;
      for (std::size_t j = 0; j < cone.size(); ++j) {
        if (j != k) tau.push_back(cone[j]);
      }
      std::sort(tau.begin(), tau.end());
      auto it = walls.find(tau);
      if (it == walls.end()) {
        Wall w;
        w.rays = tau;
        w.cone_a = c;
        w.off_a = cone[k];
        walls.emplace(tau, w);
      } else {
        it->second.cone_b = c;
        it->second.off_b = cone[k];
      }
    }
  }
  std::vector<Wall> out;
  for (auto& [k, w] : walls) out.push_back(std::move(w));
  return out;
}

bool is_complete(const Fan& f) {
  const auto walls = fan_walls(f);
  return std::all_of(walls.begin(), walls.end(), [](const Wall& w) { return w.cone_b.has_value(); });
}

FixedPointDataset dataset_from_fan(const Fan& f) {
  const auto duals = cone_duals(f);
  FixedPointDataset ds;
  ds.context = f.context;
  ds.ambient_dim = f.rank();
  ds.compact = is_complete(f);
  for (std::size_t c = 0; c < duals.size(); ++c) {
    FixedPointRecord rec;
    rec.id = Fan::point_id(c);
    for (const auto& m : duals[c].dual) rec.isotropy_weights.push_back(-m);
    rec.fiber = FiniteCharacter::one(f.rank());
    ds.points.push_back(std::move(rec));
  }
  return ds;
}

FixedPointDataset dataset_from_fan(const Fan& f, const ToricDivisor& d) {
  auto ds = dataset_from_fan(f);
  const auto u = divisor_fiber_weights(f, d);
  for (std::size_t c = 0; c < u.size(); ++c) ds.points[c].fiber = FiniteCharacter::monomial(u[c]);
  return ds;
}

std::vector<Weight> divisor_fiber_weights(const Fan& f, const ToricDivisor& d) {
  const auto duals = cone_duals(f);
  check_divisor(f, d);
  std::vector<Weight> out;
  for (const auto& cd : duals) {
    Weight u(f.rank());
    for (std::size_t j = 0; j < cd.rays.size(); ++j) u += (-d.coeffs[cd.rays[j]]) * cd.dual[j];
    out.push_back(std::move(u));
  }
  return out;
}

FlowDigraph flow_digraph_from_fan(const Fan& f, const ChamberVector& v) {
  const auto ds = dataset_from_fan(f);
  validate_chamber(ds, v.coords);
  const auto duals = cone_duals(f);
  auto weight_along = [&](std::size_t cone, std::size_t off_ray) {
    const auto& cd = duals[cone];
    const auto j = std::find(cd.rays.begin(), cd.rays.end(), off_ray) - cd.rays.begin();
    return -cd.dual[j];
  };
  FlowDigraph g;
  for (const auto& p : ds.points) g.vertices.push_back(p.id);
  for (const auto& w : fan_walls(f)) {
    if (!w.cone_b) continue;
    if (pairing(weight_along(w.cone_a, w.off_a), v) > 0) {
      g.edges.emplace_back(Fan::point_id(w.cone_a), Fan::point_id(*w.cone_b));
    }
    if (pairing(weight_along(*w.cone_b, w.off_b), v) > 0) {
      g.edges.emplace_back(Fan::point_id(*w.cone_b), Fan::point_id(w.cone_a));
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<std::size_t> common_rays(const Fan& f, const std::vector<std::size_t>& charts) {
  if (charts.empty()) throw InvalidInput("chart index set is empty");
  std::vector<std::size_t> common;
  for (std::size_t k = 0; k < charts.size(); ++k) {
    if (charts[k] >= f.max_cones.size()) throw InvalidInput("chart index " + std::to_string(charts[k]) + " out of range");
    auto rays = f.max_cones[charts[k]];
    std::sort(rays.begin(), rays.end());
    if (k == 0) {
      common = rays;
    } else {
      std::vector<std::size_t> next;
      std::set_intersection(common.begin(), common.end(), rays.begin(), rays.end(), std::back_inserter(next));
      common = std::move(next);
    }
  }
  return common;
}

bool in_section_region(const Fan& f, const ToricDivisor& d, const std::vector<std::size_t>& rays, const Weight& m) {
  return std::all_of(rays.begin(), rays.end(), [&](std::size_t i) { return dot(m, f.rays[i]) >= -d.coeffs[i]; });
}

FiniteCharacter chart_sections_in_box(const Fan& f, const ToricDivisor& d, const std::vector<std::size_t>& charts,
                                      const CoordinateBox& box) {
  f.validate();
  check_divisor(f, d);
  if (box.rank() != f.rank()) throw InvalidInput("rank mismatch: box vs fan");
  const auto rays = common_rays(f, charts);
  FiniteCharacter out(f.rank());
  box.for_each([&](const Weight& m) {
    if (in_section_region(f, d, rays, m)) out.add_term(m, 1);
  });
  return out;
}

FiniteCharacter polytope_character_oracle(const Fan& f, const ToricDivisor& d, const CoordinateBox& box) {
  f.validate();
  check_divisor(f, d);
  if (!is_complete(f)) throw InvalidInput("polytope oracle needs a complete fan");
  if (box.rank() != f.rank()) throw InvalidInput("rank mismatch: box vs fan");
  std::vector<std::size_t> all(f.rays.size());
  std::iota(all.begin(), all.end(), 0);
  FiniteCharacter out(f.rank());
  box.for_each([&](const Weight& m) {
    if (!in_section_region(f, d, all, m)) return;
    if (box.on_boundary(m)) {
      throw PolytopeEscapesBox("P_D reaches the box boundary at " + m.to_string() +
                               (is_nef(f, d) ? "; enlarge the box" : "; the divisor is not nef"));
    }
    out.add_term(m, 1);
  });
  return out;
}

bool is_nef(const Fan& f, const ToricDivisor& d) {
  std::vector<std::size_t> all(f.rays.size());
  std::iota(all.begin(), all.end(), 0);
  const auto u = divisor_fiber_weights(f, d);
  return std::all_of(u.begin(), u.end(), [&](const Weight& w) { return in_section_region(f, d, all, w); });
}

std::optional<std::size_t> bb_limit_cone(const Fan& f, const std::vector<std::size_t>& face, const ChamberVector& v) {
  const auto duals = cone_duals(f);
  if (v.rank() != f.rank()) throw InvalidInput("rank mismatch: chamber vector vs fan");
  for (auto i : face) {
    if (i >= f.rays.size()) throw InvalidInput("face references a missing ray " + std::to_string(i));
  }
  bool is_face = false;
  for (const auto& cd : duals) {
    const bool contains =
        std::all_of(face.begin(), face.end(), [&](std::size_t i) {
          return std::find(cd.rays.begin(), cd.rays.end(), i) != cd.rays.end();
        });
    if (!contains) continue;
    is_face = true;
    bool inside = true;
    for (std::size_t j = 0; j < cd.rays.size(); ++j) {
      if (std::find(face.begin(), face.end(), cd.rays[j]) != face.end()) continue;
      const auto s = pairing(cd.dual[j], v);
      if (s == 0) throw InvalidInput("chamber vector projects onto a wall of the star of face " + cone_text(face));
      if (s < 0) inside = false;
    }
    if (inside) return static_cast<std::size_t>(&cd - duals.data());
  }
  if (!is_face) throw InvalidInput(cone_text(face) + " is not a face of the fan");
  return std::nullopt;
}

CoordinateBox default_box(const Fan& f, const ToricDivisor& d, std::int64_t margin) {
  const auto u = divisor_fiber_weights(f, d);
  return CoordinateBox::bounding(u).inflated(margin);
}

}  // namespace morseq
