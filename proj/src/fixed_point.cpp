#include "morseq/fixed_point.hpp"

#include <set>

#include "morseq/errors.hpp"

namespace morseq {

void FixedPointDataset::validate() const {
  if (context.rank == 0) throw InvalidInput("lattice rank must be positive");
  std::set<std::string> ids;
  for (const auto& p : points) {
    if (!ids.insert(p.id).second) throw InvalidInput("duplicate fixed point id '" + p.id + "'");
    if (p.isotropy_weights.size() != ambient_dim) {
      throw InvalidInput("point '" + p.id + "' has " + std::to_string(p.isotropy_weights.size()) +
                         " isotropy weights, expected " + std::to_string(ambient_dim));
    }
    for (const auto& w : p.isotropy_weights) {
      if (w.rank() != context.rank) {
        throw InvalidInput("rank mismatch: point '" + p.id + "' weight " + w.to_string() + " in a rank-" +
                           std::to_string(context.rank) + " dataset");
      }
      if (w.is_zero()) throw InvalidInput("point '" + p.id + "' has a zero isotropy weight");
    }
    if (p.fiber.rank() != context.rank) {
      throw InvalidInput("rank mismatch: fiber character of point '" + p.id + "'");
    }
  }
  if (edges) digraph().validate();
}

const FixedPointRecord& FixedPointDataset::point(const std::string& id) const {
  for (const auto& p : points) {
    if (p.id == id) return p;
  }
  throw InvalidInput("unknown fixed point id '" + id + "'");
}

FlowDigraph FixedPointDataset::digraph() const {
  FlowDigraph g;
  for (const auto& p : points) g.vertices.push_back(p.id);
  if (edges) g.edges = *edges;
  return g;
}

ChamberVector validate_chamber(const FixedPointDataset& ds, const std::vector<std::int64_t>& v) {
  if (v.size() != ds.context.rank) {
    throw InvalidInput("chamber vector has length " + std::to_string(v.size()) + ", lattice rank is " +
                       std::to_string(ds.context.rank));
  }
  ChamberVector c{v};
  for (const auto& p : ds.points) {
    for (const auto& w : p.isotropy_weights) {
      if (pairing(w, c) == 0) {
        throw InvalidInput("chamber vector lies on a wall: <" + w.to_string() + ", v> = 0 at point '" + p.id +
                           "'");
      }
    }
  }
  return c;
}

PolarizedRecord polarize_record(const FixedPointRecord& r, const ChamberVector& v) {
  PolarizedRecord out;
  out.id = r.id;
  for (const auto& w : r.isotropy_weights) {
    const auto s = pairing(w, v);
    if (s == 0) throw InvalidInput("chamber vector lies on a wall at point '" + r.id + "'");
    (s > 0 ? out.weights_plus : out.weights_minus).push_back(w);
  }
  out.nu_plus = out.weights_plus.size();
  return out;
}

}  // namespace morseq
