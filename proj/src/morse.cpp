#include "morseq/morse.hpp"

#include <set>

#include "morseq/errors.hpp"

namespace morseq {

const char* to_string(Variant v) { return v == Variant::CompactSupport ? "cs" : "ordinary"; }

Variant parse_variant(const std::string& s) {
  if (s == "cs" || s == "compact" || s == "compact_support") return Variant::CompactSupport;
  if (s == "ordinary") return Variant::Ordinary;
  throw InvalidInput("unknown variant '" + s + "' (expected cs or ordinary)");
}

namespace {

Weight weight_sum(const std::vector<Weight>& ws, std::size_t rank) {
  Weight s(rank);
  for (const auto& w : ws) s += w;
  return s;
}

}  // namespace

PolarizedRational cs_term(const FixedPointRecord& r, const ChamberVector& v) {
  const auto pr = polarize_record(r, v);
  const std::size_t rank = v.rank();
  std::vector<Weight> dens = pr.weights_plus;
  for (const auto& l : pr.weights_minus) dens.push_back(-l);
  return PolarizedRational(r.fiber.shifted(weight_sum(pr.weights_plus, rank)), std::move(dens), Polarization::Plus,
                           v);
}

PolarizedRational ordinary_term(const FixedPointRecord& r, const ChamberVector& v) {
  const auto pr = polarize_record(r, v);
  const std::size_t rank = v.rank();
  std::vector<Weight> dens;
  for (const auto& l : pr.weights_plus) dens.push_back(-l);
  for (const auto& l : pr.weights_minus) dens.push_back(l);
  return PolarizedRational(r.fiber.shifted(weight_sum(pr.weights_minus, rank)), std::move(dens),
                           Polarization::Minus, v);
}

int morse_degree(const FixedPointDataset& ds, const FixedPointRecord& r, const ChamberVector& v, Variant variant) {
  const auto nu = static_cast<int>(polarize_record(r, v).nu_plus);
  return variant == Variant::CompactSupport ? nu : static_cast<int>(ds.ambient_dim) - nu;
}

GradedCharacter morse_series(const FixedPointDataset& ds, const ChamberVector& v, Variant variant) {
  ds.validate();
  validate_chamber(ds, v.coords);
  GradedCharacter g;
  for (const auto& p : ds.points) {
    const int d = morse_degree(ds, p, v, variant);
    g[d].push_back(variant == Variant::CompactSupport ? cs_term(p, v) : ordinary_term(p, v));
  }
  return g;
}

GradedCharacter morse_series_cs(const FixedPointDataset& ds, const ChamberVector& v) {
  return morse_series(ds, v, Variant::CompactSupport);
}

GradedCharacter morse_series(const FixedPointDataset& ds, const ChamberVector& v) {
  return morse_series(ds, v, Variant::Ordinary);
}

RationalSum index_cs(const FixedPointDataset& ds, const ChamberVector& v) {
  return evaluate_at_minus_one(morse_series_cs(ds, v));
}

RationalSum index(const FixedPointDataset& ds, const ChamberVector& v) {
  return evaluate_at_minus_one(morse_series(ds, v));
}

E1Page e1_page(const FixedPointDataset& ds, const ChamberVector& v, const Filtration& filt, Variant variant) {
  ds.validate();
  validate_chamber(ds, v.coords);
  const auto layer = filt.layer_map();
  std::set<std::string> ids;
  for (const auto& p : ds.points) {
    ids.insert(p.id);
    if (!layer.contains(p.id)) throw InvalidInput("filtration/vertex mismatch: point '" + p.id + "' has no layer");
  }
  for (const auto& [id, l] : layer) {
    if (!ids.contains(id)) throw InvalidInput("filtration/vertex mismatch: layer member '" + id + "' is not a point");
  }
  if (ds.edges && !is_valid_filtration(ds.digraph(), filt)) {
    throw InvalidInput("filtration is not consistent with the dataset's flow edges");
  }

  E1Page page;
  page.variant = variant;
  page.filtration_length = filt.length();
  const int m = static_cast<int>(filt.length());
  for (const auto& x : ds.points) {
    const int lx = static_cast<int>(layer.at(x.id));
    const int p = variant == Variant::CompactSupport ? m - lx : lx;
    const int total = morse_degree(ds, x, v, variant);
    auto& e = page.entries[{p, total - p}];
    e.points.push_back(x.id);
    e.character.push_back(variant == Variant::CompactSupport ? cs_term(x, v) : ordinary_term(x, v));
  }
  page.degenerate = true;
  for (const auto& [pq, e] : page.entries) {
    if (pq.second != 0 && !rational_is_zero(e.character)) page.degenerate = false;
  }
  return page;
}

GradedCharacter e1_total_degrees(const E1Page& page) {
  GradedCharacter g;
  for (const auto& [pq, e] : page.entries) g[pq.first + pq.second] = concat(g[pq.first + pq.second], e.character);
  return g;
}

MorseReport verify_morse(const FixedPointDataset& ds, const ChamberVector& v, const BoxedGraded& candidate,
                         Variant variant, const CoordinateBox& box) {
  MorseReport rep;
  rep.variant = variant;
  rep.lhs = morse_series(ds, v, variant);
  rep.lhs_boxed = expand_graded(rep.lhs, box);
  for (const auto& [q, c] : candidate) {
    if (c.rank() != box.rank()) throw InvalidInput("rank mismatch: candidate degree " + std::to_string(q));
    auto r = c.restricted(box);
    if (!r.empty()) rep.rhs.emplace(q, std::move(r));
  }
  BoxedGraded diff = rep.lhs_boxed;
  for (const auto& [q, c] : rep.rhs) {
    auto [it, fresh] = diff.try_emplace(q, FiniteCharacter(box.rank()));
    it->second -= c;
  }
  try {
    rep.q = divide_by_one_plus_t(diff);
    rep.divisible = true;
    rep.nonneg = is_nonnegative(rep.q);
  } catch (const NotDivisible& e) {
    rep.divisible = false;
    rep.nonneg = false;
    rep.failure = e.what();
  }
  return rep;
}

BoxedGraded assemble_component_series(const std::vector<ComponentSeries>& components, std::size_t n) {
  BoxedGraded out;
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& c = components[k];
    if (c.fixed_dim > n || c.nu_plus > n - c.fixed_dim) {
      throw InvalidInput("component " + std::to_string(k) + ": need 0 <= nu^C <= n - n_alpha (n=" +
                         std::to_string(n) + ", n_alpha=" + std::to_string(c.fixed_dim) +
                         ", nu=" + std::to_string(c.nu_plus) + ")");
    }
    const int shift = static_cast<int>(n - c.fixed_dim - c.nu_plus);
    for (const auto& [q, ch] : c.series) {
      if (q < 0 || q > static_cast<int>(c.fixed_dim)) {
        throw InvalidInput("component " + std::to_string(k) + ": series degree " + std::to_string(q) +
                           " outside [0, n_alpha]");
      }
      auto [it, fresh] = out.try_emplace(q + shift, FiniteCharacter(ch.rank()));
      it->second += ch;
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second.empty(); });
  return out;
}

}  // namespace morseq
