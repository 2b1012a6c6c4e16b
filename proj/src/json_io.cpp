#include "morseq/json_io.hpp"

#include <fstream>
#include <limits>

#include "morseq/errors.hpp"

namespace morseq::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw InvalidInput(what + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(what + ": missing field '" + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InvalidInput(what + ": expected an integer, got " + j.dump());
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw InvalidInput(what + ": integer out of range");
  }
  return j.get<std::int64_t>();
}

std::size_t as_size(const Json& j, const std::string& what) {
  const auto v = as_int(j, what);
  if (v < 0) throw InvalidInput(what + ": expected a nonnegative integer, got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

Integer as_integer(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput(what + ": malformed integer string");
    return z;
  }
  throw InvalidInput(what + ": expected an integer coefficient, got " + j.dump());
}

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

std::vector<std::int64_t> int_list(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

Json to_json(const Weight& w) { return Json(w.coords()); }

Weight weight_from_json(const Json& j, std::size_t rank, const std::string& what) {
  Weight w(int_list(j, what));
  if (w.rank() != rank) {
    throw InvalidInput("rank mismatch: " + what + " has length " + std::to_string(w.rank()) + ", lattice rank is " +
                       std::to_string(rank));
  }
  return w;
}

Json to_json(const FiniteCharacter& c) {
  Json arr = Json::array();
  for (const auto& [w, k] : c.terms()) arr.push_back(Json{{"w", to_json(w)}, {"c", integer_json(k)}});
  return arr;
}

FiniteCharacter character_from_json(const Json& j, std::size_t rank, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + ": a character is a list of {\"w\",\"c\"} entries");
  FiniteCharacter c(rank);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ctx = what + "[" + std::to_string(i) + "]";
    c.add_term(weight_from_json(field(j[i], "w", ctx), rank, ctx + ".w"), as_integer(field(j[i], "c", ctx), ctx + ".c"));
  }
  return c;
}

Json to_json(const PolarizedRational& s) {
  Json dens = Json::array();
  for (const auto& d : s.denominators()) dens.push_back(to_json(d));
  return Json{{"num", to_json(s.numerator())}, {"dens", dens}, {"sign", s.sign() == Polarization::Plus ? "+" : "-"}};
}

PolarizedRational rational_from_json(const Json& j, const ChamberVector& chamber, const std::string& what) {
  const std::size_t rank = chamber.rank();
  auto num = character_from_json(field(j, "num", what), rank, what + ".num");
  std::vector<Weight> dens;
  const auto& jd = field(j, "dens", what);
  if (!jd.is_array()) throw InvalidInput(what + ".dens: expected an array");
  for (std::size_t i = 0; i < jd.size(); ++i) dens.push_back(weight_from_json(jd[i], rank, what + ".dens"));
  const auto& js = field(j, "sign", what);
  if (!js.is_string() || (js != "+" && js != "-")) throw InvalidInput(what + ".sign: expected \"+\" or \"-\"");
  return PolarizedRational(std::move(num), std::move(dens), js == "+" ? Polarization::Plus : Polarization::Minus,
                           chamber);
}

Json to_json(const RationalSum& s) {
  Json arr = Json::array();
  for (const auto& t : s) arr.push_back(to_json(t));
  return arr;
}

Json to_json(const GradedCharacter& g) {
  Json arr = Json::array();
  for (const auto& [d, s] : g) arr.push_back(Json{{"degree", d}, {"terms", to_json(s)}});
  return arr;
}

Json to_json(const BoxedGraded& g) {
  Json arr = Json::array();
  for (const auto& [q, c] : g) arr.push_back(Json{{"q", q}, {"character", to_json(c)}});
  return arr;
}

BoxedGraded boxed_graded_from_json(const Json& j, std::size_t rank, const std::string& what) {
  BoxedGraded out;
  auto put = [&](int q, FiniteCharacter c) {
    if (out.contains(q)) throw InvalidInput(what + ": degree " + std::to_string(q) + " given twice");
    if (!c.empty()) out.emplace(q, std::move(c));
  };
  if (j.is_object() && j.contains("cohomology")) {
    const auto& arr = j.at("cohomology");
    if (!arr.is_array()) throw InvalidInput(what + ".cohomology: expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ctx = what + ".cohomology[" + std::to_string(i) + "]";
      const int q = static_cast<int>(as_int(field(arr[i], "q", ctx), ctx + ".q"));
      put(q, character_from_json(field(arr[i], "character", ctx), rank, ctx + ".character"));
    }
    return out;
  }
  if (!j.is_object()) throw InvalidInput(what + ": expected {\"cohomology\":[...]} or an object keyed by degree");
  for (const auto& [key, val] : j.items()) {
    int q = 0;
    try {
      std::size_t used = 0;
      q = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InvalidInput(what + ": key '" + key + "' is not a degree");
    }
    put(q, character_from_json(val, rank, what + "." + key));
  }
  return out;
}

Json to_json(const FixedPointDataset& ds) {
  Json points = Json::array();
  for (const auto& p : ds.points) {
    Json ws = Json::array();
    for (const auto& w : p.isotropy_weights) ws.push_back(to_json(w));
    points.push_back(Json{{"id", p.id}, {"weights", ws}, {"fiber", to_json(p.fiber)}});
  }
  Json j{{"rank", ds.context.rank}, {"ambient_dim", ds.ambient_dim}, {"compact", ds.compact}, {"points", points}};
  if (ds.edges) {
    Json e = Json::array();
    for (const auto& [a, b] : *ds.edges) e.push_back(Json::array({a, b}));
    j["edges"] = e;
  }
  return j;
}

namespace {

std::vector<std::pair<std::string, std::string>> edges_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + ": expected an array of [from, to] pairs");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InvalidInput(what + "[" + std::to_string(i) + "]: expected [\"from\", \"to\"]");
    }
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

}  // namespace

FixedPointDataset dataset_from_json(const Json& j) {
  const std::string what = "dataset";
  FixedPointDataset ds;
  ds.context.rank = as_size(field(j, "rank", what), "dataset.rank");
  if (ds.context.rank == 0) throw InvalidInput("dataset.rank must be positive");
  ds.ambient_dim = as_size(field(j, "ambient_dim", what), "dataset.ambient_dim");
  if (j.contains("compact")) {
    if (!j["compact"].is_boolean()) throw InvalidInput("dataset.compact: expected a boolean");
    ds.compact = j["compact"].get<bool>();
  }
  const auto& pts = field(j, "points", what);
  if (!pts.is_array()) throw InvalidInput("dataset.points: expected an array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string ctx = "dataset.points[" + std::to_string(i) + "]";
    FixedPointRecord rec;
    const auto& id = field(pts[i], "id", ctx);
    if (!id.is_string()) throw InvalidInput(ctx + ".id: expected a string");
    rec.id = id.get<std::string>();
    const std::string pctx = "point '" + rec.id + "'";
    const auto& ws = field(pts[i], "weights", ctx);
    if (!ws.is_array()) throw InvalidInput(pctx + " weights: expected an array");
    for (std::size_t k = 0; k < ws.size(); ++k) {
      rec.isotropy_weights.push_back(weight_from_json(ws[k], ds.context.rank, pctx + " weight " + std::to_string(k)));
    }
    rec.fiber = pts[i].contains("fiber") ? character_from_json(pts[i]["fiber"], ds.context.rank, pctx + " fiber")
                                         : FiniteCharacter::one(ds.context.rank);
    ds.points.push_back(std::move(rec));
  }
  if (j.contains("edges")) ds.edges = edges_from_json(j["edges"], "dataset.edges");
  ds.validate();
  return ds;
}

Json to_json(const FlowDigraph& g) {
  Json e = Json::array();
  for (const auto& [a, b] : g.edges) e.push_back(Json::array({a, b}));
  return Json{{"vertices", g.vertices}, {"edges", e}};
}

FlowDigraph digraph_from_json(const Json& j) {
  FlowDigraph g;
  const auto& vs = field(j, "vertices", "digraph");
  if (!vs.is_array()) throw InvalidInput("digraph.vertices: expected an array of ids");
  for (const auto& v : vs) {
    if (!v.is_string()) throw InvalidInput("digraph.vertices: ids must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  if (j.contains("edges")) g.edges = edges_from_json(j["edges"], "digraph.edges");
  g.validate();
  return g;
}

Json to_json(const Filtration& f) { return Json{{"m", f.length()}, {"layers", f.layers}}; }

Json to_json(const Fan& f) {
  return Json{{"rank", f.context.rank}, {"rays", f.rays}, {"max_cones", f.max_cones}};
}

Fan fan_from_json(const Json& j) {
  Fan f;
  f.context.rank = as_size(field(j, "rank", "fan"), "fan.rank");
  const auto& rays = field(j, "rays", "fan");
  if (!rays.is_array()) throw InvalidInput("fan.rays: expected an array");
  for (std::size_t i = 0; i < rays.size(); ++i) f.rays.push_back(int_list(rays[i], "fan.rays[" + std::to_string(i) + "]"));
  const auto& cones = field(j, "max_cones", "fan");
  if (!cones.is_array()) throw InvalidInput("fan.max_cones: expected an array");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string ctx = "fan.max_cones[" + std::to_string(i) + "]";
    if (!cones[i].is_array()) throw InvalidInput(ctx + ": expected an array of ray indices");
    std::vector<std::size_t> cone;
    for (const auto& x : cones[i]) cone.push_back(as_size(x, ctx));
    f.max_cones.push_back(std::move(cone));
  }
  f.validate();
  return f;
}

ToricDivisor divisor_from_json(const Json& j) { return ToricDivisor{int_list(field(j, "coeffs", "divisor"), "divisor.coeffs")}; }

Json to_json(const CoordinateBox& b) { return Json{{"lo", b.lo()}, {"hi", b.hi()}}; }

Json to_json(const E1Page& page) {
  Json entries = Json::array();
  for (const auto& [pq, e] : page.entries) {
    entries.push_back(Json{{"p", pq.first}, {"q", pq.second}, {"points", e.points}, {"terms", to_json(e.character)}});
  }
  return Json{{"variant", to_string(page.variant)},
              {"m", page.filtration_length},
              {"degenerate", page.degenerate},
              {"entries", entries}};
}

Json to_json(const SpectralSequence& ss) {
  Json pages = Json::array();
  for (const auto& page : ss.pages) {
    Json dims = Json::array();
    for (const auto& [pq, d] : page.dims) dims.push_back(Json{{"p", pq.first}, {"q", pq.second}, {"dim", d}});
    Json diffs = Json::array();
    for (const auto& [pq, r] : page.differential_ranks) {
      diffs.push_back(Json{{"p", pq.first}, {"q", pq.second}, {"rank", r}});
    }
    pages.push_back(Json{{"r", page.r},
                         {"infinity", page.infinity},
                         {"euler", page.euler_characteristic()},
                         {"dims", dims},
                         {"differentials", diffs}});
  }
  return Json{{"weight", to_json(ss.xi)},
              {"m", ss.m},
              {"cohomology", ss.cohomology},
              {"consistent", ss.consistent},
              {"pages", pages}};
}

Json to_json(const MorseReport& rep) {
  Json j{{"variant", to_string(rep.variant)},
         {"divisible", rep.divisible},
         {"nonneg", rep.nonneg},
         {"lhs", to_json(rep.lhs_boxed)},
         {"rhs", to_json(rep.rhs)},
         {"Q", to_json(rep.q)}};
  if (!rep.failure.empty()) j["failure"] = rep.failure;
  return j;
}

}  // namespace morseq::io
