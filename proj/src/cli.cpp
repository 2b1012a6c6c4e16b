#include "morseq/cli.hpp"

#include <ostream>
#include <sstream>

#include "morseq/errors.hpp"
#include "morseq/json_io.hpp"
#include "morseq/parallel.hpp"

namespace morseq {

namespace {

using io::Json;

std::vector<std::int64_t> parse_list(const std::string& s, const std::string& what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput(what + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw InvalidInput(what + ": empty list");
  return out;
}

CoordinateBox parse_box(const std::string& s, std::size_t rank) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidInput("--box: expected LO:HI, e.g. -5:5 or -5,-5:5,5");
  auto lo = parse_list(s.substr(0, colon), "--box lower bound");
  auto hi = parse_list(s.substr(colon + 1), "--box upper bound");
  if (lo.size() == 1) lo.assign(rank, lo.front());
  if (hi.size() == 1) hi.assign(rank, hi.front());
  if (lo.size() != rank || hi.size() != rank) {
    throw InvalidInput("rank mismatch: --box has " + std::to_string(lo.size()) + " coordinates, lattice rank is " +
                       std::to_string(rank));
  }
  return CoordinateBox(std::move(lo), std::move(hi));
}

template <typename T>
const T& require(const std::optional<T>& v, const char* flag) {
  if (!v) throw InvalidInput(std::string("missing required option ") + flag);
  return *v;
}

const std::string& require(const std::string& v, const char* flag) {
  if (v.empty()) throw InvalidInput(std::string("missing required option ") + flag);
  return v;
}

void warn_box(std::ostream& err, const CoordinateBox& box) {
  std::string lo, hi;
  for (std::size_t i = 0; i < box.rank(); ++i) {
    lo += (i ? "," : "") + std::to_string(box.lo()[i]);
    hi += (i ? "," : "") + std::to_string(box.hi()[i]);
  }
  err << "warning: no --box given; using " << lo << ":" << hi
      << " (results and certificates are relative to this box)\n";
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_array() && !j.empty() && j.front().is_object() && j.front().contains("w") && j.front().contains("c")) {
    out << path << ":\n";
    for (const auto& t : j) out << "  " << t["w"].dump() << "  " << t["c"].dump() << "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << j.dump() << "\n";
  }
}

class Runner {
 public:
  Runner(const CommandConfig& c, std::ostream& err) : c_(c), err_(err) {}

  /// Fills report and returns the exit code.
  int dispatch(Json& report) {
    const std::string cmd = c_.group + " " + c_.verb;
    if (c_.group == "toric") return toric(report);
    if (c_.group == "cech") return cech(report);
    if (c_.group == "fp") return fixed_point(report);
    if (c_.group == "poset") return poset(report);
    if (c_.group == "flag") return flag(report);
    throw InvalidInput("unknown command '" + cmd + "'");
  }

 private:
  Fan fan() const { return io::fan_from_json(io::read_json_file(require(c_.fan, "--fan"))); }
  ToricDivisor divisor(const Fan& f) const {
    if (c_.divisor.empty()) return ToricDivisor{std::vector<std::int64_t>(f.rays.size(), 0)};
    return io::divisor_from_json(io::read_json_file(c_.divisor));
  }
  FixedPointDataset dataset() const { return io::dataset_from_json(io::read_json_file(require(c_.dataset, "--dataset"))); }
  ChamberVector chamber() const { return ChamberVector{require(c_.chamber, "--chamber")}; }

  CoordinateBox toric_box(const Fan& f, const ToricDivisor& d) const {
    if (c_.box) return parse_box(*c_.box, f.rank());
    auto b = default_box(f, d, c_.margin);
    warn_box(err_, b);
    return b;
  }

  CoordinateBox dataset_box(const FixedPointDataset& ds) const {
    if (c_.box) return parse_box(*c_.box, ds.context.rank);
    std::vector<Weight> ws{Weight(ds.context.rank)};
    for (const auto& p : ds.points) {
      for (const auto& [w, k] : p.fiber.terms()) ws.push_back(w);
    }
    auto b = CoordinateBox::bounding(ws).inflated(c_.margin);
    warn_box(err_, b);
    return b;
  }

  int toric(Json& report) {
    const Fan f = fan();
    if (c_.verb == "dataset") {
      const auto d = divisor(f);
      auto ds = dataset_from_fan(f, d);
      if (c_.chamber) ds.edges = flow_digraph_from_fan(f, chamber()).edges;
      report = io::to_json(ds);
      return 0;
    }
    if (c_.verb == "flow") {
      report = io::to_json(flow_digraph_from_fan(f, chamber()));
      return 0;
    }
    if (c_.verb == "sections") {
      const auto d = divisor(f);
      report = io::to_json(chart_sections_in_box(f, d, require(c_.charts, "--charts"), toric_box(f, d)));
      return 0;
    }
    if (c_.verb == "oracle") {
      const auto d = divisor(f);
      const auto box = toric_box(f, d);
      const bool nef = is_nef(f, d);
      report = Json{{"nef", nef}, {"box", io::to_json(box)}, {"character", io::to_json(polytope_character_oracle(f, d, box))}};
      return 0;
    }
    throw InvalidInput("unknown command 'toric " + c_.verb + "'");
  }

  int cech(Json& report) {
    const Fan f = fan();
    const auto d = divisor(f);
    if (c_.verb == "pages") {
      const CechCover cover(f, d, chamber());
      const Weight xi(require(c_.weight, "--weight"));
      const auto ss = spectral_pages(cover, xi, c_.r_max);
      report = io::to_json(ss);
      report["layers"] = cover.filtration().layers;
      return ss.consistent ? 0 : 1;
    }
    if (c_.verb == "cohomology") {
      const auto box = toric_box(f, d);
      report = Json{{"box", io::to_json(box)}, {"cohomology", io::to_json(full_cohomology_character(f, d, box))}};
      return 0;
    }
    throw InvalidInput("unknown command 'cech " + c_.verb + "'");
  }

  Json rational_report(const RationalSum& s) const {
    Json j{{"terms", io::to_json(s)}};
    const auto fin = reduce_to_finite(s);
    j["finite"] = fin ? io::to_json(*fin) : Json(nullptr);
    return j;
  }

  int fixed_point(Json& report) {
    const auto ds = dataset();
    const ChamberVector v = validate_chamber(ds, require(c_.chamber, "--chamber"));
    if (c_.verb == "index" || c_.verb == "index-cs") {
      const auto s = c_.verb == "index" ? index(ds, v) : index_cs(ds, v);
      report = rational_report(s);
      if (c_.box) report["expanded"] = io::to_json(expand_in_box(s, parse_box(*c_.box, ds.context.rank)));
      return 0;
    }
    const Variant variant = parse_variant(c_.variant);
    if (c_.verb == "morse") {
      const auto g = morse_series(ds, v, variant);
      report = Json{{"variant", to_string(variant)}, {"series", io::to_json(g)}};
      if (c_.box) report["expanded"] = io::to_json(expand_graded(g, parse_box(*c_.box, ds.context.rank)));
      return 0;
    }
    if (c_.verb == "e1") {
      if (!ds.edges) throw InvalidInput("dataset has no flow edges; e1 needs them to build the filtration");
      const auto filt = build_filtration(ds.digraph());
      report = io::to_json(e1_page(ds, v, filt, variant));
      report["layers"] = filt.layers;
      return 0;
    }
    if (c_.verb == "verify") {
      const auto cand = io::boxed_graded_from_json(io::read_json_file(require(c_.candidate, "--candidate")),
                                                   ds.context.rank, "candidate");
      const auto box = dataset_box(ds);
      const auto rep = verify_morse(ds, v, cand, variant, box);
      report = io::to_json(rep);
      report["box"] = io::to_json(box);
      if (!rep.divisible) err_ << "verification failed: " << rep.failure << "\n";
      else if (!rep.nonneg) err_ << "verification failed: Q has a negative coefficient\n";
      return rep.divisible && rep.nonneg ? 0 : 1;
    }
    throw InvalidInput("unknown command 'fp " + c_.verb + "'");
  }

  FlowDigraph digraph() const {
    if (!c_.edges.empty()) return io::digraph_from_json(io::read_json_file(c_.edges));
    if (!c_.dataset.empty()) return dataset().digraph();
    throw InvalidInput("missing required option --edges (or --dataset)");
  }

  int poset(Json& report) {
    const auto g = digraph();
    if (c_.verb == "check") {
      const auto cycle = detect_quasicycle(g);
      report = Json{{"filterable", !cycle}, {"quasicycle", cycle ? Json(*cycle) : Json(nullptr)}};
      if (cycle) err_ << "quasicycle of length " << cycle->size() << " found\n";
      return cycle ? 1 : 0;
    }
    if (c_.verb == "filtration") {
      report = io::to_json(build_filtration(g));
      return 0;
    }
    throw InvalidInput("unknown command 'poset " + c_.verb + "'");
  }

  int flag(Json& report) {
    const auto rs = build_root_system({c_.root_type, c_.root_rank});
    const Weight lambda(c_.lambda.value_or(std::vector<std::int64_t>(rs.rank(), 0)));
    if (lambda.rank() != rs.rank()) {
      throw InvalidInput("rank mismatch: --lambda has " + std::to_string(lambda.rank()) + " coordinates, " +
                         rs.spec.name() + " has rank " + std::to_string(rs.rank()));
    }
    if (c_.verb == "dataset") {
      report = io::to_json(flag_dataset(rs, lambda));
      report["chamber"] = rs.dominant_chamber().coords;
      return 0;
    }
    if (c_.verb == "euler") {
      const auto ds = flag_dataset(rs, lambda);
      report = rational_report(index(ds, rs.dominant_chamber()));
      return 0;
    }
    if (c_.verb == "bgg") {
      const auto check = bgg_alternating_identity(rs, lambda);
      report = Json{{"holds", check.holds}, {"lhs", io::to_json(check.lhs)}, {"rhs", io::to_json(check.rhs)}};
      return check.holds ? 0 : 1;
    }
    if (c_.verb == "bott") {
      const auto rep = dominant_rep(rs, lambda);
      report = Json{{"singular", !rep}};
      if (rep) {
        report["w"] = rep->w;
        report["degree"] = rep->degree;
        report["mu"] = io::to_json(rep->mu);
      }
      report["cohomology"] = io::to_json(bott_cohomology(rs, lambda));
      return 0;
    }
    throw InvalidInput("unknown command 'flag " + c_.verb + "'");
  }

  const CommandConfig& c_;
  std::ostream& err_;
};

}  // namespace

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  Json report;
  int code = 0;
  try {
    if (config.format != "json" && config.format != "table") {
      throw InvalidInput("--format must be json or table");
    }
    if (config.verbosity > 0) {
      err << "morseq " << config.group << " " << config.verb << " (threads: " << thread_count() << ")\n";
    }
    code = Runner(config, err).dispatch(report);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const MathFailure& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
  if (config.format == "table") {
    flatten(report, "", out);
  } else {
    out << report.dump() << "\n";
  }
  return code;
}

}  // namespace morseq
