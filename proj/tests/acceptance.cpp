// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "morseq/cech.hpp"
#include "morseq/cli.hpp"
#include "morseq/errors.hpp"
#include "morseq/flag.hpp"
#include "morseq/flow_poset.hpp"
#include "morseq/json_io.hpp"
#include "morseq/morse.hpp"
#include "morseq/toric.hpp"
#include "support.hpp"

using namespace morseq;
namespace t = morseq::testing;

namespace {

struct Check {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

FiniteCharacter region(const CoordinateBox& box, const std::function<bool(std::int64_t, std::int64_t)>& pred) {
  FiniteCharacter out(2);
  box.for_each([&](const Weight& w) {
    if (pred(w[0], w[1])) out.add_term(w, 1);
  });
  return out;
}

std::vector<Fan> surfaces() { return {t::p2_fan(), t::p1xp1_fan(), t::f1_fan()}; }

std::string name_of(const Fan& f) {
  if (f.rays.size() == 3) return "P2";
  return f.rays[2] == std::vector<std::int64_t>{-1, 0} ? "P1xP1" : "F1";
}

std::string divisor_name(const ToricDivisor& d) {
  std::string s;
  for (auto a : d.coeffs) s += (s.empty() ? "" : ",") + std::to_string(a);
  return "D=(" + s + ")";
}

// Cohomology over a box that must hold every weight of it.
BoxedGraded full_cohomology(const Fan& f, const ToricDivisor& d, Check& c) {
  const auto box = CoordinateBox::cube(2, -14, 14);
  const auto h = full_cohomology_character(f, d, box);
  for (const auto& [q, ch] : h) {
    for (const auto& [w, k] : ch.terms()) c.require(!box.on_boundary(w), "cohomology reaches the box boundary");
  }
  return h;
}

RationalSum as_rational(const BoxedGraded& h, const ChamberVector& v) {
  FiniteCharacter alt(v.rank());
  for (const auto& [q, ch] : h) alt += q % 2 ? -ch : ch;
  return {PolarizedRational::finite(alt, v)};
}

ChamberVector chamber_for(const FixedPointDataset& ds) {
  std::mt19937 rng(1);
  return t::random_chambers(ds, rng, 1, 9).front();
}

Check criterion1() {
  Check c;
  const auto box = CoordinateBox::cube(2, -8, 8);
  for (std::int64_t k = -3; k <= 3; ++k) {
    CommandConfig cfg;
    cfg.group = "cech";
    cfg.verb = "cohomology";
    cfg.fan = MORSEQ_DATA_DIR "/p2.json";
    cfg.divisor = std::string(MORSEQ_DATA_DIR) + "/p2_c" + (k < 0 ? "m" + std::to_string(-k) : std::to_string(k)) + ".json";
    cfg.box = "-8:8";
    std::ostringstream out, err;
    c.require(run(cfg, out, err) == 0, "cech cohomology failed for c=" + std::to_string(k));
    if (!c.ok) return c;
    const auto h = io::boxed_graded_from_json(io::Json::parse(out.str()), 2, "report");
    const auto h0 = region(box, [&](auto x, auto y) { return x >= 0 && y >= 0 && x + y <= k; });
    const auto h2 = region(box, [&](auto x, auto y) { return x < 0 && y < 0 && x + y > k; });
    BoxedGraded want;
    if (!h0.empty()) want.emplace(0, h0);
    if (!h2.empty()) want.emplace(2, h2);
    c.require(h == want, "regions differ for c=" + std::to_string(k));
    const auto a = k < 0 ? -k : k;
    if (k >= 0) c.require(h0.size() == static_cast<std::size_t>((k + 1) * (k + 2) / 2), "H0 dimension");
    if (k <= -2) c.require(h2.size() == static_cast<std::size_t>((a - 1) * (a - 2) / 2), "H2 dimension");
    if (k == -1) c.require(h.empty(), "c=-1 has cohomology");
  }
  return c;
}

Check criterion2() {
  Check c;
  const auto box = CoordinateBox::cube(2, -7, 7);
  const ChamberVector v{{1, 2}};
  for (std::int64_t k = -3; k <= 3; ++k) {
    const CechCover cover(t::p2_fan(), t::p2_divisor(k), v);
    const auto e1 = page_characters(cover, box, 1);
    const std::map<Bidegree, FiniteCharacter> want{
        {{0, 0}, region(box, [](auto x, auto y) { return x >= 0 && y >= 0; })},
        {{1, 0}, region(box, [&](auto x, auto y) { return y >= 0 && x + y > k; })},
        {{2, 0}, region(box, [&](auto x, auto y) { return x < 0 && x + y > k; })}};
    c.require(e1 == want, "E1 regions differ for c=" + std::to_string(k));
    const auto e2 = page_characters(cover, box, 2);
    for (const auto& [pq, ch] : e2) c.require(pq.second == 0, "E2 off the q=0 row");
    c.require(page_characters(cover, box, 3) == e2, "E2 != E3 (no degeneration at E2)");
    const auto h = full_cohomology_character(cover, box);
    for (const auto& [p, ch] : h) c.require(e2.count({p, 0}) && e2.at({p, 0}) == ch, "E2 != cohomology");
    c.require(e2.size() == h.size(), "E2 has extra entries");
  }
  return c;
}

Check criterion3() {
  Check c;
  const auto box = CoordinateBox::cube(2, -14, 14);
  for (const auto& fan : surfaces()) {
    for (const auto& d : t::surface_divisors(fan)) {
      const auto ds = dataset_from_fan(fan, d);
      const auto v = chamber_for(ds);
      const auto h = full_cohomology(fan, d, c);
      const std::string where = name_of(fan) + " " + divisor_name(d);
      c.require(rational_equal(index_cs(ds, v), as_rational(h, v)), "index_cs != sum (-1)^q H^q on " + where);
      if (is_nef(fan, d)) {
        const auto fin = reduce_to_finite(index(ds, v));
        c.require(fin && *fin == polytope_character_oracle(fan, d, box), "index != polytope on " + where);
      }
    }
  }
  return c;
}

Check criterion4() {
  Check c;
  for (const auto& fan : surfaces()) {
    for (const auto& d : t::surface_divisors(fan)) {
      const auto ds = dataset_from_fan(fan, d);
      const auto v = chamber_for(ds);
      const auto box = default_box(fan, d, 10);
      const auto h = full_cohomology_character(fan, d, box);
      const std::string where = name_of(fan) + " " + divisor_name(d);
      for (auto variant : {Variant::Ordinary, Variant::CompactSupport}) {
        const auto rep = verify_morse(ds, v, h, variant, box);
        c.require(rep.divisible, "not divisible on " + where + ": " + rep.failure);
        c.require(rep.nonneg, "negative Q on " + where);
        const auto idx = variant == Variant::Ordinary ? index(ds, v) : index_cs(ds, v);
        c.require(rational_equal(evaluate_at_minus_one(morse_series(ds, v, variant)), idx),
                  "t=-1 evaluation differs on " + where);
      }
    }
  }
  return c;
}

Check criterion5() {
  Check c;
  std::mt19937 rng(5);
  for (std::int64_t k : {-3, 2}) {
    const auto ds = dataset_from_fan(t::p2_fan(), t::p2_divisor(k));
    const auto chambers = t::random_chambers(ds, rng, 6, 9);
    std::vector<RationalSum> idx;
    for (const auto& v : chambers) {
      idx.push_back(index(ds, v));
      std::multiset<std::size_t> nus;
      for (const auto& x : ds.points) nus.insert(polarize_record(x, v).nu_plus);
      c.require(nus == std::multiset<std::size_t>{0, 1, 2}, "nu multiset is not {0,1,2}");
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) c.require(rational_equal(idx[i], idx[j]), "index depends on chamber");
    }
  }
  return c;
}

bool bwb_holds(const RootSystem& rs, const Weight& lambda) {
  const auto v = rs.dominant_chamber();
  const auto rep = dominant_rep(rs, lambda);
  FiniteCharacter want(rs.rank());
  if (rep) want = freudenthal_character(rs, rep->mu).scaled(rep->degree % 2 ? -1 : 1);
  return rational_equal(index(flag_dataset(rs, lambda), v), RationalSum{PolarizedRational::finite(want, v)});
}

Check criterion6() {
  Check c;
  const auto a1 = build_root_system({'A', 1});
  for (std::int64_t l = -5; l <= 5; ++l) c.require(bwb_holds(a1, Weight{l}), "A1 lambda=" + std::to_string(l));
  const auto a2 = build_root_system({'A', 2});
  for (const auto& l : CoordinateBox::cube(2, -2, 2).points()) c.require(bwb_holds(a2, l), "A2 lambda=" + l.to_string());
  c.require(bwb_holds(build_root_system({'B', 2}), Weight{1, 1}), "B2 lambda=(1,1)");
  return c;
}

Check criterion7() {
  Check c;
  const auto a1 = build_root_system({'A', 1});
  for (std::int64_t l = 0; l <= 4; ++l) c.require(bgg_alternating_identity(a1, Weight{l}).holds, "A1");
  const auto a2 = build_root_system({'A', 2});
  for (const auto& l : {Weight{0, 0}, Weight{1, 0}, Weight{1, 1}, Weight{2, 1}}) {
    c.require(bgg_alternating_identity(a2, l).holds, "A2 lambda=" + l.to_string());
  }
  c.require(bgg_alternating_identity(build_root_system({'G', 2}), Weight{0, 0}).holds, "G2");
  return c;
}

Check criterion8() {
  Check c;
  for (const RootSystemSpec& s : {RootSystemSpec{'A', 1}, RootSystemSpec{'A', 2}, RootSystemSpec{'A', 3},
                                  RootSystemSpec{'A', 4}, RootSystemSpec{'B', 2}, RootSystemSpec{'G', 2}}) {
    const auto rs = build_root_system(s);
    const auto ds = flag_dataset(rs, Weight(rs.rank()));
    const auto v = rs.dominant_chamber();
    for (const auto& w : rs.weyl) {
      c.require(polarize_record(ds.point(w.id()), v).nu_minus() == w.length, s.name() + " " + w.id());
    }
  }
  return c;
}

Check criterion9() {
  Check c;
  const auto ds = t::line_dataset();
  const ChamberVector v{{1}};
  for (std::int64_t lo : {-1, -4, -9}) {
    for (std::int64_t hi : {0, 3, 11}) {
      const CoordinateBox box({lo}, {hi});
      FiniteCharacter ord(1), cs(1);
      for (std::int64_t k = 0; -k >= lo; ++k) {
        if (-k <= hi) ord.add_term(Weight{-k}, 1);
      }
      for (std::int64_t k = 1; k <= hi; ++k) {
        if (k >= lo) cs.add_term(Weight{k}, -1);
      }
      c.require(expand_in_box(index(ds, v), box) == ord, "index support");
      c.require(expand_in_box(index_cs(ds, v), box) == cs, "index_cs support");
    }
  }
  return c;
}

Check criterion10() {
  Check c;
  const auto g = io::digraph_from_json(io::read_json_file(MORSEQ_DATA_DIR "/quasicycle22.json"));
  const auto cyc = detect_quasicycle(g);
  c.require(g.vertices.size() == 22 && cyc && cyc->size() == 6, "no 6-cycle found");
  bool threw = false;
  try {
    build_filtration(g);
  } catch (const NotFilterable&) {
    threw = true;
  }
  c.require(threw, "filtration built despite a quasicycle");
  const auto f = build_filtration(flow_digraph_from_fan(t::p2_fan(), ChamberVector{{1, 2}}));
  c.require(f.layers == std::vector<std::vector<std::string>>{{"p2"}, {"p1"}, {"p0"}}, "P2 layers");
  return c;
}

Check criterion11() {
  Check c;
  std::mt19937 rng(11);
  for (const auto& fan : surfaces()) {
    const auto chambers = t::random_chambers(dataset_from_fan(fan), rng, 2, 5);
    for (const auto& d : t::surface_divisors(fan)) {
      const CechCover plain(fan, d);
      std::vector<CechCover> filtered;
      for (const auto& v : chambers) filtered.emplace_back(fan, d, v);
      CoordinateBox::cube(2, -4, 4).for_each([&](const Weight& xi) {
        c.require(weight_cochain_complex(plain, xi).d_squared_zero(), "d o d != 0");
        for (const auto& cover : filtered) {
          const auto ss = spectral_pages(cover, xi);
          c.require(ss.consistent, "inconsistent pages");
          for (const auto& p : ss.pages) {
            c.require(p.euler_characteristic() == ss.pages.front().euler_characteristic(), "Euler characteristic varies");
          }
        }
      });
    }
  }
  std::uniform_int_distribution<int> rank_pick(1, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rank = static_cast<std::size_t>(rank_pick(rng));
    ChamberVector v;
    for (std::size_t i = 0; i < rank; ++i) v.coords.push_back(static_cast<std::int64_t>(1 + (trial + i) % 4));
    auto s = t::random_polarized(rng, v, 3);
    if (s.denominators().empty()) s = PolarizedRational(s.numerator(), {t::random_weight(rng, rank, 3, &v)}, Polarization::Plus, v);
    if (!s.is_polarized()) s = PolarizedRational(s.numerator(), s.denominators(), opposite(s.sign()), v);
    const std::size_t k = static_cast<std::size_t>(trial) % s.denominators().size();
    const auto f = flip_polarization(s, k);
    const auto ff = flip_polarization(f, k);
    c.require(ff.numerator() == s.numerator() && ff.denominators() == s.denominators() && ff.sign() == s.sign(),
              "flip is not an involution");
    c.require(rational_equal(s, f) && t::cross_multiplied_equal(s, f), "flip changes the rational character");
  }
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"P2 line bundle cohomology regions", criterion1},
      {"E1 regions and degeneration at E2", criterion2},
      {"index vs Cech cohomology and polytope oracle", criterion3},
      {"Morse inequalities and t=-1 evaluation", criterion4},
      {"chamber invariance on P2", criterion5},
      {"Borel-Weil-Bott via fixed points", criterion6},
      {"BGG alternating identity", criterion7},
      {"polarizing index equals length", criterion8},
      {"non-compact supports on C", criterion9},
      {"quasicycles and filtrations", criterion10},
      {"property suites", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!c.ok) std::cout << " (" << c.why << ")";
    std::cout << "\n";
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
