#include "morseq/flag.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "morseq/errors.hpp"
#include "morseq/linalg.hpp"

namespace morseq {

namespace {

IntSquare identity(std::size_t r) {
  IntSquare m(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

IntSquare product(const IntSquare& a, const IntSquare& b) {
  const std::size_t r = a.size();
  IntSquare c(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < r; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntSquare reflection(const IntSquare& cartan, std::size_t i) {
  auto s = identity(cartan.size());
  for (std::size_t j = 0; j < cartan.size(); ++j) s[j][i] -= cartan[i][j];
  return s;
}

IntSquare cartan_matrix(const RootSystemSpec& spec, std::vector<mpq_class>& length_sq) {
  const std::size_t r = spec.rank;
  if (spec.type == 'A' && r >= 1 && r <= 4) {
    IntSquare a = identity(r);
    for (std::size_t i = 0; i < r; ++i) {
      a[i][i] = 2;
      if (i + 1 < r) a[i][i + 1] = a[i + 1][i] = -1;
    }
    length_sq.assign(r, 2);
    return a;
  }
  if (spec.type == 'B' && r == 2) {
    length_sq = {2, 1};
    return {{2, -2}, {-1, 2}};
  }
  if (spec.type == 'G' && r == 2) {
    length_sq = {2, 6};
    return {{2, -1}, {-3, 2}};
  }
  throw InvalidInput("unsupported root system " + spec.name() + " (supported: A1..A4, B2, G2)");
}

Weight dominant_conjugate(const RootSystem& rs, Weight mu) {
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (mu[i] < 0) {
        mu -= mu[i] * rs.simple_roots[i];
        moved = true;
      }
    }
  }
  return mu;
}

FiniteCharacter denominator_product(const RootSystem& rs) {
  auto d = FiniteCharacter::one(rs.rank());
  for (const auto& a : rs.positive_roots) d = d * one_minus(-a);
  return d;
}

}  // namespace

std::string WeylElement::id() const {
  if (word.empty()) return "e";
  std::string s;
  for (auto i : word) s += "s" + std::to_string(i);
  return s;
}

Weight RootSystem::act(const WeylElement& w, const Weight& lambda) const {
  if (lambda.rank() != rank()) throw InvalidInput("rank mismatch: weight " + lambda.to_string() + " for " + spec.name());
  Weight out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) out[i] += w.matrix[i][j] * lambda[j];
  }
  return out;
}

std::vector<mpq_class> RootSystem::root_coords(const Weight& lambda) const {
  linalg::QMatrix at(rank(), rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) at(i, j) = static_cast<long>(cartan[j][i]);
  }
  const auto inv = linalg::inverse(at);
  linalg::Vector x(rank());
  for (std::size_t i = 0; i < rank(); ++i) x[i] = static_cast<long>(lambda[i]);
  return linalg::apply(*inv, x);
}

bool RootSystem::dominates(const Weight& lambda, const Weight& mu) const {
  const auto c = root_coords(lambda - mu);
  return std::all_of(c.begin(), c.end(), [](const mpq_class& q) { return q >= 0 && q.get_den() == 1; });
}

mpq_class RootSystem::inner(const Weight& a, const Weight& b) const {
  linalg::QMatrix am(rank(), rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) am(i, j) = static_cast<long>(cartan[i][j]);
  }
  const auto inv = *linalg::inverse(am);
  mpq_class s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) {
      if (a[i] == 0 || b[j] == 0) continue;
      s += mpq_class(static_cast<long>(a[i])) * inv(i, j) * length_sq[j] / 2 * mpq_class(static_cast<long>(b[j]));
    }
  }
  return s;
}

ChamberVector RootSystem::dominant_chamber() const {
  linalg::QMatrix am(rank(), rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = 0; j < rank(); ++j) am(i, j) = static_cast<long>(cartan[i][j]);
  }
  const auto v = linalg::apply(*linalg::inverse(am), linalg::Vector(rank(), 1));
  mpz_class l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  ChamberVector c;
  for (const auto& q : v) c.coords.push_back(mpz_class(q * l).get_si());
  return c;
}

const WeylElement& RootSystem::element(const std::string& id) const {
  for (const auto& w : weyl) {
    if (w.id() == id) return w;
  }
  throw InvalidInput("no Weyl element '" + id + "' in " + spec.name());
}

std::size_t RootSystem::index_of(const IntSquare& matrix) const {
  for (std::size_t k = 0; k < weyl.size(); ++k) {
    if (weyl[k].matrix == matrix) return k;
  }
  throw InvalidInput("matrix is not in the Weyl group of " + spec.name());
}

RootSystem build_root_system(const RootSystemSpec& spec) {
  RootSystem rs;
  rs.spec = spec;
  rs.cartan = cartan_matrix(spec, rs.length_sq);
  const std::size_t r = spec.rank;
  for (std::size_t i = 0; i < r; ++i) rs.simple_roots.push_back(Weight(rs.cartan[i]));
  rs.rho = Weight(std::vector<std::int64_t>(r, 1));

  std::vector<IntSquare> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back(reflection(rs.cartan, i));
  std::map<IntSquare, std::size_t> seen;
  rs.weyl.push_back({{}, identity(r), 0});
  seen.emplace(identity(r), 0);
  for (std::size_t k = 0; k < rs.weyl.size(); ++k) {
    for (std::size_t i = 0; i < r; ++i) {
      auto m = product(rs.weyl[k].matrix, gens[i]);
      if (seen.contains(m)) continue;
      WeylElement w;
      w.word = rs.weyl[k].word;
      w.word.push_back(i + 1);
      w.length = rs.weyl[k].length + 1;
      w.matrix = m;
      seen.emplace(std::move(m), rs.weyl.size());
      rs.weyl.push_back(std::move(w));
    }
  }

  std::set<Weight> roots;
  for (const auto& w : rs.weyl) {
    for (const auto& a : rs.simple_roots) roots.insert(rs.act(w, a));
  }
  for (const auto& a : roots) {
    const auto c = rs.root_coords(a);
    if (std::all_of(c.begin(), c.end(), [](const mpq_class& q) { return q >= 0; })) rs.positive_roots.push_back(a);
  }
  return rs;
}

FlowDigraph bruhat_cover_digraph(const RootSystem& rs) {
  std::set<IntSquare> reflections;
  for (const auto& w : rs.weyl) {
    auto inv = identity(rs.rank());
    for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) inv = product(inv, reflection(rs.cartan, *it - 1));
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      reflections.insert(product(product(w.matrix, reflection(rs.cartan, i)), inv));
    }
  }
  FlowDigraph g;
  for (const auto& w : rs.weyl) g.vertices.push_back(w.id());
  for (const auto& w : rs.weyl) {
    for (const auto& t : reflections) {
      const auto& wt = rs.weyl[rs.index_of(product(w.matrix, t))];
      if (wt.length == w.length + 1) g.edges.emplace_back(w.id(), wt.id());
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

FixedPointDataset flag_dataset(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank()) throw InvalidInput("rank mismatch: lambda has length " + std::to_string(lambda.rank()));
  FixedPointDataset ds;
  ds.context.rank = rs.rank();
  ds.ambient_dim = rs.positive_roots.size();
  ds.compact = true;
  for (const auto& w : rs.weyl) {
    FixedPointRecord rec;
    rec.id = w.id();
    for (const auto& a : rs.positive_roots) rec.isotropy_weights.push_back(rs.act(w, a));
    rec.fiber = FiniteCharacter::monomial(rs.act(w, lambda));
    ds.points.push_back(std::move(rec));
  }
  ds.edges = bruhat_cover_digraph(rs).edges;
  return ds;
}

PolarizedRational verma_character(const RootSystem& rs, const Weight& mu) {
  if (mu.rank() != rs.rank()) throw InvalidInput("rank mismatch: weight " + mu.to_string());
  std::vector<Weight> dens;
  for (const auto& a : rs.positive_roots) dens.push_back(-a);
  return PolarizedRational(FiniteCharacter::monomial(mu), std::move(dens), Polarization::Minus,
                           rs.dominant_chamber());
}

PolarizedRational local_cohomology_character(const RootSystem& rs, const Weight& lambda, const WeylElement& w) {
  return verma_character(rs, rs.act(w, lambda + rs.rho) - rs.rho);
}

std::optional<DominantRep> dominant_rep(const RootSystem& rs, const Weight& lambda) {
  if (lambda.rank() != rs.rank()) throw InvalidInput("rank mismatch: lambda has length " + std::to_string(lambda.rank()));
  const Weight shifted = lambda + rs.rho;
  for (const auto& w : rs.weyl) {
    const Weight image = rs.act(w, shifted);
    const auto& c = image.coords();
    if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x > 0; })) {
      return DominantRep{w.id(), image - rs.rho, w.length};
    }
  }
  return std::nullopt;
}

FiniteCharacter freudenthal_character(const RootSystem& rs, const Weight& mu) {
  if (mu.rank() != rs.rank()) throw InvalidInput("rank mismatch: weight " + mu.to_string());
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    if (mu[i] < 0) throw InvalidInput("highest weight " + mu.to_string() + " is not dominant");
  }
  // Weights of R_mu, reached from mu by subtracting simple roots.
  std::map<Weight, std::size_t> depth{{mu, 0}};
  std::deque<Weight> queue{mu};
  while (!queue.empty()) {
    const Weight w = queue.front();
    queue.pop_front();
    for (const auto& a : rs.simple_roots) {
      const Weight next = w - a;
      if (depth.contains(next) || !rs.dominates(mu, dominant_conjugate(rs, next))) continue;
      depth.emplace(next, depth.at(w) + 1);
      queue.push_back(next);
    }
  }
  std::vector<Weight> order;
  for (const auto& [w, d] : depth) order.push_back(w);
  std::stable_sort(order.begin(), order.end(), [&](const Weight& a, const Weight& b) { return depth.at(a) < depth.at(b); });

  const mpq_class top = rs.inner(mu + rs.rho, mu + rs.rho);
  std::map<Weight, mpz_class> mult;
  for (const auto& w : order) {
    if (w == mu) {
      mult[w] = 1;
      continue;
    }
    mpq_class sum = 0;
    for (const auto& a : rs.positive_roots) {
      for (Weight up = w + a; depth.contains(up); up += a) sum += mpq_class(mult.at(up)) * rs.inner(up, a);
    }
    const mpq_class m = 2 * sum / (top - rs.inner(w + rs.rho, w + rs.rho));
    if (m.get_den() != 1) throw MathFailure("Freudenthal recursion produced a non-integer multiplicity");
    mult[w] = m.get_num();
  }
  FiniteCharacter out(rs.rank());
  for (const auto& [w, m] : mult) out.add_term(w, m);
  return out;
}

BggCheck bgg_alternating_identity(const RootSystem& rs, const Weight& lambda) {
  BggCheck check;
  check.lhs = FiniteCharacter(rs.rank());
  for (const auto& w : rs.weyl) {
    check.lhs.add_term(rs.act(w, lambda + rs.rho) - rs.rho, w.length % 2 ? -1 : 1);
  }
  check.rhs = freudenthal_character(rs, lambda) * denominator_product(rs);
  check.holds = check.lhs == check.rhs;
  return check;
}

BoxedGraded bott_cohomology(const RootSystem& rs, const Weight& lambda) {
  BoxedGraded out;
  if (const auto rep = dominant_rep(rs, lambda)) {
    out.emplace(static_cast<int>(rep->degree), freudenthal_character(rs, rep->mu));
  }
  return out;
}

}  // namespace morseq
