#include "morseq/cech.hpp"

#include <algorithm>
#include <functional>

#include "morseq/errors.hpp"
#include "morseq/parallel.hpp"

namespace morseq {

namespace {

constexpr std::size_t kMaxCharts = 20;

using linalg::IntMatrix;
using linalg::QMatrix;
using linalg::Vector;
using Indices = std::vector<std::size_t>;

}  // namespace

CechCover::CechCover(Fan f, ToricDivisor d) : fan_(std::move(f)), divisor_(std::move(d)) {
  fan_.validate();
  if (divisor_.coeffs.size() != fan_.rays.size()) {
    throw InvalidInput("divisor has " + std::to_string(divisor_.coeffs.size()) + " coefficients, fan has " +
                       std::to_string(fan_.rays.size()) + " rays");
  }
  if (fan_.max_cones.size() > kMaxCharts) {
    throw InvalidInput("Cech cover supports at most " + std::to_string(kMaxCharts) + " charts");
  }
  build_sets();
}

CechCover::CechCover(Fan f, ToricDivisor d, const ChamberVector& v) : CechCover(std::move(f), std::move(d)) {
  if (!is_complete(fan_)) throw InvalidInput("the cell filtration needs a complete fan");
  const auto filt = build_filtration(flow_digraph_from_fan(fan_, v));
  const auto layer = filt.layer_map();
  const int m = static_cast<int>(filt.length());
  const ChamberVector minus_v = -v;

  std::map<Indices, std::size_t> cell_layer;
  auto layer_of_face = [&](const Indices& face) {
    auto it = cell_layer.find(face);
    if (it != cell_layer.end()) return it->second;
    const auto cone = bb_limit_cone(fan_, face, minus_v);
    if (!cone) throw InvalidInput("orbit of a face has no limit point");
    return cell_layer[face] = layer.at(Fan::point_id(*cone));
  };
  for (auto& level : sets_) {
    for (auto& s : level) {
      std::size_t worst = 0;
      const std::size_t k = s.face.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Indices sub;
        for (std::size_t j = 0; j < k; ++j) {
          if (mask >> j & 1) sub.push_back(s.face[j]);
        }
        worst = std::max(worst, layer_of_face(sub));
      }
      s.filtration = m - static_cast<int>(worst);
    }
  }
  filtration_ = filt;
}

void CechCover::build_sets() {
  const std::size_t n = fan_.max_cones.size();
  sets_.assign(n, {});
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    ChartSet s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s.charts.push_back(i);
    }
    s.face = common_rays(fan_, s.charts);
    sets_[s.charts.size() - 1].push_back(std::move(s));
  }
  for (auto& level : sets_) {
    std::sort(level.begin(), level.end(), [](const ChartSet& a, const ChartSet& b) { return a.charts < b.charts; });
  }
}

const Filtration& CechCover::filtration() const {
  if (!filtration_) throw InvalidInput("cover was built without a chamber vector");
  return *filtration_;
}

bool CechCover::contains(const ChartSet& s, const Weight& xi) const {
  return in_section_region(fan_, divisor_, s.face, xi);
}

std::vector<std::size_t> WeightComplex::dims() const {
  std::vector<std::size_t> d;
  for (const auto& b : basis) d.push_back(b.size());
  return d;
}

bool WeightComplex::d_squared_zero() const {
  for (std::size_t q = 0; q + 1 < boundary.size(); ++q) {
    const auto dd = linalg::multiply(linalg::to_rational(boundary[q + 1]), linalg::to_rational(boundary[q]));
    if (!linalg::is_zero(dd)) return false;
  }
  return true;
}

WeightComplex weight_cochain_complex(const CechCover& cover, const Weight& xi) {
  if (xi.rank() != cover.fan().rank()) throw InvalidInput("rank mismatch: weight " + xi.to_string());
  WeightComplex wc;
  wc.xi = xi;
  const std::size_t top = cover.top_degree();
  wc.basis.resize(top + 1);
  for (std::size_t q = 0; q <= top; ++q) {
    for (const auto& s : cover.sets(q)) {
      if (cover.contains(s, xi)) wc.basis[q].push_back(s);
    }
  }
  for (std::size_t q = 0; q < top; ++q) {
    const auto& src = wc.basis[q];
    const auto& dst = wc.basis[q + 1];
    IntMatrix d(dst.size(), src.size());
    for (std::size_t row = 0; row < dst.size(); ++row) {
      const auto& big = dst[row].charts;
      for (std::size_t k = 0; k < big.size(); ++k) {
        Indices face = big;
        face.erase(face.begin() + static_cast<long>(k));
        auto it = std::lower_bound(src.begin(), src.end(), face,
                                   [](const ChartSet& s, const Indices& f) { return s.charts < f; });
        if (it != src.end() && it->charts == face) d(row, static_cast<std::size_t>(it - src.begin())) = k % 2 ? -1 : 1;
      }
    }
    wc.boundary.push_back(std::move(d));
  }
  return wc;
}

WeightComplex weight_cochain_complex(const Fan& f, const ToricDivisor& d, const Weight& xi) {
  return weight_cochain_complex(CechCover(f, d), xi);
}

std::vector<std::size_t> cohomology_dims(const WeightComplex& wc) {
  const std::size_t n = wc.basis.size();
  std::vector<std::size_t> ranks(n, 0);  // rank of d leaving degree q
  for (std::size_t q = 0; q < wc.boundary.size(); ++q) ranks[q] = linalg::rank(wc.boundary[q]);
  std::vector<std::size_t> h(n);
  for (std::size_t q = 0; q < n; ++q) h[q] = wc.basis[q].size() - ranks[q] - (q ? ranks[q - 1] : 0);
  return h;
}

long SSPage::euler_characteristic() const {
  long chi = 0;
  for (const auto& [pq, d] : dims) chi += ((pq.first + pq.second) % 2 ? -1 : 1) * static_cast<long>(d);
  return chi;
}

namespace {

// Filtered complex of one weight, with subspace computations for the
// spectral sequence Z_r^p = F^p cap d^{-1} F^{p+r}, B_s^p = F^p cap d F^{p-s},
// E_r^p = Z_r^p / (Z_{r-1}^{p+1} + B_{r-1}^p).
class FilteredComplex {
 public:
  explicit FilteredComplex(const WeightComplex& wc) : wc_(wc) {
    for (std::size_t n = 0; n < wc.basis.size(); ++n) {
      std::vector<int> f;
      for (const auto& s : wc.basis[n]) f.push_back(s.filtration);
      filt_.push_back(std::move(f));
    }
  }

  std::size_t degrees() const { return wc_.basis.size(); }
  std::size_t size(std::size_t n) const { return wc_.basis[n].size(); }

  std::size_t dim_z(int r, int p, std::size_t n) const {
    const auto cols = at_least(n, p);
    if (n + 1 >= degrees()) return cols.size();
    return cols.size() - linalg::rank(wc_.boundary[n], below(n + 1, p + r), cols);
  }

  std::size_t dim_b(int s, int p, std::size_t n) const {
    if (n == 0) return 0;
    const auto cols = at_least(n - 1, p - s);
    const auto& d = wc_.boundary[n - 1];
    return linalg::rank(d, all(n), cols) - linalg::rank(d, below(n, p), cols);
  }

  std::size_t dim_e(int r, int p, std::size_t n) const {
    return dim_z(r, p, n) - dim_z(r - 1, p + 1, n) - dim_b(r - 1, p, n) + dim_b(r, p + 1, n);
  }

  std::size_t rank_d(int r, int p, std::size_t n) const {
    return dim_z(r, p, n) - dim_z(r + 1, p, n) - dim_z(r - 1, p + 1, n) + dim_z(r, p + 1, n);
  }

  std::vector<Vector> z_space(int r, int p, std::size_t n) const {
    const auto cols = at_least(n, p);
    std::vector<Vector> out;
    if (n + 1 >= degrees()) {
      for (auto c : cols) out.push_back(unit(n, c));
      return out;
    }
    const auto rows = below(n + 1, p + r);
    for (const auto& k : linalg::kernel(sub(wc_.boundary[n], rows, cols))) out.push_back(embed(n, cols, k));
    return out;
  }

  std::vector<Vector> b_space(int s, int p, std::size_t n) const {
    if (n == 0) return {};
    const auto cols = at_least(n - 1, p - s);
    const auto& d = wc_.boundary[n - 1];
    std::vector<Vector> images;
    for (const auto& k : linalg::kernel(sub(d, below(n, p), cols))) {
      images.push_back(linalg::apply(linalg::to_rational(d), embed(n - 1, cols, k)));
    }
    return linalg::independent_span(images, size(n));
  }

  Vector apply_d(std::size_t n, const Vector& x) const {
    if (n + 1 >= degrees()) return {};
    return linalg::apply(linalg::to_rational(wc_.boundary[n]), x);
  }

 private:
  Indices at_least(std::size_t n, int p) const {
    Indices out;
    for (std::size_t i = 0; i < filt_[n].size(); ++i) {
      if (filt_[n][i] >= p) out.push_back(i);
    }
    return out;
  }
  Indices below(std::size_t n, int p) const {
    Indices out;
    for (std::size_t i = 0; i < filt_[n].size(); ++i) {
      if (filt_[n][i] < p) out.push_back(i);
    }
    return out;
  }
  Indices all(std::size_t n) const {
    Indices out(size(n));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }
  Vector unit(std::size_t n, std::size_t i) const {
    Vector v(size(n));
    v[i] = 1;
    return v;
  }
  Vector embed(std::size_t n, const Indices& cols, const Vector& k) const {
    Vector v(size(n));
    for (std::size_t j = 0; j < cols.size(); ++j) v[cols[j]] = k[j];
    return v;
  }
  static QMatrix sub(const IntMatrix& m, const Indices& rows, const Indices& cols) {
    QMatrix q(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) q(i, j) = linalg::Rational(m(rows[i], cols[j]));
    }
    return q;
  }

  const WeightComplex& wc_;
  std::vector<std::vector<int>> filt_;
};

struct Subquotient {
  std::vector<Vector> reps;     // representatives of a basis of E_r
  std::vector<Vector> killed;   // basis of Z_{r-1}^{p+1} + B_{r-1}^p
};

Subquotient subquotient(const FilteredComplex& fc, int r, int p, std::size_t n) {
  Subquotient s;
  auto a = fc.z_space(r - 1, p + 1, n);
  const auto b = fc.b_space(r - 1, p, n);
  a.insert(a.end(), b.begin(), b.end());
  s.killed = linalg::independent_span(a, fc.size(n));
  s.reps = linalg::extend_basis(s.killed, fc.z_space(r, p, n), fc.size(n));
  return s;
}

}  // namespace

SpectralSequence spectral_pages(const CechCover& cover, const Weight& xi, std::optional<std::size_t> r_max) {
  if (!cover.filtered()) throw InvalidInput("spectral pages need a cover filtered by a chamber vector");
  const auto wc = weight_cochain_complex(cover, xi);
  const FilteredComplex fc(wc);

  SpectralSequence ss;
  ss.xi = xi;
  ss.m = cover.filtration_length();
  ss.cohomology = cohomology_dims(wc);
  if (!wc.d_squared_zero()) ss.consistent = false;

  const int m = static_cast<int>(ss.m);
  const std::size_t last = r_max.value_or(ss.m + 1);
  const std::size_t degrees = fc.degrees();

  for (std::size_t ru = 0; ru <= last; ++ru) {
    const int r = static_cast<int>(ru);
    SSPage page;
    page.r = ru;
    page.infinity = ru >= ss.m + 1;
    std::map<std::pair<int, std::size_t>, Subquotient> explicit_pages;
    for (int p = 0; p <= m; ++p) {
      for (std::size_t n = 0; n < degrees; ++n) {
        const auto dim = fc.dim_e(r, p, n);
        auto sq = subquotient(fc, r, p, n);
        if (sq.reps.size() != dim) ss.consistent = false;
        if (dim) page.dims[{p, static_cast<int>(n) - p}] = dim;
        explicit_pages.emplace(std::make_pair(p, n), std::move(sq));
      }
    }
    // d_r : E_r^{p,n} -> E_r^{p+r,n+1}
    for (const auto& [key, src] : explicit_pages) {
      const auto [p, n] = key;
      if (src.reps.empty()) continue;
      const auto rank = fc.rank_d(r, p, n);
      const auto tgt = explicit_pages.find({p + r, n + 1});
      if (tgt == explicit_pages.end() || tgt->second.reps.empty()) {
        if (rank) ss.consistent = false;
        continue;
      }
      const auto& t = tgt->second;
      std::vector<Vector> columns = t.reps;
      columns.insert(columns.end(), t.killed.begin(), t.killed.end());
      QMatrix dr(t.reps.size(), src.reps.size());
      for (std::size_t j = 0; j < src.reps.size(); ++j) {
        const auto y = fc.apply_d(n, src.reps[j]);
        const auto coeffs = linalg::solve(columns, y, fc.size(n + 1));
        if (!coeffs) {
          ss.consistent = false;
          continue;
        }
        for (std::size_t i = 0; i < t.reps.size(); ++i) dr(i, j) = (*coeffs)[i];
      }
      if (linalg::rank(dr) != rank) ss.consistent = false;
      if (rank) page.differential_ranks[{p, static_cast<int>(n) - p}] = rank;
      page.differentials.emplace(Bidegree{p, static_cast<int>(n) - p}, std::move(dr));
    }
    for (const auto& [pq, d1] : page.differentials) {
      const Bidegree next{pq.first + r, pq.second - r + 1};
      const auto it = page.differentials.find(next);
      if (it == page.differentials.end()) continue;
      if (!linalg::is_zero(linalg::multiply(it->second, d1))) ss.consistent = false;
    }
    ss.pages.push_back(std::move(page));
  }

  if (!ss.pages.empty() && ss.pages.back().infinity) {
    std::vector<std::size_t> total(degrees, 0);
    for (const auto& [pq, d] : ss.pages.back().dims) total[static_cast<std::size_t>(pq.first + pq.second)] += d;
    if (total != ss.cohomology) ss.consistent = false;
  }
  return ss;
}

BoxedGraded full_cohomology_character(const CechCover& cover, const CoordinateBox& box) {
  if (box.rank() != cover.fan().rank()) throw InvalidInput("rank mismatch: box vs fan");
  const auto weights = box.points();
  const auto dims =
      parallel_map(weights, [&](const Weight& xi) { return cohomology_dims(weight_cochain_complex(cover, xi)); });
  BoxedGraded out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t q = 0; q < dims[i].size(); ++q) {
      if (!dims[i][q]) continue;
      auto [it, fresh] = out.try_emplace(static_cast<int>(q), FiniteCharacter(box.rank()));
      it->second.add_term(weights[i], static_cast<unsigned long>(dims[i][q]));
    }
  }
  return out;
}

BoxedGraded full_cohomology_character(const Fan& f, const ToricDivisor& d, const CoordinateBox& box) {
  return full_cohomology_character(CechCover(f, d), box);
}

std::map<Bidegree, FiniteCharacter> page_characters(const CechCover& cover, const CoordinateBox& box, std::size_t r) {
  if (box.rank() != cover.fan().rank()) throw InvalidInput("rank mismatch: box vs fan");
  const auto weights = box.points();
  const auto pages = parallel_map(weights, [&](const Weight& xi) {
    auto ss = spectral_pages(cover, xi, r);
    return ss.pages.back().dims;
  });
  std::map<Bidegree, FiniteCharacter> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (const auto& [pq, d] : pages[i]) {
      auto [it, fresh] = out.try_emplace(pq, FiniteCharacter(box.rank()));
      it->second.add_term(weights[i], static_cast<unsigned long>(d));
    }
  }
  return out;
}

}  // namespace morseq
