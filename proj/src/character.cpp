#include "morseq/character.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "morseq/errors.hpp"

namespace morseq {

// ---------------------------------------------------------------------------
// Weight

bool Weight::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t x) { return x == 0; });
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.rank() != rank()) throw InvalidInput("rank mismatch: " + to_string() + " + " + o.to_string());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) {
  if (o.rank() != rank()) throw InvalidInput("rank mismatch: " + to_string() + " - " + o.to_string());
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.coords_) x = -x;
  return r;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

Weight operator+(Weight a, const Weight& b) { return a += b; }
Weight operator-(Weight a, const Weight& b) { return a -= b; }
Weight operator*(std::int64_t k, Weight a) {
  for (std::size_t i = 0; i < a.rank(); ++i) a[i] *= k;
  return a;
}

ChamberVector ChamberVector::operator-() const {
  ChamberVector r = *this;
  for (auto& x : r.coords) x = -x;
  return r;
}

std::int64_t pairing(const Weight& w, std::span<const std::int64_t> v) {
  if (w.rank() != v.size()) {
    throw InvalidInput("rank mismatch: weight " + w.to_string() + " paired with a rank-" +
                       std::to_string(v.size()) + " vector");
  }
  std::int64_t s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i];
  return s;
}

std::int64_t pairing(const Weight& w, const ChamberVector& v) { return pairing(w, std::span<const std::int64_t>(v.coords)); }

// ---------------------------------------------------------------------------
// CoordinateBox

CoordinateBox::CoordinateBox(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.empty()) throw InvalidInput("box bounds must have equal positive length");
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (lo_[i] > hi_[i]) throw InvalidInput("box has lo > hi on axis " + std::to_string(i));
  }
}

CoordinateBox CoordinateBox::cube(std::size_t rank, std::int64_t lo, std::int64_t hi) {
  return CoordinateBox(std::vector<std::int64_t>(rank, lo), std::vector<std::int64_t>(rank, hi));
}

bool CoordinateBox::contains(const Weight& w) const {
  if (w.rank() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (w[i] < lo_[i] || w[i] > hi_[i]) return false;
  }
  return true;
}

bool CoordinateBox::on_boundary(const Weight& w) const {
  if (!contains(w)) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (w[i] == lo_[i] || w[i] == hi_[i]) return true;
  }
  return false;
}

std::uint64_t CoordinateBox::count() const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < rank(); ++i) n *= static_cast<std::uint64_t>(hi_[i] - lo_[i] + 1);
  return n;
}

CoordinateBox CoordinateBox::inflated(std::int64_t margin) const {
  auto lo = lo_;
  auto hi = hi_;
  for (auto& x : lo) x -= margin;
  for (auto& x : hi) x += margin;
  return CoordinateBox(std::move(lo), std::move(hi));
}

void CoordinateBox::for_each(const std::function<void(const Weight&)>& fn) const {
  Weight w(lo_);
  while (true) {
    fn(w);
    std::size_t axis = rank();
    while (axis > 0) {
      --axis;
      if (w[axis] < hi_[axis]) {
        ++w[axis];
        for (std::size_t j = axis + 1; j < rank(); ++j) w[j] = lo_[j];
        break;
      }
      if (axis == 0) return;
    }
  }
}

std::vector<Weight> CoordinateBox::points() const {
  std::vector<Weight> out;
  out.reserve(count());
  for_each([&](const Weight& w) { out.push_back(w); });
  return out;
}

CoordinateBox CoordinateBox::bounding(std::span<const Weight> weights) {
  if (weights.empty()) throw InvalidInput("cannot bound an empty weight list");
  std::vector<std::int64_t> lo = weights.front().coords();
  std::vector<std::int64_t> hi = lo;
  for (const auto& w : weights) {
    if (w.rank() != lo.size()) throw InvalidInput("rank mismatch in bounding box");
    for (std::size_t i = 0; i < lo.size(); ++i) {
      lo[i] = std::min(lo[i], w[i]);
      hi[i] = std::max(hi[i], w[i]);
    }
  }
  return CoordinateBox(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// FiniteCharacter

FiniteCharacter FiniteCharacter::monomial(const Weight& w, const Integer& c) {
  FiniteCharacter r(w.rank());
  r.add_term(w, c);
  return r;
}

FiniteCharacter FiniteCharacter::one(std::size_t rank) { return monomial(Weight(rank), 1); }

void FiniteCharacter::check_rank(const Weight& w) const {
  if (w.rank() != rank_) {
    throw InvalidInput("rank mismatch: weight " + w.to_string() + " in a rank-" + std::to_string(rank_) +
                       " character");
  }
}

Integer FiniteCharacter::coefficient(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer FiniteCharacter::total() const {
  Integer s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

void FiniteCharacter::add_term(const Weight& w, const Integer& c) {
  check_rank(w);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FiniteCharacter& FiniteCharacter::operator+=(const FiniteCharacter& o) {
  if (o.rank_ != rank_) throw InvalidInput("rank mismatch in character sum");
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FiniteCharacter& FiniteCharacter::operator-=(const FiniteCharacter& o) {
  if (o.rank_ != rank_) throw InvalidInput("rank mismatch in character difference");
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

FiniteCharacter FiniteCharacter::operator-() const { return scaled(-1); }

FiniteCharacter FiniteCharacter::shifted(const Weight& by) const {
  check_rank(by);
  FiniteCharacter r(rank_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w + by, c);
  return r;
}

FiniteCharacter FiniteCharacter::scaled(const Integer& k) const {
  FiniteCharacter r(rank_);
  if (k == 0) return r;
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * k);
  return r;
}

FiniteCharacter FiniteCharacter::restricted(const CoordinateBox& box) const {
  if (box.rank() != rank_) throw InvalidInput("rank mismatch between box and character");
  FiniteCharacter r(rank_);
  for (const auto& [w, c] : terms_) {
    if (box.contains(w)) r.terms_.emplace(w, c);
  }
  return r;
}

std::optional<Weight> FiniteCharacter::min_weight() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<Weight> FiniteCharacter::max_weight() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

bool FiniteCharacter::operator==(const FiniteCharacter& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

FiniteCharacter operator+(FiniteCharacter a, const FiniteCharacter& b) { return a += b; }
FiniteCharacter operator-(FiniteCharacter a, const FiniteCharacter& b) { return a -= b; }

FiniteCharacter operator*(const FiniteCharacter& a, const FiniteCharacter& b) {
  if (a.rank() != b.rank()) throw InvalidInput("rank mismatch in character product");
  FiniteCharacter r(a.rank());
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) r.add_term(wa + wb, ca * cb);
  }
  return r;
}

FiniteCharacter char_arith(const FiniteCharacter& a, const FiniteCharacter& b, ArithOp op) {
  return op == ArithOp::Add ? a + b : a * b;
}

FiniteCharacter one_minus(const Weight& mu) {
  FiniteCharacter r = FiniteCharacter::one(mu.rank());
  r.add_term(mu, -1);
  return r;
}

bool is_nonnegative(const FiniteCharacter& c) {
  return std::all_of(c.terms().begin(), c.terms().end(), [](const auto& t) { return t.second >= 0; });
}

// ---------------------------------------------------------------------------
// PolarizedRational

PolarizedRational::PolarizedRational(FiniteCharacter numerator, std::vector<Weight> denominators,
                                     Polarization sign, ChamberVector chamber)
    : numerator_(std::move(numerator)),
      denominators_(std::move(denominators)),
      sign_(sign),
      chamber_(std::move(chamber)) {
  if (chamber_.rank() != numerator_.rank()) {
    throw InvalidInput("rank mismatch: chamber vector of rank " + std::to_string(chamber_.rank()) +
                       " for a rank-" + std::to_string(numerator_.rank()) + " rational");
  }
  for (const auto& mu : denominators_) {
    if (mu.rank() != numerator_.rank()) throw InvalidInput("rank mismatch: denominator weight " + mu.to_string());
    if (mu.is_zero()) throw UnboundedExpansion("zero denominator weight: 1/(1 - e^0) has no expansion");
  }
}

PolarizedRational PolarizedRational::finite(FiniteCharacter c, ChamberVector chamber) {
  return PolarizedRational(std::move(c), {}, Polarization::Plus, std::move(chamber));
}

bool PolarizedRational::is_polarized() const {
  const int s = sign_of(sign_);
  return std::all_of(denominators_.begin(), denominators_.end(),
                     [&](const Weight& mu) { return s * pairing(mu, chamber_) > 0; });
}

PolarizedRational PolarizedRational::negated() const {
  return PolarizedRational(-numerator_, denominators_, sign_, chamber_);
}

PolarizedRational PolarizedRational::times(const FiniteCharacter& c) const {
  return PolarizedRational(numerator_ * c, denominators_, sign_, chamber_);
}

RationalSum negated(const RationalSum& s) {
  RationalSum r;
  r.reserve(s.size());
  for (const auto& t : s) r.push_back(t.negated());
  return r;
}

RationalSum concat(RationalSum a, const RationalSum& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FiniteCharacter expand_in_box(const PolarizedRational& s, const CoordinateBox& box) {
  if (box.rank() != s.rank()) throw InvalidInput("rank mismatch between box and rational");
  if (s.denominators().empty()) return s.numerator().restricted(box);
  if (!s.is_polarized()) {
    for (const auto& mu : s.denominators()) {
      if (sign_of(s.sign()) * pairing(mu, s.chamber()) <= 0) {
        throw UnboundedExpansion("denominator weight " + mu.to_string() +
                                 " is not polarized by the chamber vector; flip it first");
      }
    }
  }

  // Every term of the series has the form eta + sum k_i mu_i, and each mu_i
  // raises sign*<., v> by at least one, so the largest value of sign*<., v>
  // on the box bounds the enumeration.
  const int sigma = sign_of(s.sign());
  const auto& v = s.chamber().coords;
  std::int64_t budget = 0;
  for (std::size_t i = 0; i < box.rank(); ++i) {
    budget += std::max(sigma * v[i] * box.lo()[i], sigma * v[i] * box.hi()[i]);
  }
  auto height = [&](const Weight& w) { return sigma * pairing(w, s.chamber()); };

  std::map<Weight, Integer> current;
  for (const auto& [w, c] : s.numerator().terms()) {
    if (height(w) <= budget) current.emplace(w, c);
  }
  for (const auto& mu : s.denominators()) {
    std::map<Weight, Integer> next;
    for (const auto& [w, c] : current) {
      Weight x = w;
      while (height(x) <= budget) {
        next[x] += c;
        x += mu;
      }
    }
    std::erase_if(next, [](const auto& t) { return t.second == 0; });
    current = std::move(next);
  }

  FiniteCharacter out(s.rank());
  for (const auto& [w, c] : current) {
    if (box.contains(w)) out.add_term(w, c);
  }
  return out;
}

FiniteCharacter expand_in_box(const RationalSum& s, const CoordinateBox& box) {
  FiniteCharacter out(box.rank());
  for (const auto& t : s) out += expand_in_box(t, box);
  return out;
}

PolarizedRational flip_polarization(const PolarizedRational& s, std::size_t which) {
  if (which >= s.denominators().size()) {
    throw InvalidInput("denominator index " + std::to_string(which) + " out of range (have " +
                       std::to_string(s.denominators().size()) + ")");
  }
  // 1/(1 - e^mu) = -e^{-mu} / (1 - e^{-mu})
  const Weight mu = s.denominators()[which];
  auto dens = s.denominators();
  dens[which] = -mu;
  FiniteCharacter num = s.numerator() * FiniteCharacter::monomial(-mu, -1);

  PolarizedRational kept(num, dens, s.sign(), s.chamber());
  if (kept.is_polarized()) return kept;
  PolarizedRational swapped(std::move(num), std::move(dens), opposite(s.sign()), s.chamber());
  if (swapped.is_polarized()) return swapped;
  return kept;
}

namespace {

// A linear functional that is nonzero on every nonzero weight whose
// coordinates are bounded by `bound` in absolute value (balanced base-K digits).
std::vector<std::int64_t> separating_functional(std::size_t rank, std::int64_t bound) {
  std::vector<std::int64_t> ell(rank);
  const std::int64_t base = 2 * bound + 1;
  std::int64_t p = 1;
  for (std::size_t i = rank; i-- > 0;) {
    ell[i] = p;
    p *= base;
  }
  return ell;
}

struct CommonDenominator {
  std::vector<std::int64_t> ell;
  std::map<Weight, int> factors;  // mu with <mu, ell> > 0 -> multiplicity
  FiniteCharacter numerator;
};

CommonDenominator common_denominator(const RationalSum& s, std::size_t rank) {
  std::int64_t bound = 1;
  for (const auto& t : s) {
    for (const auto& mu : t.denominators()) {
      for (auto x : mu.coords()) bound = std::max(bound, std::abs(x));
    }
  }
  CommonDenominator cd{separating_functional(rank, bound), {}, FiniteCharacter(rank)};

  struct Normalized {
    FiniteCharacter num;
    std::map<Weight, int> mult;
  };
  std::vector<Normalized> terms;
  for (const auto& t : s) {
    if (t.rank() != rank) throw InvalidInput("rank mismatch in rational comparison");
    Normalized n{t.numerator(), {}};
    for (const auto& mu : t.denominators()) {
      if (pairing(mu, cd.ell) > 0) {
        ++n.mult[mu];
      } else {
        n.num = n.num * FiniteCharacter::monomial(-mu, -1);
        ++n.mult[-mu];
      }
    }
    for (const auto& [mu, k] : n.mult) cd.factors[mu] = std::max(cd.factors[mu], k);
    terms.push_back(std::move(n));
  }
  for (const auto& n : terms) {
    FiniteCharacter num = n.num;
    for (const auto& [mu, k] : cd.factors) {
      auto it = n.mult.find(mu);
      const int have = it == n.mult.end() ? 0 : it->second;
      for (int j = have; j < k; ++j) num = num * one_minus(mu);
    }
    cd.numerator += num;
  }
  return cd;
}

std::size_t rank_of(const RationalSum& a, const RationalSum& b) {
  if (!a.empty()) return a.front().rank();
  if (!b.empty()) return b.front().rank();
  return 0;
}

// Exact division of a Laurent polynomial by (1 - e^mu) with <mu, ell> > 0.
std::optional<FiniteCharacter> divide_one_minus(const FiniteCharacter& n, const Weight& mu,
                                                const std::vector<std::int64_t>& ell) {
  FiniteCharacter q(n.rank());
  if (n.empty()) return q;
  using Key = std::pair<std::int64_t, Weight>;
  std::map<Key, Integer> rem;
  std::int64_t top = 0;
  bool first = true;
  for (const auto& [w, c] : n.terms()) {
    const auto h = pairing(w, ell);
    rem.emplace(Key{h, w}, c);
    top = first ? h : std::max(top, h);
    first = false;
  }
  const std::int64_t limit = top - pairing(mu, ell);
  while (!rem.empty()) {
    auto it = rem.begin();
    const auto [h, w] = it->first;
    if (h > limit) return std::nullopt;
    const Integer c = it->second;
    rem.erase(it);
    q.add_term(w, c);
    Weight up = w + mu;
    auto& slot = rem[Key{pairing(up, ell), up}];
    slot += c;
    if (slot == 0) rem.erase(Key{pairing(up, ell), up});
  }
  return q;
}

}  // namespace

bool rational_is_zero(const RationalSum& s) {
  if (s.empty()) return true;
  return common_denominator(s, s.front().rank()).numerator.empty();
}

bool rational_equal(const RationalSum& a, const RationalSum& b) {
  const std::size_t rank = rank_of(a, b);
  if (rank == 0) return true;
  for (const auto& t : b) {
    if (t.rank() != rank) throw InvalidInput("rank mismatch in rational comparison");
  }
  return rational_is_zero(concat(a, negated(b)));
}

bool rational_equal(const PolarizedRational& a, const PolarizedRational& b) {
  return rational_equal(RationalSum{a}, RationalSum{b});
}

std::optional<FiniteCharacter> reduce_to_finite(const RationalSum& s) {
  if (s.empty()) return std::nullopt;
  auto cd = common_denominator(s, s.front().rank());
  FiniteCharacter n = std::move(cd.numerator);
  for (const auto& [mu, k] : cd.factors) {
    for (int j = 0; j < k; ++j) {
      auto q = divide_one_minus(n, mu, cd.ell);
      if (!q) return std::nullopt;
      n = std::move(*q);
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Graded characters

BoxedGraded expand_graded(const GradedCharacter& g, const CoordinateBox& box) {
  BoxedGraded out;
  for (const auto& [d, s] : g) out.emplace(d, expand_in_box(s, box));
  return out;
}

RationalSum evaluate_at_minus_one(const GradedCharacter& g) {
  RationalSum out;
  for (const auto& [d, s] : g) {
    out = concat(std::move(out), (d % 2 == 0) ? s : negated(s));
  }
  return out;
}

BoxedGraded divide_by_one_plus_t(const BoxedGraded& g) {
  BoxedGraded q;
  if (g.empty()) return q;
  const int lo = g.begin()->first;
  const int hi = g.rbegin()->first;
  const std::size_t rank = g.begin()->second.rank();
  for (int d = lo; d < hi; ++d) q.emplace(d, FiniteCharacter(rank));

  std::map<Weight, std::map<int, Integer>> by_weight;
  for (const auto& [d, c] : g) {
    if (c.rank() != rank) throw InvalidInput("rank mismatch across degrees");
    for (const auto& [w, x] : c.terms()) by_weight[w][d] = x;
  }
  for (const auto& [w, poly] : by_weight) {
    auto coeff = [&](int d) {
      auto it = poly.find(d);
      return it == poly.end() ? Integer(0) : it->second;
    };
    Integer prev = 0;
    for (int d = lo; d < hi; ++d) {
      Integer qd = coeff(d) - prev;
      q[d].add_term(w, qd);
      prev = qd;
    }
    const Integer remainder = coeff(hi) - prev;
    if (remainder != 0) {
      throw NotDivisible("not divisible by (1+t) at weight " + w.to_string() + ": remainder " +
                         remainder.get_str());
    }
  }
  std::erase_if(q, [](const auto& t) { return t.second.empty(); });
  return q;
}

BoxedGraded divide_by_one_plus_t(const GradedCharacter& g, const CoordinateBox& box) {
  return divide_by_one_plus_t(expand_graded(g, box));
}

BoxedGraded multiply_by_one_plus_t(const BoxedGraded& q) {
  BoxedGraded out;
  for (const auto& [d, c] : q) {
    auto [a, ia] = out.try_emplace(d, FiniteCharacter(c.rank()));
    a->second += c;
    auto [b, ib] = out.try_emplace(d + 1, FiniteCharacter(c.rank()));
    b->second += c;
  }
  std::erase_if(out, [](const auto& t) { return t.second.empty(); });
  return out;
}

bool is_nonnegative(const BoxedGraded& g) {
  return std::all_of(g.begin(), g.end(), [](const auto& t) { return is_nonnegative(t.second); });
}

}  // namespace morseq
