#include "straightedge/tower.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

namespace straightedge {

using Coeffs = std::vector<Rational>;

namespace {

std::size_t depth_of(const Tower* t) { return t ? t->depth() : 0; }
std::size_t degree_of(const Tower* t) { return std::size_t{1} << depth_of(t); }

bool all_zero(std::span<const Rational> c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Coeffs pad(std::span<const Rational> c, std::size_t size) {
  Coeffs out(c.begin(), c.end());
  out.resize(size, Rational(0));
  return out;
}

Coeffs add(std::span<const Rational> a, std::span<const Rational> b) {
  Coeffs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Coeffs sub(std::span<const Rational> a, std::span<const Rational> b) {
  Coeffs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Coeffs neg(std::span<const Rational> a) {
  Coeffs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

Coeffs scale(std::span<const Rational> a, const Rational& s) {
  Coeffs out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
  return out;
}

Coeffs concat(std::span<const Rational> lo, std::span<const Rational> hi) {
  Coeffs out(lo.begin(), lo.end());
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

Interval add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

// a * g where g.lo >= 0
Interval mul_nonneg(const Interval& a, const Interval& g) {
  if (sgn(a.lo) >= 0) return {a.lo * g.lo, a.hi * g.hi};
  if (sgn(a.hi) <= 0) return {a.lo * g.hi, a.hi * g.lo};
  return {a.lo * g.hi, a.hi * g.hi};
}

Rational isqrt_floor(const Rational& x, unsigned bits) {
  // floor(sqrt(floor(x * 4^bits))) / 2^bits
  mpz_class n = x.get_num();
  n <<= 2 * bits;
  mpz_fdiv_q(n.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  if (sgn(n) <= 0) return Rational(0);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  Rational r(s);
  r /= Rational(mpz_class(1) << bits);
  return r;
}

Rational isqrt_ceil(const Rational& x, unsigned bits) {
  mpz_class n = x.get_num();
  n <<= 2 * bits;
  mpz_cdiv_q(n.get_mpz_t(), n.get_mpz_t(), x.get_den().get_mpz_t());
  if (sgn(n) <= 0) return Rational(0);
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  if (s * s < n) s += 1;
  Rational r(s);
  r /= Rational(mpz_class(1) << bits);
  return r;
}

}  // namespace

/// Coefficient-vector algorithms. A vector for tower t has degree_of(t)
/// entries; the upper half is the coefficient of t's generator.
struct TowerOps {
  static Coeffs mul(const Tower* t, std::span<const Rational> a, std::span<const Rational> b) {
    if (t == nullptr) return {a[0] * b[0]};
    const Tower* p = t->parent_.get();
    const std::size_t half = a.size() / 2;
    auto a0 = a.first(half), a1 = a.subspan(half);
    auto b0 = b.first(half), b1 = b.subspan(half);
    const bool a1z = all_zero(a1), b1z = all_zero(b1);
    if (a1z && b1z) return concat(mul(p, a0, b0), Coeffs(half));
    if (a1z) return concat(mul(p, a0, b0), mul(p, a0, b1));
    if (b1z) return concat(mul(p, a0, b0), mul(p, a1, b0));
    if (p == nullptr) {
      const Rational& r = t->radicand_padded_[0];
      return {a[0] * b[0] + a[1] * b[1] * r, a[0] * b[1] + a[1] * b[0]};
    }
    Coeffs lo0 = mul(p, a0, b0);
    Coeffs hi1 = mul(p, a1, b1);
    Coeffs cross = mul(p, add(a0, a1), add(b0, b1));
    Coeffs hi = sub(sub(cross, lo0), hi1);
    Coeffs lo = add(lo0, mul(p, hi1, t->radicand_padded_));
    return concat(lo, hi);
  }

  static Coeffs inverse(const Tower* t, std::span<const Rational> a) {
    if (t == nullptr) {
      if (sgn(a[0]) == 0) throw DivisionByZero();
      Rational r = 1 / a[0];
      return {r};
    }
    const Tower* p = t->parent_.get();
    const std::size_t half = a.size() / 2;
    auto a0 = a.first(half), a1 = a.subspan(half);
    if (all_zero(a1)) return concat(inverse(p, a0), Coeffs(half));
    // 1/(a0 + a1 g) = (a0 - a1 g) / (a0^2 - a1^2 r)
    Coeffs norm = sub(mul(p, a0, a0), mul(p, mul(p, a1, a1), t->radicand_padded_));
    Coeffs ninv = inverse(p, norm);
    return concat(mul(p, a0, ninv), neg(mul(p, a1, ninv)));
  }

  static Interval enclose(const Tower* t, std::span<const Rational> a, unsigned bits) {
    if (t == nullptr) return {a[0], a[0]};
    const Tower* p = t->parent_.get();
    const std::size_t half = a.size() / 2;
    auto a0 = a.first(half), a1 = a.subspan(half);
    Interval lo = enclose(p, a0, bits);
    if (all_zero(a1)) return lo;
    Interval hi = enclose(p, a1, bits);
    Interval sum = add(lo, mul_nonneg(hi, t->generator_interval(bits)));
    return {floor_dyadic(sum.lo, bits + 8), ceil_dyadic(sum.hi, bits + 8)};
  }

  static int sign(const Tower* t, std::span<const Rational> a) {
    if (all_zero(a)) return 0;
    if (t == nullptr) return sgn(a[0]);
    for (unsigned bits = 48;; bits *= 2) {
      Interval iv = enclose(t, a, bits);
      if (sgn(iv.lo) > 0) return 1;
      if (sgn(iv.hi) < 0) return -1;
    }
  }

  /// A square root of `a` inside tower t, if one exists.
  static std::optional<Coeffs> sqrt(const Tower* t, std::span<const Rational> a) {
    if (t == nullptr) {
      auto r = rational_sqrt(a[0]);
      if (!r) return std::nullopt;
      return Coeffs{*r};
    }
    const Tower* p = t->parent_.get();
    const std::size_t half = a.size() / 2;
    auto c = a.first(half), d = a.subspan(half);
    std::span<const Rational> r = t->radicand_padded_;
    if (all_zero(d)) {
      if (auto s = sqrt(p, c)) return concat(*s, Coeffs(half));
      // (z g)^2 = z^2 r
      if (auto z = sqrt(p, mul(p, c, inverse(p, r)))) return concat(Coeffs(half), *z);
      return std::nullopt;
    }
    // (x + y g)^2 = c + d g  =>  x^2 = (c +- sqrt(c^2 - d^2 r)) / 2, y = d / 2x
    Coeffs nsq = sub(mul(p, c, c), mul(p, mul(p, d, d), r));
    auto n = sqrt(p, nsq);
    if (!n) return std::nullopt;
    const Rational one_half = make_rational(1, 2);
    for (int s : {1, -1}) {
      Coeffs t2 = scale(s > 0 ? add(c, *n) : sub(c, *n), one_half);
      auto x = sqrt(p, t2);
      if (!x || all_zero(*x)) continue;
      Coeffs y = mul(p, d, inverse(p, scale(*x, Rational(2))));
      return concat(*x, y);
    }
    return std::nullopt;
  }

  /// Coefficients of `c` (an element of `from`) in `target`. The target must
  /// contain `from`, either as an ancestor or through merge aliases.
  static Coeffs embed(const Tower* from, std::span<const Rational> c, const Tower* target) {
    if (from == target) return Coeffs(c.begin(), c.end());
    if (from == nullptr || Tower::is_ancestor_or_self(from, target)) {
      return pad(c, degree_of(target));
    }
    auto g = target->generator_image(from);
    if (!g) throw std::logic_error("embed: target tower does not contain source tower");
    const std::size_t half = c.size() / 2;
    const Tower* p = from->parent_.get();
    Coeffs lo = embed(p, c.first(half), target);
    auto hi_src = c.subspan(half);
    if (all_zero(hi_src)) return lo;
    Coeffs hi = embed(p, hi_src, target);
    return add(lo, mul(target, hi, *g));
  }
};

// ---------------------------------------------------------------- Tower

Tower::Tower(TowerPtr parent, Real radicand, std::size_t max_degree)
    : parent_(std::move(parent)),
      radicand_(std::move(radicand)),
      depth_(depth_of(parent_.get()) + 1),
      max_degree_(max_degree) {
  radicand_padded_ = TowerOps::embed(radicand_.tower_.get(), radicand_.coeffs_, parent_.get());
}

TowerPtr Tower::extend(const TowerPtr& parent, const Real& radicand, std::size_t max_degree) {
  const std::size_t degree = degree_of(parent.get()) * 2;
  if (degree > max_degree) {
    std::ostringstream os;
    os << "tower degree " << degree << " exceeds the configured cap " << max_degree
       << " while adjoining sqrt(" << radicand.to_string() << ")";
    throw ResourceError(os.str());
  }
  return TowerPtr(new Tower(parent, radicand, max_degree));
}

bool Tower::is_ancestor_or_self(const Tower* ancestor, const Tower* node) {
  if (ancestor == nullptr) return true;
  for (const Tower* t = node; t != nullptr; t = t->parent_.get()) {
    if (t == ancestor) return true;
    if (t->depth_ < ancestor->depth_) return false;
  }
  return false;
}

std::vector<const Tower*> Tower::chain() const {
  std::vector<const Tower*> out;
  for (const Tower* t = this; t != nullptr; t = t->parent_.get()) out.push_back(t);
  std::reverse(out.begin(), out.end());
  return out;
}

Interval Tower::generator_interval(unsigned bits) const {
  {
    std::lock_guard lock(mutex_);
    auto it = generator_cache_.find(bits);
    if (it != generator_cache_.end()) return it->second;
  }
  Interval r = TowerOps::enclose(parent_.get(), radicand_padded_, bits + 8);
  const unsigned q = bits + 4;
  Interval out{isqrt_floor(sgn(r.lo) > 0 ? r.lo : Rational(0), q), isqrt_ceil(r.hi, q)};
  std::lock_guard lock(mutex_);
  generator_cache_.emplace(bits, out);
  return out;
}

std::optional<std::vector<Rational>> Tower::generator_image(const Tower* source) const {
  const std::size_t size = degree();
  for (const Tower* a = this; a != nullptr; a = a->parent_.get()) {
    if (a == source) {
      Coeffs basis(size);
      basis[std::size_t{1} << (source->depth_ - 1)] = 1;
      return basis;
    }
    std::lock_guard lock(a->mutex_);
    auto it = a->aliases_.find(source);
    if (it != a->aliases_.end()) {
      auto locked = it->second.source.lock();
      if (locked.get() == source) return pad(it->second.image, size);
    }
  }
  return std::nullopt;
}

void Tower::add_alias(const TowerPtr& source, std::vector<Rational> image) const {
  std::lock_guard lock(mutex_);
  aliases_[source.get()] = Alias{source, std::move(image)};
}

TowerPtr Tower::merge(const TowerPtr& a, const TowerPtr& b) {
  if (a == b || b == nullptr) return a;
  if (a == nullptr) return b;
  if (is_ancestor_or_self(b.get(), a.get())) return a;
  if (is_ancestor_or_self(a.get(), b.get())) return b;
  {
    std::lock_guard lock(a->mutex_);
    auto it = a->merge_cache_.find(b.get());
    if (it != a->merge_cache_.end() && it->second.first.lock() == b) {
      if (auto m = it->second.second.lock()) return m;
    }
  }
  const std::size_t cap = std::min(a->max_degree_, b->max_degree_);
  TowerPtr m = a;
  for (const Tower* level : b->chain()) {
    if (m->generator_image(level)) continue;
    Coeffs r = TowerOps::embed(level->parent_.get(), level->radicand_padded_, m.get());
    TowerPtr source = level->shared_from_this();
    if (auto y = TowerOps::sqrt(m.get(), r)) {
      if (TowerOps::sign(m.get(), *y) < 0) *y = neg(*y);
      m->add_alias(source, std::move(*y));
      continue;
    }
    m = extend(m, Real(m, r), cap);
    Coeffs gen(m->degree());
    gen[m->degree() / 2] = 1;
    m->add_alias(source, std::move(gen));
  }
  std::lock_guard lock(a->mutex_);
  a->merge_cache_[b.get()] = {b, m};
  return m;
}

// ----------------------------------------------------------------- Real

Real::Real(TowerPtr tower, std::vector<Rational> coeffs)
    : tower_(std::move(tower)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != degree_of(tower_.get())) {
    throw std::invalid_argument("coefficient count does not match tower degree");
  }
  shrink();
}

void Real::shrink() {
  while (tower_ != nullptr) {
    const std::size_t half = coeffs_.size() / 2;
    if (!all_zero(std::span<const Rational>(coeffs_).subspan(half))) break;
    coeffs_.resize(half);
    tower_ = tower_->parent_;
  }
}

std::size_t Real::depth() const { return depth_of(tower_.get()); }

bool Real::is_zero() const { return all_zero(coeffs_); }

const Rational& Real::rational_value() const {
  if (!is_rational()) throw std::logic_error("rational_value on an irrational element");
  return coeffs_[0];
}

int Real::sign() const { return TowerOps::sign(tower_.get(), coeffs_); }

Interval Real::enclose(unsigned bits) const { return TowerOps::enclose(tower_.get(), coeffs_, bits); }

double Real::approx() const {
  Interval iv = enclose(64);
  Rational mid = (iv.lo + iv.hi) / 2;
  return mid.get_d();
}

Real Real::operator-() const {
  Real out = *this;
  for (auto& q : out.coeffs_) q = -q;
  return out;
}

namespace {

template <class Op>
Real combine(const Real& a, const Real& b, Op op) {
  if (a.tower() == b.tower()) {
    return Real(a.tower(), op(a.tower().get(), a.coeffs(), b.coeffs()));
  }
  TowerPtr m = Tower::merge(a.tower(), b.tower());
  Coeffs ea = TowerOps::embed(a.tower().get(), a.coeffs(), m.get());
  Coeffs eb = TowerOps::embed(b.tower().get(), b.coeffs(), m.get());
  return Real(m, op(m.get(), ea, eb));
}

}  // namespace

Real operator+(const Real& a, const Real& b) {
  if (b.is_rational() && a.is_rational()) return Real(a.coeffs_[0] + b.coeffs_[0]);
  return combine(a, b, [](const Tower*, auto x, auto y) { return add(x, y); });
}

Real operator-(const Real& a, const Real& b) {
  if (b.is_rational() && a.is_rational()) return Real(a.coeffs_[0] - b.coeffs_[0]);
  return combine(a, b, [](const Tower*, auto x, auto y) { return sub(x, y); });
}

Real operator*(const Real& a, const Real& b) {
  if (b.is_rational()) return Real(a.tower_, scale(a.coeffs_, b.coeffs_[0]));
  if (a.is_rational()) return Real(b.tower_, scale(b.coeffs_, a.coeffs_[0]));
  return combine(a, b, [](const Tower* t, auto x, auto y) { return TowerOps::mul(t, x, y); });
}

Real operator/(const Real& a, const Real& b) { return a * b.inverse(); }

Real Real::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Real(tower_, TowerOps::inverse(tower_.get(), coeffs_));
}

std::optional<Real> Real::sqrt_in_tower() const {
  auto r = TowerOps::sqrt(tower_.get(), coeffs_);
  if (!r) return std::nullopt;
  Real out(tower_, std::move(*r));
  if (out.sign() < 0) out = -out;
  return out;
}

Real Real::sqrt(std::size_t max_degree) const {
  const int s = sign();
  if (s < 0) throw NegativeRadicand();
  if (s == 0) return Real();
  if (auto r = sqrt_in_tower()) return *r;
  if (is_rational()) {
    auto [factor, squarefree] = split_square(coeffs_[0]);
    TowerPtr t = Tower::extend(nullptr, Real(Rational(squarefree)), max_degree);
    return Real(t, {Rational(0), factor});
  }
  TowerPtr t = Tower::extend(tower_, *this, max_degree);
  Coeffs gen(t->degree());
  gen[t->degree() / 2] = 1;
  return Real(t, std::move(gen));
}

// -------------------------------------------------------------- printing

namespace {

std::string monomial(const std::vector<const Tower*>& levels, std::size_t index) {
  std::string out;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    if ((index >> j) & 1U) {
      if (!out.empty()) out += "*";
      out += "sqrt(" + levels[j]->radicand().to_string() + ")";
    }
  }
  return out;
}

}  // namespace

std::string Real::to_string() const {
  std::vector<const Tower*> levels = tower_ ? tower_->chain() : std::vector<const Tower*>{};
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    Rational a = abs(c);
    std::string mono = monomial(levels, i);
    if (mono.empty()) {
      out += a.get_str();
      continue;
    }
    if (a.get_num() != 1) out += a.get_num().get_str() + "*";
    out += mono;
    if (a.get_den() != 1) out += "/" + a.get_den().get_str();
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(); }

}  // namespace straightedge
