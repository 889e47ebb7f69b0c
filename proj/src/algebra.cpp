#include "straightedge/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace straightedge {

NumberPoly to_number_poly(const RationalPoly& p) {
  std::vector<Number> c;
  for (const auto& q : p.coeffs()) c.emplace_back(q);
  return NumberPoly(std::move(c));
}

namespace {

std::vector<Integer> integer_coefficients(const RationalPoly& p) {
  Integer l = 1;
  for (const auto& q : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<Integer> out;
  for (const auto& q : p.coeffs()) out.push_back(Integer(q.get_num() * (l / q.get_den())));
  return out;
}

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    factors.emplace_back(d, e);
  }
  if (n > 1) factors.emplace_back(n, 1);
  std::vector<Integer> divisors{1};
  for (const auto& [prime, e] : factors) {
    const std::size_t count = divisors.size();
    Integer power = 1;
    for (unsigned k = 0; k < e; ++k) {
      power *= prime;
      for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

}  // namespace

RationalRootReport rational_roots(const RationalPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  RationalRootReport report;
  std::vector<Integer> c = integer_coefficients(p);
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) {
    report.candidates.push_back(Rational(0));
    report.roots.push_back(Rational(0));
  }
  if (c.size() - low <= 1) return report;
  const auto numerators = positive_divisors(c[low]);
  const auto denominators = positive_divisors(c.back());
  std::set<Rational> seen;
  for (const auto& den : denominators) {
    for (const auto& num : numerators) {
      for (int s : {1, -1}) {
        Rational cand(num * s, den);
        cand.canonicalize();
        if (!seen.insert(cand).second) continue;
        report.candidates.push_back(cand);
        if (sgn(p.eval(cand)) == 0) report.roots.push_back(cand);
      }
    }
  }
  std::sort(report.roots.begin(), report.roots.end());
  return report;
}

namespace {

int sign_variations(const std::vector<RationalPoly>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& s : seq) {
    int v = sgn(s.eval(x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++count;
    last = v;
  }
  return count;
}

}  // namespace

std::vector<Interval> isolate_real_roots(const RationalPoly& p, const Rational& max_width) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots of the zero polynomial");
  if (p.degree() < 1) return {};
  RationalPoly g = poly_gcd(p, p.derivative());
  RationalPoly sq = p.divmod(g).first;
  std::vector<RationalPoly> seq{sq, sq.derivative()};
  while (seq.back().degree() > 0) {
    auto r = seq[seq.size() - 2].divmod(seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  Rational bound = 0;
  for (const auto& c : sq.coeffs()) bound = std::max(bound, Rational(abs(c / sq.leading())));
  bound += 1;

  std::vector<Interval> out;
  // roots in (lo, hi]
  std::function<void(const Rational&, const Rational&, int, int)> split =
      [&](const Rational& lo, const Rational& hi, int vlo, int vhi) {
        const int count = vlo - vhi;
        if (count == 0) return;
        if (count == 1 && hi - lo <= max_width) {
          out.push_back({lo, hi});
          return;
        }
        Rational mid = (lo + hi) / 2;
        const int vmid = sign_variations(seq, mid);
        split(lo, mid, vlo, vmid);
        split(mid, hi, vmid, vhi);
      };
  Rational lo = -bound;
  split(lo, bound, sign_variations(seq, lo), sign_variations(seq, bound));
  return out;
}

std::string CubicWitness::transcript() const {
  std::ostringstream os;
  os << "polynomial: " << poly.to_string() << "\n";
  os << "rational-root candidates:";
  for (const auto& c : candidates) os << " " << c;
  os << "\n";
  if (rational_root) {
    os << "refused: " << *rational_root << " is a rational root\n";
    return os.str();
  }
  os << "no candidate is a root, so the cubic has no rational root\n";
  os << "a cubic without rational roots is irreducible over Q\n";
  os << "each root generates an extension of degree 3 over Q\n";
  os << "3 does not divide 2^n, so no root lies in a quadratic tower\n";
  return os.str();
}

bool CubicWitness::revalidate() const {
  if (poly.degree() != 3) return false;
  auto fresh = rational_roots(poly);
  if (excluded) return fresh.roots.empty();
  return rational_root && std::find(fresh.roots.begin(), fresh.roots.end(), *rational_root) != fresh.roots.end();
}

CubicWitness certify_cubic_not_in_G(const RationalPoly& p) {
  if (p.degree() != 3) throw std::invalid_argument("certify_cubic_not_in_G needs a cubic, got degree " +
                                                   std::to_string(p.degree()));
  CubicWitness w;
  w.poly = p;
  auto report = rational_roots(p);
  w.candidates = report.candidates;
  if (report.roots.empty()) {
    w.excluded = true;
  } else {
    w.rational_root = report.roots.front();
  }
  return w;
}

RationalPoly mul_mod(const RationalPoly& a, const RationalPoly& b, const RationalPoly& modulus) {
  return (a * b).divmod(modulus).second;
}

RationalPoly inverse_mod(const RationalPoly& a, const RationalPoly& modulus) {
  // extended Euclid tracking the coefficient of a
  RationalPoly r0 = modulus, r1 = a.divmod(modulus).second;
  RationalPoly s0, s1 = RationalPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    RationalPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw std::domain_error("element is not invertible modulo " + modulus.to_string());
  return (Rational(1) / r0.coeff(0)) * s0;
}

RationalPoly resolvent_cubic(const RationalPoly& quartic) {
  if (quartic.degree() != 4) throw std::invalid_argument("resolvent of a non-quartic");
  const RationalPoly m = quartic.monic();
  const Rational &b = m.coeff(3), &c = m.coeff(2), &d = m.coeff(1), &e = m.coeff(0);
  return RationalPoly{-(b * b * e - 4 * c * e + d * d), b * d - 4 * e, -c, Rational(1)};
}

RationalPoly compose(const RationalPoly& a, const RationalPoly& b) {
  RationalPoly acc;
  for (int i = a.degree(); i >= 0; --i) acc = acc * b + RationalPoly::constant(a.coeff(i));
  return acc;
}

std::optional<RationalPoly> express_in(const RationalPoly& element, const RationalPoly& value,
                                       const RationalPoly& modulus) {
  const int n = modulus.degree();
  if (n < 1) throw std::invalid_argument("modulus must have positive degree");
  // augmented system: sum_j g_j * element^j = value, one row per basis power
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  RationalPoly power = RationalPoly::constant(Rational(1));
  const RationalPoly e = element.divmod(modulus).second;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[i][j] = power.coeff(i);
    power = mul_mod(power, e, modulus);
  }
  const RationalPoly v = value.divmod(modulus).second;
  for (int i = 0; i < n; ++i) m[i][n] = v.coeff(i);

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = row;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int c = col; c <= n; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (int r = row; r < n; ++r)
    if (m[r][n] != 0) return std::nullopt;
  std::vector<Rational> g(n);
  for (int r = 0; r < row; ++r) g[pivot_col[r]] = m[r][n];
  return RationalPoly(std::move(g));
}

RationalPoly characteristic_polynomial(const RationalPoly& element, const RationalPoly& modulus) {
  const int n = modulus.degree();
  if (n < 1) throw std::invalid_argument("modulus must have positive degree");
  // column j = element * t^j mod modulus
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  RationalPoly e = element.divmod(modulus).second;
  for (int j = 0; j < n; ++j) {
    RationalPoly col = mul_mod(e, RationalPoly::monomial(Rational(1), j), modulus);
    for (int i = 0; i < n; ++i) m[i][j] = col.coeff(i);
  }
  // Faddeev-LeVerrier: c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  std::vector<std::vector<Rational>> mk(n, std::vector<Rational>(n));
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> next(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int l = 0; l < n; ++l) s += m[i][l] * mk[l][j];
        next[i][j] = s;
      }
      next[i][i] += c[n - k + 1];
    }
    mk = next;
    Rational tr = 0;
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) tr += m[i][l] * mk[l][i];
    }
    c[n - k] = -tr / k;
  }
  return RationalPoly(std::move(c));
}

}  // namespace straightedge
