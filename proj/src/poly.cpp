#include "nilgeo/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nilgeo {

Rat PolyQ::eval(const Rat& x) const {
  Rat y;
  for (std::size_t i = c_.size(); i-- > 0;) y = y * x + c_[i];
  return y;
}

double PolyQ::eval(double x) const {
  double y = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) y = y * x + c_[i].to_double();
  return y;
}

PolyQ PolyQ::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Rat(static_cast<long>(i)) * c_[i];
  return PolyQ(std::move(d));
}

PolyQ PolyQ::monic() const {
  if (is_zero()) return {};
  Rat inv = lead().inv();
  std::vector<Rat> d = c_;
  for (auto& x : d) x *= inv;
  return PolyQ(std::move(d));
}

PolyQ operator+(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] += b.c_[i];
  }
  return PolyQ(std::move(c));
}

PolyQ operator-(const PolyQ& a, const PolyQ& b) {
  std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < a.c_.size()) c[i] += a.c_[i];
    if (i < b.c_.size()) c[i] -= b.c_[i];
  }
  return PolyQ(std::move(c));
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return PolyQ(std::move(c));
}

std::pair<PolyQ, PolyQ> PolyQ::divmod(const PolyQ& d) const {
  if (d.is_zero()) throw std::domain_error("PolyQ: division by zero polynomial");
  std::vector<Rat> rem = c_;
  if (rem.size() < d.c_.size()) return {PolyQ(), *this};
  std::vector<Rat> quot(rem.size() - d.c_.size() + 1);
  Rat lead_inv = d.lead().inv();
  while (rem.size() >= d.c_.size()) {
    if (rem.back().is_zero()) {
      rem.pop_back();
      continue;
    }
    std::size_t qi = rem.size() - d.c_.size();
    Rat q = rem.back() * lead_inv;
    quot[qi] = q;
    for (std::size_t i = 0; i < d.c_.size(); ++i) rem[qi + i] -= q * d.c_[i];
    rem.pop_back();
  }
  return {PolyQ(std::move(quot)), PolyQ(std::move(rem))};
}

std::string PolyQ::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    Rat a = c_[i];
    if (first) {
      if (a.sign() < 0) os << "-", a = -a;
    } else {
      os << (a.sign() < 0 ? " - " : " + ");
      if (a.sign() < 0) a = -a;
    }
    first = false;
    const bool unit = (a == Rat(1));
    if (i == 0) {
      os << a;
    } else {
      if (!unit) os << a << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyQ poly_gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

PolyQ square_free_part(const PolyQ& p) {
  if (p.degree() <= 1) return p.monic();
  PolyQ g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return p.monic();
  return p.divmod(g).first.monic();
}

PolyQ charpoly(const MatQ& A) {
  if (A.rows() != A.cols()) throw dimension_error("charpoly: not square");
  const std::size_t n = A.rows();
  // Faddeev-LeVerrier: M_0 = I, c_n = 1;
  // c_{n-k} = -tr(A M_{k-1}) / k,  M_k = A M_{k-1} + c_{n-k} I.
  std::vector<Rat> c(n + 1);
  c[n] = Rat(1);
  MatQ M = MatQ::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    MatQ AM = A * M;
    Rat ck = -(AM.trace() / Rat(static_cast<long>(k)));
    c[n - k] = ck;
    if (k < n) {
      M = AM;
      for (std::size_t i = 0; i < n; ++i) M.at(i, i) += ck;
    }
  }
  return PolyQ(std::move(c));
}

namespace {

std::vector<PolyQ> sturm_chain(const PolyQ& p) {
  std::vector<PolyQ> chain;
  chain.push_back(p);
  chain.push_back(p.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    PolyQ r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(PolyQ() - r);
  }
  return chain;
}

int sign_changes_at(const std::vector<PolyQ>& chain, const Rat& x) {
  int changes = 0, prev = 0;
  for (const auto& q : chain) {
    int s = q.eval(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int sign_changes_at_inf(const std::vector<PolyQ>& chain, int dir) {
  int changes = 0, prev = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = q.lead().sign();
    if (dir < 0 && q.degree() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

/// Cauchy bound: all real roots lie in [-B, B].
Rat root_bound(const PolyQ& p) {
  Rat lead = p.lead().abs();
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rat a = p.coeff(i).abs() / lead;
    if (a > m) m = a;
  }
  return Rat(1) + m;
}

void factor_into(mpz_class n, std::map<std::string, std::pair<mpz_class, int>>& out);

mpz_class pollard_rho(const mpz_class& n, gmp_randstate_t state) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  mpz_class x, y, c, d, diff;
  while (true) {
    mpz_urandomm(x.get_mpz_t(), state, n.get_mpz_t());
    mpz_urandomm(c.get_mpz_t(), state, n.get_mpz_t());
    if (c == 0) c = 1;
    y = x;
    d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 0 && d != n && d != 1) return d;
  }
}

void factor_into(mpz_class n, std::map<std::string, std::pair<mpz_class, int>>& out) {
  if (n < 0) n = -n;
  if (n <= 1) return;
  for (unsigned long p = 2; p <= 100000 && mpz_class(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      auto& e = out[mpz_class(p).get_str()];
      e.first = p;
      ++e.second;
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    auto& e = out[n.get_str()];
    e.first = n;
    ++e.second;
    return;
  }
  static gmp_randstate_t state;
  static bool init = false;
  if (!init) {
    gmp_randinit_mt(state);
    gmp_randseed_ui(state, 0x9e3779b9u);
    init = true;
  }
  mpz_class d = pollard_rho(n, state);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

int sturm_count(const PolyQ& p, const Rat& a, const Rat& b) {
  PolyQ q = square_free_part(p);
  auto chain = sturm_chain(q);
  return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

int sturm_count_all(const PolyQ& p) {
  PolyQ q = square_free_part(p);
  auto chain = sturm_chain(q);
  return sign_changes_at_inf(chain, -1) - sign_changes_at_inf(chain, +1);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const PolyQ& squarefree) {
  std::vector<std::pair<Rat, Rat>> out;
  if (squarefree.degree() <= 0) return out;
  auto chain = sturm_chain(squarefree);
  Rat bound = root_bound(squarefree);
  auto count = [&chain](const Rat& a, const Rat& b) {
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
  };
  // Recursively bisect until each interval holds exactly one root.
  std::vector<std::pair<Rat, Rat>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = count(a, b);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(a, b);
      continue;
    }
    Rat mid = (a + b) / Rat(2);
    work.emplace_back(a, mid);
    work.emplace_back(mid, b);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::pair<Rat, Rat> refine_root(const PolyQ& squarefree, std::pair<Rat, Rat> iv,
                                const Rat& width) {
  auto chain = sturm_chain(squarefree);
  auto count = [&chain](const Rat& a, const Rat& b) {
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
  };
  while (iv.second - iv.first > width) {
    Rat mid = (iv.first + iv.second) / Rat(2);
    if (count(iv.first, mid) == 1)
      iv.second = mid;
    else
      iv.first = mid;
  }
  return iv;
}

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::map<std::string, std::pair<mpz_class, int>> factors;
  factor_into(n, factors);
  std::vector<mpz_class> divs{1};
  for (const auto& [_, pe] : factors) {
    const auto& [p, e] = pe;
    std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

std::vector<std::pair<Rat, int>> rational_roots(const PolyQ& p) {
  std::vector<std::pair<Rat, int>> out;
  if (p.degree() <= 0) return out;
  // Clear denominators to an integer polynomial.
  mpz_class lcm = 1;
  for (const auto& c : p.coeffs()) {
    mpz_class d = c.den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    lcm = lcm / g * d;
  }
  std::vector<mpz_class> ic;
  ic.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) ic.push_back(c.num() * (lcm / c.den()));

  // Strip zero roots first.
  PolyQ work = p;
  int zero_mult = 0;
  std::size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  if (low > 0) {
    zero_mult = static_cast<int>(low);
    std::vector<Rat> shifted(p.coeffs().begin() + low, p.coeffs().end());
    work = PolyQ(std::move(shifted));
  }
  if (zero_mult > 0) out.emplace_back(Rat(0), zero_mult);
  if (work.degree() <= 0) return out;

  mpz_class a0 = work.coeff(0).num() * (lcm / work.coeff(0).den());
  mpz_class an = work.lead().num() * (lcm / work.lead().den());
  auto nums = divisors(a0), dens = divisors(an);

  std::vector<Rat> candidates;
  for (const auto& u : nums)
    for (const auto& v : dens) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
      if (g != 1) continue;
      candidates.push_back(Rat(mpq_class(u, v)));
      candidates.push_back(Rat(mpq_class(-u, v)));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& r : candidates) {
    if (!work.eval(r).is_zero()) continue;
    int mult = 0;
    PolyQ lin = PolyQ::linear_root(r);
    while (true) {
      auto [q, rem] = work.divmod(lin);
      if (!rem.is_zero()) break;
      work = std::move(q);
      ++mult;
    }
    out.emplace_back(r, mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool EigenData::has_rational_eigenvalue(const Rat& v) const {
  return std::any_of(rational.begin(), rational.end(),
                     [&](const RationalEigenvalue& e) { return e.value == v; });
}

EigenData eigen_data(const MatQ& A) {
  EigenData ed;
  ed.characteristic = charpoly(A);
  auto roots = rational_roots(ed.characteristic);
  PolyQ rest = ed.characteristic.monic();
  for (const auto& [r, mult] : roots) {
    EigenData::RationalEigenvalue e;
    e.value = r;
    e.multiplicity = mult;
    MatQ shifted = A;
    for (std::size_t i = 0; i < A.rows(); ++i) shifted.at(i, i) -= r;
    e.eigenvectors = shifted.nullspace();
    ed.rational.push_back(std::move(e));
    PolyQ lin = PolyQ::linear_root(r);
    for (int k = 0; k < mult; ++k) rest = rest.divmod(lin).first;
  }
  if (rest.degree() > 0) {
    // Split off square-free factors for reporting; degree 2-3 pieces with no
    // rational root are irreducible over Q.
    PolyQ g = poly_gcd(rest, rest.derivative());
    if (g.degree() > 0) {
      ed.nonrational_factors.push_back(rest.divmod(g).first.monic());
      ed.nonrational_factors.push_back(g.monic());
    } else {
      ed.nonrational_factors.push_back(rest.monic());
    }
  }
  return ed;
}

}  // namespace nilgeo
