#include "nilgeo/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nilgeo {

std::pair<Rat, Rat> square_free_split(const Rat& r) {
  if (r.sign() <= 0) throw std::domain_error("square_free_split: needs r > 0");
  if (r.is_perfect_square()) return {r.sqrt_exact(), Rat(1)};
  // Pull square factors of small primes out of numerator and denominator.
  mpz_class num = r.num(), den = r.den();
  mpz_class s_num = 1, s_den = 1;
  auto extract = [](mpz_class& n, mpz_class& s) {
    for (unsigned long p = 2; p <= 1000; p = (p == 2 ? 3 : p + 2)) {
      mpz_class p2 = mpz_class(p) * p;
      while (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
        n /= p2;
        s *= p;
      }
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      mpz_class root;
      mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
      s *= root;
      n = 1;
    }
  };
  extract(num, s_num);
  extract(den, s_den);
  // r = (s_num/s_den)^2 * (num/den); make the radicand an integer-like
  // rational by moving the leftover denominator up: num/den = num*den/den^2.
  Rat s(mpq_class(s_num, s_den));
  Rat f(mpq_class(num * den, 1));
  s = s / Rat(mpq_class(den, 1));
  return {s, f};
}

VecQ VecQ::unit(std::size_t n, std::size_t i) {
  VecQ e(n);
  e[i] = Rat(1);
  return e;
}

bool VecQ::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rat& x) { return x.is_zero(); });
}

Rat VecQ::dot(const VecQ& o) const {
  if (size() != o.size()) throw dimension_error("VecQ::dot: size mismatch");
  Rat s;
  for (std::size_t i = 0; i < size(); ++i) s += v_[i] * o.v_[i];
  return s;
}

VecD VecQ::to_double() const {
  VecD d(size());
  for (std::size_t i = 0; i < size(); ++i) d[i] = v_[i].to_double();
  return d;
}

std::string VecQ::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < size(); ++i) os << (i ? ", " : "") << v_[i];
  os << ")";
  return os.str();
}

VecQ& VecQ::operator+=(const VecQ& o) {
  if (size() != o.size()) throw dimension_error("VecQ: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] += o.v_[i];
  return *this;
}

VecQ& VecQ::operator-=(const VecQ& o) {
  if (size() != o.size()) throw dimension_error("VecQ: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

VecQ& VecQ::operator*=(const Rat& s) {
  for (auto& x : v_) x *= s;
  return *this;
}

VecQ VecQ::operator-() const {
  VecQ r = *this;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -r[i];
  return r;
}

MatQ::MatQ(std::initializer_list<std::initializer_list<Rat>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw dimension_error("MatQ: ragged initializer");
    for (const auto& x : row) a_.push_back(x);
  }
}

MatQ MatQ::identity(std::size_t n) {
  MatQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

MatQ MatQ::diag(const std::vector<Rat>& d) {
  MatQ m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

MatQ MatQ::from_columns(const std::vector<VecQ>& cols) {
  if (cols.empty()) return {};
  MatQ m(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != m.rows()) throw dimension_error("from_columns: ragged");
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

MatQ MatQ::transpose() const {
  MatQ t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Rat MatQ::trace() const {
  Rat s;
  for (std::size_t i = 0; i < std::min(r_, c_); ++i) s += at(i, i);
  return s;
}

VecQ MatQ::row(std::size_t i) const {
  VecQ v(c_);
  for (std::size_t j = 0; j < c_; ++j) v[j] = at(i, j);
  return v;
}

VecQ MatQ::col(std::size_t j) const {
  VecQ v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = at(i, j);
  return v;
}

bool MatQ::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& x) { return x.is_zero(); });
}

bool MatQ::is_symmetric() const {
  if (r_ != c_) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = i + 1; j < c_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

std::optional<Rat> MatQ::as_scalar_multiple_of_identity() const {
  if (r_ != c_ || r_ == 0) return std::nullopt;
  const Rat& c = at(0, 0);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) {
      if (i == j ? at(i, j) != c : !at(i, j).is_zero()) return std::nullopt;
    }
  return c;
}

MatQ& MatQ::operator+=(const MatQ& o) {
  if (r_ != o.r_ || c_ != o.c_) throw dimension_error("MatQ: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

MatQ& MatQ::operator-=(const MatQ& o) {
  if (r_ != o.r_ || c_ != o.c_) throw dimension_error("MatQ: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

MatQ& MatQ::operator*=(const Rat& s) {
  for (auto& x : a_) x *= s;
  return *this;
}

MatQ MatQ::operator-() const {
  MatQ m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

MatQ operator*(const MatQ& a, const MatQ& b) {
  if (a.c_ != b.r_) throw dimension_error("MatQ: product shape mismatch");
  MatQ m(a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j) m.at(i, j) += aik * b.at(k, j);
    }
  return m;
}

VecQ operator*(const MatQ& a, const VecQ& x) {
  if (a.c_ != x.size()) throw dimension_error("MatQ: vector shape mismatch");
  VecQ y(a.r_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t j = 0; j < a.c_; ++j) y[i] += a.at(i, j) * x[j];
  return y;
}

namespace {

// Gaussian elimination to row echelon form, in place. Returns pivot columns
// and the sign of the row permutation (for determinants).
struct Echelon {
  std::vector<std::size_t> pivot_cols;
  int perm_sign = 1;
};

Echelon echelonize(MatQ& m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
      e.perm_sign = -e.perm_sign;
    }
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      if (m.at(i, col).is_zero()) continue;
      Rat f = m.at(i, col) / m.at(row, col);
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

// Full reduced row echelon form (unit pivots, zeros above).
std::vector<std::size_t> rref(MatQ& m) {
  Echelon e = echelonize(m);
  for (std::size_t k = e.pivot_cols.size(); k-- > 0;) {
    std::size_t col = e.pivot_cols[k];
    Rat inv = m.at(k, col).inv();
    for (std::size_t j = col; j < m.cols(); ++j) m.at(k, j) *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      Rat f = m.at(i, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(k, j);
    }
  }
  return e.pivot_cols;
}

}  // namespace

Rat MatQ::det() const {
  if (r_ != c_) throw dimension_error("MatQ::det: not square");
  MatQ m = *this;
  Echelon e = echelonize(m);
  if (e.pivot_cols.size() != r_) return Rat(0);
  Rat d(e.perm_sign);
  for (std::size_t i = 0; i < r_; ++i) d *= m.at(i, i);
  return d;
}

std::optional<MatQ> MatQ::inverse() const {
  if (r_ != c_) throw dimension_error("MatQ::inverse: not square");
  MatQ aug(r_, 2 * c_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, c_ + i) = Rat(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != r_ || pivots.back() >= c_) return std::nullopt;
  MatQ inv(r_, c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) inv.at(i, j) = aug.at(i, c_ + j);
  return inv;
}

std::size_t MatQ::rank() const {
  MatQ m = *this;
  return echelonize(m).pivot_cols.size();
}

std::vector<VecQ> MatQ::nullspace() const {
  MatQ m = *this;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(c_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<VecQ> basis;
  for (std::size_t free = 0; free < c_; ++free) {
    if (is_pivot[free]) continue;
    VecQ v(c_);
    v[free] = Rat(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<VecQ> MatQ::solve(const VecQ& b) const {
  if (b.size() != r_) throw dimension_error("MatQ::solve: shape mismatch");
  MatQ aug(r_, c_ + 1);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, c_) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == c_) return std::nullopt;  // inconsistent
  VecQ x(c_);
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, c_);
  return x;
}

std::vector<std::vector<double>> MatQ::to_double() const {
  std::vector<std::vector<double>> d(r_, std::vector<double>(c_));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) d[i][j] = at(i, j).to_double();
  return d;
}

std::string MatQ::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? " " : "") << at(i, j);
  }
  os << "]";
  return os.str();
}

CongruentDiag congruent_diagonalize(const MatQ& G, const std::vector<std::size_t>& order) {
  if (!G.is_symmetric()) throw error("congruent_diagonalize: not symmetric");
  const std::size_t n = G.rows();
  std::vector<VecQ> w;
  w.reserve(n);
  if (order.empty()) {
    for (std::size_t i = 0; i < n; ++i) w.push_back(VecQ::unit(n, i));
  } else {
    if (order.size() != n) throw error("congruent_diagonalize: bad order");
    for (std::size_t i = 0; i < n; ++i) w.push_back(VecQ::unit(n, order[i]));
  }
  auto ip = [&G](const VecQ& a, const VecQ& b) { return a.dot(G * b); };

  CongruentDiag out;
  for (std::size_t k = 0; k < n; ++k) {
    // Prefer a remaining vector with nonzero self-product; when all are
    // null, split the first hyperbolic pair u, w into u+w, u-w.
    std::size_t piv = k;
    while (piv < n && ip(w[piv], w[piv]).is_zero()) ++piv;
    if (piv == n) {
      bool fixed = false;
      for (std::size_t i = k; i < n && !fixed; ++i)
        for (std::size_t j = i + 1; j < n && !fixed; ++j) {
          if (!ip(w[i], w[j]).is_zero()) {
            VecQ u = w[i], v = w[j];
            w[i] = u + v;
            w[j] = u - v;
            fixed = true;
          }
        }
      if (!fixed) {
        // The remaining block is identically zero (degenerate form).
        for (std::size_t i = k; i < n; ++i) {
          out.basis.push_back(w[i]);
          out.diag.push_back(Rat(0));
        }
        return out;
      }
      piv = k;
      while (piv < n && ip(w[piv], w[piv]).is_zero()) ++piv;
    }
    std::swap(w[k], w[piv]);
    Rat d = ip(w[k], w[k]);
    for (std::size_t l = k + 1; l < n; ++l) {
      Rat f = ip(w[l], w[k]) / d;
      if (!f.is_zero()) w[l] -= f * w[k];
    }
    out.basis.push_back(w[k]);
    out.diag.push_back(d);
  }
  return out;
}

Signature signature_of(const MatQ& G) {
  auto cd = congruent_diagonalize(G);
  Signature s;
  for (const auto& d : cd.diag) {
    if (d.sign() > 0)
      ++s.positive;
    else if (d.sign() < 0)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

std::size_t span_rank(const std::vector<VecQ>& vs) {
  if (vs.empty()) return 0;
  MatQ m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[0].size(); ++j) m.at(i, j) = vs[i][j];
  return m.rank();
}

bool in_span(const std::vector<VecQ>& vs, const VecQ& x) {
  if (x.is_zero()) return true;
  auto with = vs;
  with.push_back(x);
  return span_rank(with) == span_rank(vs);
}

std::vector<VecQ> span_basis(const std::vector<VecQ>& vs) {
  if (vs.empty()) return {};
  MatQ m(vs.size(), vs[0].size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs[0].size(); ++j) m.at(i, j) = vs[i][j];
  auto pivots = rref(m);
  std::vector<VecQ> basis;
  for (std::size_t k = 0; k < pivots.size(); ++k) basis.push_back(m.row(k));
  return basis;
}

MatD MatD::identity(std::size_t n) {
  MatD m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

MatD MatD::operator*(const MatD& o) const {
  MatD m(r, o.c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < c; ++k) {
      double aik = at(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < o.c; ++j) m.at(i, j) += aik * o.at(k, j);
    }
  return m;
}

VecD MatD::operator*(const VecD& x) const {
  VecD y(r, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) y[i] += at(i, j) * x[j];
  return y;
}

MatD MatD::operator+(const MatD& o) const {
  MatD m = *this;
  for (std::size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
  return m;
}

MatD MatD::operator-(const MatD& o) const {
  MatD m = *this;
  for (std::size_t i = 0; i < a.size(); ++i) m.a[i] -= o.a[i];
  return m;
}

MatD MatD::scaled(double s) const {
  MatD m = *this;
  for (auto& x : m.a) x *= s;
  return m;
}

MatD to_matd(const MatQ& m) {
  MatD d(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d.at(i, j) = m.at(i, j).to_double();
  return d;
}

VecD axpy(double a, const VecD& x, const VecD& y) {
  VecD r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + y[i];
  return r;
}

VecD scale(double a, const VecD& x) {
  VecD r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i];
  return r;
}

VecD add(const VecD& x, const VecD& y) {
  VecD r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

VecD sub(const VecD& x, const VecD& y) {
  VecD r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

double sup_norm(const VecD& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace nilgeo
