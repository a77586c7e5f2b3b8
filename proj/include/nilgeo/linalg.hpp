#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "nilgeo/rational.hpp"

namespace nilgeo {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct dimension_error : error {
  using error::error;
};

using VecD = std::vector<double>;

/// Dense rational vector.
class VecQ {
 public:
  VecQ() = default;
  explicit VecQ(std::size_t n) : v_(n) {}
  VecQ(std::initializer_list<Rat> xs) : v_(xs) {}
  explicit VecQ(std::vector<Rat> xs) : v_(std::move(xs)) {}

  static VecQ unit(std::size_t n, std::size_t i);

  [[nodiscard]] std::size_t size() const { return v_.size(); }
  Rat& operator[](std::size_t i) { return v_[i]; }
  const Rat& operator[](std::size_t i) const { return v_[i]; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] Rat dot(const VecQ& o) const;  // plain coordinate dot
  [[nodiscard]] VecD to_double() const;
  [[nodiscard]] std::string str() const;

  VecQ& operator+=(const VecQ& o);
  VecQ& operator-=(const VecQ& o);
  VecQ& operator*=(const Rat& s);
  friend VecQ operator+(VecQ a, const VecQ& b) { return a += b; }
  friend VecQ operator-(VecQ a, const VecQ& b) { return a -= b; }
  friend VecQ operator*(const Rat& s, VecQ a) { return a *= s; }
  friend VecQ operator*(VecQ a, const Rat& s) { return a *= s; }
  VecQ operator-() const;
  friend bool operator==(const VecQ& a, const VecQ& b) { return a.v_ == b.v_; }

 private:
  std::vector<Rat> v_;
};

/// Dense rational matrix, row-major.
class MatQ {
 public:
  MatQ() = default;
  MatQ(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  MatQ(std::initializer_list<std::initializer_list<Rat>> rows);

  static MatQ identity(std::size_t n);
  static MatQ diag(const std::vector<Rat>& d);
  static MatQ from_columns(const std::vector<VecQ>& cols);

  [[nodiscard]] std::size_t rows() const { return r_; }
  [[nodiscard]] std::size_t cols() const { return c_; }
  Rat& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  [[nodiscard]] MatQ transpose() const;
  [[nodiscard]] Rat trace() const;
  [[nodiscard]] VecQ row(std::size_t i) const;
  [[nodiscard]] VecQ col(std::size_t j) const;

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_symmetric() const;
  /// If the matrix equals c*Id, returns c.
  [[nodiscard]] std::optional<Rat> as_scalar_multiple_of_identity() const;

  [[nodiscard]] Rat det() const;
  [[nodiscard]] std::optional<MatQ> inverse() const;
  [[nodiscard]] std::size_t rank() const;
  /// Basis of the kernel {x : Ax = 0}.
  [[nodiscard]] std::vector<VecQ> nullspace() const;
  /// One solution of Ax = b, or nullopt if inconsistent.
  [[nodiscard]] std::optional<VecQ> solve(const VecQ& b) const;

  [[nodiscard]] std::vector<std::vector<double>> to_double() const;
  [[nodiscard]] std::string str() const;

  MatQ& operator+=(const MatQ& o);
  MatQ& operator-=(const MatQ& o);
  MatQ& operator*=(const Rat& s);
  friend MatQ operator+(MatQ a, const MatQ& b) { return a += b; }
  friend MatQ operator-(MatQ a, const MatQ& b) { return a -= b; }
  friend MatQ operator*(const Rat& s, MatQ a) { return a *= s; }
  MatQ operator-() const;
  friend MatQ operator*(const MatQ& a, const MatQ& b);
  friend VecQ operator*(const MatQ& a, const VecQ& x);
  friend bool operator==(const MatQ& a, const MatQ& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

/// Result of congruent diagonalization P^T G P = diag(d): the columns of P
/// (given as vectors) are G-orthogonal with self-products d_i.
struct CongruentDiag {
  std::vector<VecQ> basis;
  std::vector<Rat> diag;
};

/// Diagonalizes a symmetric bilinear form over the rationals by symmetric
/// Gaussian elimination. `order` optionally permutes the pivot preference
/// (used to probe Sylvester invariance); empty means natural order.
///
/// When every remaining candidate is null, a hyperbolic pair u, w with
/// <u,w> != 0 is replaced by u+w, u-w; nondegeneracy guarantees such a pair
/// exists. Degenerate forms are allowed: zero directions end up with d_i = 0.
CongruentDiag congruent_diagonalize(const MatQ& G,
                                    const std::vector<std::size_t>& order = {});

/// Signature data of a symmetric form.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  [[nodiscard]] int rank() const { return positive + negative; }
};
Signature signature_of(const MatQ& G);

/// True iff span{vs} contains x (exact rank test).
bool in_span(const std::vector<VecQ>& vs, const VecQ& x);

/// Rank of the span of a set of vectors.
std::size_t span_rank(const std::vector<VecQ>& vs);

/// Reduced basis (RREF rows) of the span of a set of vectors.
std::vector<VecQ> span_basis(const std::vector<VecQ>& vs);

// Small double-precision helpers for the floating-point evaluation paths.

struct MatD {
  std::size_t r = 0, c = 0;
  std::vector<double> a;
  MatD() = default;
  MatD(std::size_t rows, std::size_t cols) : r(rows), c(cols), a(rows * cols, 0.0) {}
  static MatD identity(std::size_t n);
  double& at(std::size_t i, std::size_t j) { return a[i * c + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * c + j]; }
  MatD operator*(const MatD& o) const;
  VecD operator*(const VecD& x) const;
  MatD operator+(const MatD& o) const;
  MatD operator-(const MatD& o) const;
  MatD scaled(double s) const;
};

MatD to_matd(const MatQ& m);
VecD axpy(double a, const VecD& x, const VecD& y);  // a*x + y
VecD scale(double a, const VecD& x);
VecD add(const VecD& x, const VecD& y);
VecD sub(const VecD& x, const VecD& y);
double sup_norm(const VecD& x);

}  // namespace nilgeo
