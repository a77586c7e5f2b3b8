#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilgeo/linalg.hpp"

namespace nilgeo {

/// Univariate polynomial over the rationals, coefficients in ascending order.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  PolyQ(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

  static PolyQ constant(const Rat& c) { return PolyQ{std::vector<Rat>{c}}; }
  /// (x - r)
  static PolyQ linear_root(const Rat& r) { return PolyQ{std::vector<Rat>{-r, Rat(1)}}; }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const Rat& coeff(std::size_t i) const { return c_[i]; }
  [[nodiscard]] const std::vector<Rat>& coeffs() const { return c_; }
  [[nodiscard]] Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  [[nodiscard]] Rat eval(const Rat& x) const;
  [[nodiscard]] double eval(double x) const;
  [[nodiscard]] PolyQ derivative() const;
  [[nodiscard]] PolyQ monic() const;

  friend PolyQ operator+(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator-(const PolyQ& a, const PolyQ& b);
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

  /// Euclidean division: returns (quotient, remainder).
  [[nodiscard]] std::pair<PolyQ, PolyQ> divmod(const PolyQ& d) const;

  [[nodiscard]] std::string str(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rat> c_;
};

/// Monic gcd of two polynomials.
PolyQ poly_gcd(PolyQ a, PolyQ b);

/// p / gcd(p, p'): same roots, all simple.
PolyQ square_free_part(const PolyQ& p);

/// Characteristic polynomial det(tI - A) via Faddeev-LeVerrier.
PolyQ charpoly(const MatQ& A);

/// Number of distinct real roots of p in the half-open interval (a, b].
int sturm_count(const PolyQ& p, const Rat& a, const Rat& b);

/// Number of distinct real roots of p on the whole line.
int sturm_count_all(const PolyQ& p);

/// Disjoint isolating intervals (a, b] for every distinct real root of a
/// square-free polynomial, sorted increasingly.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const PolyQ& squarefree);

/// Shrinks an isolating interval until its double width is below `width`.
std::pair<Rat, Rat> refine_root(const PolyQ& squarefree, std::pair<Rat, Rat> iv,
                                const Rat& width);

/// All rational roots of p with multiplicities. Exact (rational root theorem
/// with integer factorization of the cleared leading/constant coefficients).
std::vector<std::pair<Rat, int>> rational_roots(const PolyQ& p);

/// Exact eigenvalue data of a square rational matrix: rational eigenvalues
/// with algebraic multiplicities and rational eigenvector bases, plus the
/// non-rational part of the characteristic polynomial left as factors.
struct EigenData {
  struct RationalEigenvalue {
    Rat value;
    int multiplicity = 0;
    std::vector<VecQ> eigenvectors;  // basis of ker(A - value*I)
  };
  std::vector<RationalEigenvalue> rational;
  /// Factors of the characteristic polynomial with no rational roots
  /// (irreducible over Q for degree <= 3).
  std::vector<PolyQ> nonrational_factors;
  PolyQ characteristic;

  /// True iff `v` is an eigenvalue (among the rational ones).
  [[nodiscard]] bool has_rational_eigenvalue(const Rat& v) const;
  /// All real eigenvalues exist and are rational.
  [[nodiscard]] bool spectrum_rational() const { return nonrational_factors.empty(); }
};

EigenData eigen_data(const MatQ& A);

/// Divisors of |n| (n != 0), via trial division plus Pollard rho.
std::vector<mpz_class> divisors(const mpz_class& n);

}  // namespace nilgeo
