#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nilgeo {

/// Exact rational scalar backed by GMP arbitrary-precision integers.
///
/// Every value is kept in canonical reduced form, so equality is plain
/// comparison. All algebraic predicates in the library (nondegeneracy,
/// eigenvector tests, the modified H-type detection) run on this type;
/// to_double() is the single lossy operation and feeds the floating-point
/// evaluation paths (geodesics, transcendental functions).
class Rat {
 public:
  Rat() = default;
  Rat(int n) : q_(n) {}
  Rat(long n) : q_(mpz_class(n)) {}
  Rat(long num, long den) : q_(mpz_class(num), mpz_class(den)) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  explicit Rat(const mpz_class& n) : q_(n) {}

  /// Parses "p", "p/q", with optional sign. Returns nullopt on bad syntax.
  static std::optional<Rat> parse(std::string_view s);

  /// Exact value of an IEEE double (every finite double is rational).
  static Rat from_double(double d) {
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return Rat(std::move(q));
  }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] Rat abs() const { return Rat(mpq_class(::abs(q_))); }
  [[nodiscard]] Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(1) / q_);
  }

  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] std::string str() const { return q_.get_str(); }
  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] const mpq_class& mpq() const { return q_; }

  /// True iff this is the square of a rational (requires sign >= 0).
  [[nodiscard]] bool is_perfect_square() const {
    if (sign() < 0) return false;
    return mpz_perfect_square_p(q_.get_num_mpz_t()) &&
           mpz_perfect_square_p(q_.get_den_mpz_t());
  }

  /// Exact square root; caller must ensure is_perfect_square().
  [[nodiscard]] Rat sqrt_exact() const {
    if (!is_perfect_square()) throw std::domain_error("Rat: not a perfect square");
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q_.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q_.get_den_mpz_t());
    return Rat(mpq_class(n, d));
  }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.q_;
  }

 private:
  mpq_class q_{0};
};

/// Splits a positive rational as r = s^2 * f with f free of small square
/// factors (exact perfect squares always collapse fully). Used to keep the
/// radicands of pseudo-orthonormal bases small and display-friendly.
std::pair<Rat, Rat> square_free_split(const Rat& r);

inline std::optional<Rat> Rat::parse(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  const auto slash = s.find('/');
  auto is_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string_view::npos) {
    if (!is_int(s)) return std::nullopt;
    return Rat(mpq_class(std::string(s)));
  }
  const auto num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-') return std::nullopt;
  mpq_class q((std::string(s)));
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return Rat(std::move(q));
}

}  // namespace nilgeo
