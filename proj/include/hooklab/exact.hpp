#ifndef HOOKLAB_EXACT_HPP_
#define HOOKLAB_EXACT_HPP_

// Exact scalars and exact functions of one variable m.
//
// Integers are GMP integers throughout. Rational is always reduced with a
// positive denominator; Polynomial keeps its coefficient vector trimmed so the
// leading coefficient is nonzero; RationalFunction keeps num/den coprime with a
// monic denominator, so two equal functions compare equal structurally.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hooklab {

using Integer = mpz_class;

Integer factorial(unsigned n);

class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const Integer& value) : value_(value) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);

  /// Accepts "p", "p/q" or a plain decimal such as "2.5".
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  double to_double() const { return value_.get_d(); }
  const mpq_class& gmp() const { return value_; }

  /// "p/q", or "p" when q = 1.
  std::string str() const;

  Rational pow(int exponent) const;
  Rational reciprocal() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

/// Univariate polynomial in m with rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, int degree);
  /// The polynomial m.
  static Polynomial variable();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Rational coefficient(int k) const;
  const Rational& leading() const { return coeffs_.back(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational eval(const Rational& x) const;
  Polynomial monic() const;
  Polynomial scaled(const Rational& c) const;

  /// Descending degree, e.g. "(1/2)m^2 + (-1/2)m". Constants render bare.
  std::string str() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder; throws ArithmeticError when divisor is zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd over the rationals; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

/// m(m-1)...(m-k+1)/k!, the binomial coefficient C(m, k) as a polynomial in m.
Polynomial binomial_poly(int k);

class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(const Rational& c)  // NOLINT(google-explicit-constructor)
      : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {}
  RationalFunction(const Polynomial& p)  // NOLINT(google-explicit-constructor)
      : num_(p), den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<Rational> constant_value() const;

  /// Throws PoleError where the reduced denominator vanishes.
  Rational eval(const Rational& m) const;

  /// The numerator rendering when den = 1, otherwise "(num)/(den)".
  std::string str() const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) {
    return a += b;
  }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) {
    return a -= b;
  }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) {
    return a *= b;
  }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) {
    return a /= b;
  }
  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace hooklab

#endif  // HOOKLAB_EXACT_HPP_
