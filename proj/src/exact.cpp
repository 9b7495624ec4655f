#include "hooklab/exact.hpp"

#include <algorithm>
#include <cctype>

#include "hooklab/errors.hpp"

namespace hooklab {

Integer factorial(unsigned n) {
  Integer result;
  mpz_fac_ui(result.get_mpz_t(), n);
  return result;
}

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto bad = [&](std::size_t pos) {
    return ParseError("malformed rational '" + s + "'", pos);
  };
  if (s.empty()) throw bad(0);
  auto check_int = [&](std::size_t from, std::size_t to, bool allow_sign) {
    std::size_t i = from;
    if (allow_sign && i < to && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == to) throw bad(i);
    for (; i < to; ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad(i);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    check_int(0, slash, true);
    check_int(slash + 1, s.size(), false);
    std::string num = s.substr(0, slash);
    if (num[0] == '+') num.erase(0, 1);
    return Rational(Integer(num), Integer(s.substr(slash + 1)));
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    check_int(0, dot, true);
    check_int(dot + 1, s.size(), false);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits[0] == '+') digits.erase(0, 1);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, s.size() - dot - 1);
    return Rational(Integer(digits), scale);
  }
  check_int(0, s.size(), true);
  if (s[0] == '+') s.erase(0, 1);
  return Rational(Integer(s));
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) return reciprocal().pow(-exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw ArithmeticError("reciprocal of zero");
  return Rational(value_.get_den(), value_.get_num());
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw ArithmeticError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r;
  r.value_ = -a.value_;
  return r;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::variable() { return monomial(1, 1); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational();
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().reciprocal());
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c.is_zero()) return Polynomial();
  Polynomial out = *this;
  for (auto& coeff : out.coeffs_) coeff *= c;
  return out;
}

std::string Polynomial::str() const {
  if (is_zero()) return "0";
  if (is_constant()) return coeffs_[0].str();
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")";
    if (k == 1) out += "m";
    if (k > 1) out += "m^" + std::to_string(k);
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial(), a};
  std::vector<Rational> rem = a.coefficients();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  const Rational lead_inv = b.leading().reciprocal();
  const auto& bc = b.coefficients();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const Rational q = rem[static_cast<std::size_t>(k + b.degree())] * lead_inv;
    quot[static_cast<std::size_t>(k)] = q;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j)
      rem[static_cast<std::size_t>(k) + j] -= q * bc[j];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  // Monic remainder sequence keeps coefficient growth in check.
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Polynomial binomial_poly(int k) {
  Polynomial p = Polynomial::constant(1);
  for (int i = 0; i < k; ++i) p = p * Polynomial({Rational(-i), Rational(1)});
  return p.scaled(Rational(1) / Rational(factorial(static_cast<unsigned>(k))));
}

// -------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  const Rational lead_inv = den_.leading().reciprocal();
  num_ = num_.scaled(lead_inv);
  den_ = den_.scaled(lead_inv);
}

std::optional<Rational> RationalFunction::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.coefficient(0);  // den is the monic constant 1
}

Rational RationalFunction::eval(const Rational& m) const {
  Rational d = den_.eval(m);
  if (d.is_zero()) throw PoleError("rational function has a pole at m = " + m.str());
  return num_.eval(m) / d;
}

std::string RationalFunction::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
  return *this += rhs * RationalFunction(Rational(-1));
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.num_.is_zero()) throw ArithmeticError("division by the zero function");
  num_ = num_ * rhs.den_;
  den_ = den_ * rhs.num_;
  normalize();
  return *this;
}

}  // namespace hooklab
