#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace admnet {

using Rational = mpq_class;
using Exponents = std::vector<std::uint32_t>;

std::string to_string(const Rational& q);

/// Exact rational conversion of the shortest decimal representation of `x`
/// (so 0.1 becomes 1/10, not the nearest binary fraction).
Rational rational_from_double(double x);

/// Graded lexicographic order: total degree first, then lexicographic with
/// x1 > x2 > ... . Terms are stored ascending and printed descending.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Exact-rational multivariate polynomial in canonical (expanded) form.
///
/// No stored coefficient is zero and every exponent vector has length
/// nvars(), so two polynomials over the same variables are mathematically
/// equal iff they compare equal.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  explicit Polynomial(int nvars = 0);

  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index);
  static Polynomial monomial(const Exponents& exps, const Rational& c);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  /// Adds c * x^exps, removing the term if it cancels.
  void add_term(const Exponents& exps, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned exponent) const;

 private:
  int nvars_;
  TermMap terms_;
};

Polynomial parse_polynomial(const std::string& text,
                            const std::vector<std::string>& variables);

/// Prints in descending grlex order; parse_polynomial reads it back exactly.
std::string to_string(const Polynomial& p,
                      const std::vector<std::string>& variables);

Rational evaluate(const Polynomial& p, std::span<const Rational> point);

Polynomial partial_derivative(const Polynomial& p, int var);

bool depends_on(const Polynomial& p, int var);

/// q(x) = p(x o sigma): variable i of p is replaced by x_{sigma[i]}.
/// apply_permutation(apply_permutation(p, s), t) ==
/// apply_permutation(p, compose(t, s)).
Polynomial apply_permutation(const Polynomial& p, std::span<const int> sigma);

/// (a o b)[i] = a[b[i]].
std::vector<int> compose(std::span<const int> a, std::span<const int> b);
std::vector<int> inverse(std::span<const int> sigma);
bool is_permutation(std::span<const int> sigma, int n);

bool invariant_under_swap(const Polynomial& p, int a, int b);

/// Composition p(mapping[0], ..., mapping[nvars-1]). Entries for variables p
/// does not depend on may be left empty (nvars 0 placeholder is fine); all
/// supplied polynomials must share one target variable count.
Polynomial substitute(const Polynomial& p,
                      const std::map<int, Polynomial>& mapping);

/// Floating-point evaluator used by the integrator.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& p);

  double operator()(std::span<const double> x) const;

 private:
  struct Factor {
    int var;
    std::uint32_t power;
  };
  struct Term {
    double coeff;
    std::vector<Factor> factors;
  };
  std::vector<Term> terms_;
};

}  // namespace admnet
