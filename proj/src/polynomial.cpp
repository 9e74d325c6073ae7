#include "admnet/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "admnet/error.hpp"

namespace admnet {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error("non-finite value has no rational form");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::scientific);
  std::string text(buf, end);
  auto e = text.find('e');
  std::string mantissa = text.substr(0, e);
  int exp10 = std::stoi(text.substr(e + 1));
  bool negative = !mantissa.empty() && mantissa[0] == '-';
  if (negative) mantissa.erase(0, 1);
  auto dot = mantissa.find('.');
  std::string digits = mantissa;
  if (dot != std::string::npos) {
    exp10 -= static_cast<int>(mantissa.size() - dot - 1);
    digits.erase(dot, 1);
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exp10)));
  Rational q = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da < db;
  // Lexicographic with x1 most significant: a < b when b has the larger
  // exponent at the first differing position.
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

Polynomial::Polynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw Error("negative variable count");
}

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw Error("variable index out of range");
  Exponents e(nvars, 0);
  e[index] = 1;
  return monomial(e, 1);
}

Polynomial Polynomial::monomial(const Exponents& exps, const Rational& c) {
  Polynomial p(static_cast<int>(exps.size()));
  p.add_term(exps, c);
  return p;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& top = terms_.rbegin()->first;
  return static_cast<int>(std::accumulate(top.begin(), top.end(), std::uint64_t{0}));
}

void Polynomial::add_term(const Exponents& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars_) {
    throw Error("exponent vector length does not match variable count");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.nvars_ != nvars_) throw Error("variable count mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.nvars_ != nvars_) throw Error("variable count mismatch");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (rhs.nvars_ != nvars_) throw Error("variable count mismatch");
  Polynomial out(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over the grammar
//   expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
//   factor := base ('^' uint)? ; base := rational | ident | '(' expr ')'
// A single leading sign is accepted at the start of an expression.

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int nvars() const { return static_cast<int>(vars_.size()); }

  Polynomial expr() {
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc *= factor();
    skip_ws();
    if (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_') {
        fail("implicit multiplication is not allowed");
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer literal");
      unsigned e = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, e);
      if (ec != std::errc{}) fail("exponent out of range");
      if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/')) {
        fail("exponent must be a non-negative integer literal");
      }
      b = b.pow(e);
    }
    return b;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(digits(), 10);
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        std::string den = digits();
        if (den.empty()) fail("expected denominator");
        mpz_class d(den, 10);
        if (d == 0) fail("zero denominator");
        Rational q(num, d);
        q.canonicalize();
        return Polynomial::constant(nvars(), q);
      }
      return Polynomial::constant(nvars(), Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = text_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return Polynomial::variable(nvars(), static_cast<int>(it - vars_.begin()));
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

void check_var(const Polynomial& p, int var) {
  if (var < 0 || var >= p.nvars()) throw Error("variable index out of range");
}

}  // namespace

Polynomial parse_polynomial(const std::string& text,
                            const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

std::string to_string(const Polynomial& p,
                      const std::vector<std::string>& variables) {
  if (static_cast<int>(variables.size()) != p.nvars()) {
    throw Error("variable name count does not match polynomial");
  }
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [exps, coeff] = *it;
    bool negative = coeff < 0;
    Rational mag = negative ? Rational(-coeff) : coeff;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool is_const = std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
    bool need_star = false;
    if (mag != 1 || is_const) {
      out << mag.get_str();
      need_star = true;
    }
    for (int i = 0; i < p.nvars(); ++i) {
      if (exps[i] == 0) continue;
      if (need_star) out << '*';
      out << variables[i];
      if (exps[i] > 1) out << '^' << exps[i];
      need_star = true;
    }
  }
  return out.str();
}

Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
  if (static_cast<int>(point.size()) != p.nvars()) throw Error("dimension mismatch in evaluate");
  Rational total = 0;
  for (const auto& [exps, coeff] : p.terms()) {
    Rational t = coeff;
    for (int i = 0; i < p.nvars(); ++i) {
      for (std::uint32_t k = 0; k < exps[i]; ++k) t *= point[i];
    }
    total += t;
  }
  return total;
}

Polynomial partial_derivative(const Polynomial& p, int var) {
  check_var(p, var);
  Polynomial out(p.nvars());
  for (const auto& [exps, coeff] : p.terms()) {
    if (exps[var] == 0) continue;
    Exponents e = exps;
    --e[var];
    out.add_term(e, coeff * exps[var]);
  }
  return out;
}

bool depends_on(const Polynomial& p, int var) {
  check_var(p, var);
  return std::any_of(p.terms().begin(), p.terms().end(),
                     [var](const auto& t) { return t.first[var] > 0; });
}

bool is_permutation(std::span<const int> sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[s]) return false;
    seen[s] = 1;
  }
  return true;
}

std::vector<int> compose(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::vector<int> inverse(std::span<const int> sigma) {
  std::vector<int> out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out[sigma[i]] = static_cast<int>(i);
  return out;
}

Polynomial apply_permutation(const Polynomial& p, std::span<const int> sigma) {
  if (!is_permutation(sigma, p.nvars())) throw Error("not a bijection on variable indices");
  Polynomial out(p.nvars());
  Exponents e(p.nvars());
  for (const auto& [exps, coeff] : p.terms()) {
    for (int i = 0; i < p.nvars(); ++i) e[sigma[i]] = exps[i];
    out.add_term(e, coeff);
  }
  return out;
}

bool invariant_under_swap(const Polynomial& p, int a, int b) {
  check_var(p, a);
  check_var(p, b);
  if (a == b) throw Error("swap indices must differ");
  std::vector<int> sigma(p.nvars());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::swap(sigma[a], sigma[b]);
  return apply_permutation(p, sigma) == p;
}

Polynomial substitute(const Polynomial& p,
                      const std::map<int, Polynomial>& mapping) {
  int target = mapping.empty() ? p.nvars() : mapping.begin()->second.nvars();
  for (const auto& [var, q] : mapping) {
    if (q.nvars() != target) throw Error("substitution targets disagree on variable count");
  }
  // power cache per variable: powers[var][k] = mapping[var]^k
  std::map<int, std::vector<Polynomial>> powers;
  auto power_of = [&](int var, std::uint32_t k) -> const Polynomial& {
    auto it = mapping.find(var);
    if (it == mapping.end()) throw Error("missing substitution for variable " + std::to_string(var));
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * it->second);
    return cache[k];
  };
  Polynomial out(target);
  for (const auto& [exps, coeff] : p.terms()) {
    Polynomial t = Polynomial::constant(target, coeff);
    for (int i = 0; i < p.nvars(); ++i) {
      if (exps[i] > 0) t *= power_of(i, exps[i]);
    }
    out += t;
  }
  return out;
}

CompiledPolynomial::CompiledPolynomial(const Polynomial& p) {
  for (const auto& [exps, coeff] : p.terms()) {
    Term t{coeff.get_d(), {}};
    for (int i = 0; i < p.nvars(); ++i) {
      if (exps[i] > 0) t.factors.push_back({i, exps[i]});
    }
    terms_.push_back(std::move(t));
  }
}

double CompiledPolynomial::operator()(std::span<const double> x) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (const auto& f : t.factors) {
      double base = x[f.var];
      for (std::uint32_t k = 0; k < f.power; ++k) v *= base;
    }
    total += v;
  }
  return total;
}

}  // namespace admnet
