#include "ihs/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ihs/error.hpp"

namespace ihs::poly {

PolynomialFunction::PolynomialFunction(int num_vars) : num_vars_(num_vars) {
  require(num_vars >= 1, "polynomial needs at least one variable");
}

PolynomialFunction::PolynomialFunction(int num_vars, std::map<Exponent, Rational> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  require(num_vars >= 1, "polynomial needs at least one variable");
  for (auto it = terms_.begin(); it != terms_.end();) {
    require(static_cast<int>(it->first.size()) == num_vars_, "exponent vector has the wrong length");
    require(std::all_of(it->first.begin(), it->first.end(), [](int e) { return e >= 0; }),
            "negative exponent");
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  rebuild_cache();
}

PolynomialFunction PolynomialFunction::constant(int num_vars, const Rational& c) {
  return PolynomialFunction(num_vars, {{Exponent(num_vars, 0), c}});
}

PolynomialFunction PolynomialFunction::variable(int num_vars, int index) {
  require(index >= 0 && index < num_vars, "variable index out of range");
  Exponent e(num_vars, 0);
  e[index] = 1;
  return PolynomialFunction(num_vars, {{e, Rational(1)}});
}

int PolynomialFunction::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void PolynomialFunction::rebuild_cache() {
  coef_.clear();
  exps_.clear();
  max_exp_ = 0;
  for (const auto& [e, c] : terms_) {
    coef_.push_back(static_cast<double>(c));
    for (int v : e) {
      exps_.push_back(v);
      max_exp_ = std::max(max_exp_, v);
    }
  }
}

PolynomialFunction PolynomialFunction::operator+(const PolynomialFunction& o) const {
  require(num_vars_ == o.num_vars_, "polynomials have different numbers of variables");
  auto t = terms_;
  for (const auto& [e, c] : o.terms_) t[e] += c;
  return PolynomialFunction(num_vars_, std::move(t));
}

PolynomialFunction PolynomialFunction::operator-() const {
  auto t = terms_;
  for (auto& [e, c] : t) c = -c;
  return PolynomialFunction(num_vars_, std::move(t));
}

PolynomialFunction PolynomialFunction::operator-(const PolynomialFunction& o) const { return *this + (-o); }

PolynomialFunction PolynomialFunction::operator*(const PolynomialFunction& o) const {
  require(num_vars_ == o.num_vars_, "polynomials have different numbers of variables");
  std::map<Exponent, Rational> t;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(num_vars_);
      for (int i = 0; i < num_vars_; ++i) e[i] = e1[i] + e2[i];
      t[e] += c1 * c2;
    }
  return PolynomialFunction(num_vars_, std::move(t));
}

PolynomialFunction PolynomialFunction::operator*(const Rational& s) const {
  auto t = terms_;
  for (auto& [e, c] : t) c *= s;
  return PolynomialFunction(num_vars_, std::move(t));
}

PolynomialFunction PolynomialFunction::pow(int e) const {
  require(e >= 0, "negative power");
  PolynomialFunction result = constant(num_vars_, 1);
  PolynomialFunction base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

PolynomialFunction PolynomialFunction::derivative(int var) const {
  require(var >= 0 && var < num_vars_, "variable index out of range");
  std::map<Exponent, Rational> t;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    t[d] += c * e[var];
  }
  return PolynomialFunction(num_vars_, std::move(t));
}

double PolynomialFunction::operator()(const double* x) const {
  // Power table: pw[v * (max+1) + k] = x_v^k.
  thread_local std::vector<double> pw;
  const int stride = max_exp_ + 1;
  pw.assign(static_cast<std::size_t>(num_vars_) * stride, 1.0);
  for (int v = 0; v < num_vars_; ++v)
    for (int k = 1; k <= max_exp_; ++k) pw[v * stride + k] = pw[v * stride + k - 1] * x[v];
  double sum = 0.0;
  const int* e = exps_.data();
  for (double c : coef_) {
    double term = c;
    for (int v = 0; v < num_vars_; ++v, ++e)
      if (*e) term *= pw[v * stride + *e];
    sum += term;
  }
  return sum;
}

std::vector<std::string> default_names(int num_vars) {
  std::vector<std::string> n;
  for (int i = 1; i <= num_vars; ++i) n.push_back("x" + std::to_string(i));
  return n;
}

std::string PolynomialFunction::str(const std::vector<std::string>& names_in) const {
  const auto names = names_in.empty() ? default_names(num_vars_) : names_in;
  require(static_cast<int>(names.size()) == num_vars_, "wrong number of variable names");
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, Rational>> t(terms_.begin(), terms_.end());
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant_term = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
    bool wrote = false;
    if (mag != 1 || constant_term) {
      os << mag;
      wrote = true;
    }
    for (int v = 0; v < num_vars_; ++v) {
      if (!e[v]) continue;
      if (wrote) os << "*";
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

Rational exact_decimal(const std::string& literal) {
  std::string mant = literal;
  long long exp10 = 0;
  auto epos = mant.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string ex = mant.substr(epos + 1);
    require(!ex.empty(), "malformed number '" + literal + "'");
    std::size_t used = 0;
    try {
      exp10 = std::stoll(ex, &used);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidInput, "malformed number '" + literal + "'");
    }
    require(used == ex.size(), "malformed number '" + literal + "'");
    mant = mant.substr(0, epos);
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  std::string digits;
  bool seen_dot = false, seen_digit = false;
  for (char ch : mant) {
    if (ch == '.') {
      require(!seen_dot, "malformed number '" + literal + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_dot) --exp10;
    } else {
      fail(ErrorKind::InvalidInput, "malformed number '" + literal + "'");
    }
  }
  require(seen_digit, "malformed number '" + literal + "'");
  require(std::abs(exp10) <= 400, "number exponent out of range in '" + literal + "'");
  boost::multiprecision::cpp_int num(digits);
  boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                    static_cast<unsigned>(std::abs(exp10)));
  Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
  return neg ? Rational(-r) : r;
}

Rational exact_double(double v) {
  require(std::isfinite(v), "non-finite value");
  int exp = 0;
  double m = std::frexp(v, &exp);
  // m * 2^53 is an integer.
  auto mi = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  boost::multiprecision::cpp_int num(mi);
  boost::multiprecision::cpp_int p2 = boost::multiprecision::cpp_int(1) << std::abs(exp);
  return exp >= 0 ? Rational(num * p2) : Rational(num, p2);
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& names) : s_(text), names_(names) {
    require(!names_.empty(), "no variable names");
  }

  PolynomialFunction run() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  int n() const { return static_cast<int>(names_.size()); }

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::InvalidInput, "polynomial '" + s_ + "' at position " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  PolynomialFunction expr() {
    PolynomialFunction acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  PolynomialFunction term() {
    PolynomialFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        auto d = unary();
        if (d.degree() != 0 || d.is_zero()) error("division by a non-constant or zero");
        acc = acc * (Rational(1) / d.terms().begin()->second);
      } else {
        return acc;
      }
    }
  }

  PolynomialFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  PolynomialFunction power() {
    PolynomialFunction base = primary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected a nonnegative integer exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      if (e > 64) error("exponent too large");
      return base.pow(e);
    }
    return base;
  }

  PolynomialFunction primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!accept(')')) error("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      return PolynomialFunction::constant(n(), exact_decimal(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      for (int i = 0; i < n(); ++i)
        if (names_[i] == id) return PolynomialFunction::variable(n(), i);
      pos_ = start;
      error("unknown variable '" + id + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

PolynomialFunction parse(const std::string& text, const std::vector<std::string>& names) {
  return Parser(text, names).run();
}

}  // namespace ihs::poly
