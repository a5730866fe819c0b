#pragma once

/**
 * @file exactpoly.hpp
 * @brief Exact integer Laurent polynomials in v, and plain polynomials.
 *
 * LaurentPoly is the coefficient ring Z[v, v^-1] of every module in the
 * library. The Hecke algebra lives over the subring Z[u, u^-1] with u = v^2,
 * so elements of that subring are simply LaurentPolys whose exponents are
 * all even. IntPoly holds an ordinary polynomial in one abstract variable
 * (q for KL polynomials, u for their twisted analogues).
 *
 * Both types keep a canonical form at all times: no zero coefficient is
 * stored, so equality of values is equality of representations.
 */

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "twistkl/errors.hpp"

namespace twistkl {

using BigInt = boost::multiprecision::cpp_int;

class LaurentPoly {
 public:
  using Term = std::pair<int, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(long long constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_.emplace_back(0, BigInt(constant));
  }
  LaurentPoly(const BigInt& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_.emplace_back(0, constant);
  }

  /// Builds from (exponent, coefficient) pairs in any order; repeated
  /// exponents are summed.
  LaurentPoly(std::initializer_list<std::pair<int, long long>> terms) {
    std::vector<Term> raw;
    raw.reserve(terms.size());
    for (const auto& [e, c] : terms) raw.emplace_back(e, BigInt(c));
    *this = from_terms(std::move(raw));
  }

  static LaurentPoly monomial(const BigInt& coefficient, int exponent) {
    LaurentPoly p;
    if (coefficient != 0) p.terms_.emplace_back(exponent, coefficient);
    return p;
  }

  static LaurentPoly from_terms(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    LaurentPoly p;
    p.terms_.reserve(raw.size());
    for (auto& t : raw) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second += t.second;
        if (p.terms_.back().second == 0) p.terms_.pop_back();
      } else if (t.second != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// v^k.
  static LaurentPoly v_power(int k) { return monomial(1, k); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }

  /// Lowest exponent; only meaningful for a nonzero value.
  int min_degree() const { return terms_.front().first; }
  int max_degree() const { return terms_.back().first; }

  BigInt coeff(int exponent) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), exponent,
        [](const Term& t, int e) { return t.first < e; });
    return (it != terms_.end() && it->first == exponent) ? it->second
                                                         : BigInt(0);
  }

  /// Multiplication by v^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.first += k;
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    return merge(a, b, false);
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    return merge(a, b, true);
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return scaled_shift(b, a.terms_[0].second, a.terms_[0].first);
    if (b.size() == 1) return scaled_shift(a, b.terms_[0].second, b.terms_[0].first);
    const int lo = a.min_degree() + b.min_degree();
    const long long span =
        static_cast<long long>(a.max_degree()) + b.max_degree() - lo + 1;
    // Dense accumulation when the exponent range is short, which is the
    // common case; otherwise collect products and canonicalize.
    if (span <= 4 * static_cast<long long>(a.size() * b.size()) + 64) {
      std::vector<BigInt> acc(static_cast<std::size_t>(span));
      for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
          acc[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
      LaurentPoly r;
      for (std::size_t i = 0; i < acc.size(); ++i)
        if (acc[i] != 0)
          r.terms_.emplace_back(lo + static_cast<int>(i), std::move(acc[i]));
      return r;
    }
    std::vector<Term> raw;
    raw.reserve(a.size() * b.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) raw.emplace_back(ea + eb, ca * cb);
    return from_terms(std::move(raw));
  }

  LaurentPoly scaled(const BigInt& c) const { return scaled_shift(*this, c, 0); }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Terms by ascending exponent as `c*v^n`, with `v^0` elided; "0" for
  /// the zero polynomial.
  std::string to_string(const std::string& var = "v") const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) out << " + ";
      first = false;
      if (e == 0)
        out << c;
      else
        out << c << '*' << var << '^' << e;
    }
    return out.str();
  }

 private:
  static LaurentPoly scaled_shift(const LaurentPoly& a, const BigInt& c, int k) {
    LaurentPoly r;
    if (c == 0) return r;
    r.terms_.reserve(a.size());
    for (const auto& [e, x] : a.terms_) r.terms_.emplace_back(e + k, x * c);
    return r;
  }

  static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b,
                           bool subtract) {
    LaurentPoly r;
    r.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->first < i->first) {
        r.terms_.emplace_back(j->first, subtract ? BigInt(-j->second) : j->second);
        ++j;
      } else {
        BigInt c = subtract ? BigInt(i->second - j->second)
                            : BigInt(i->second + j->second);
        if (c != 0) r.terms_.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
  return os << p.to_string();
}

/// The ring involution v -> v^-1.
inline LaurentPoly bar(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> raw;
  raw.reserve(p.size());
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    raw.emplace_back(-it->first, it->second);
  return LaurentPoly::from_terms(std::move(raw));
}

/// Sum of the terms with strictly negative exponent.
inline LaurentPoly negative_part(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> raw;
  for (const auto& t : p.terms()) {
    if (t.first >= 0) break;
    raw.push_back(t);
  }
  return LaurentPoly::from_terms(std::move(raw));
}

/// True iff every coefficient is >= 0 and, when requested, every exponent
/// is even (membership in N[u, u^-1] for u = v^2).
inline bool check_nonneg_even(const LaurentPoly& p, bool require_even) {
  for (const auto& [e, c] : p.terms()) {
    if (c < 0) return false;
    if (require_even && (e % 2 != 0)) return false;
  }
  return true;
}

inline bool all_exponents_even(const LaurentPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(),
                     [](const LaurentPoly::Term& t) { return t.first % 2 == 0; });
}

/// Substitution v -> v^k (k >= 1).
inline LaurentPoly stretch(const LaurentPoly& p, int k) {
  if (k < 1) throw PreconditionViolated("stretch: k must be >= 1");
  std::vector<LaurentPoly::Term> raw(p.terms().begin(), p.terms().end());
  for (auto& t : raw) t.first *= k;
  return LaurentPoly::from_terms(std::move(raw));
}

/// p / 2 when every coefficient is even, otherwise nullopt.
inline std::optional<LaurentPoly> half(const LaurentPoly& p) {
  std::vector<LaurentPoly::Term> raw;
  for (const auto& [e, c] : p.terms()) {
    if (c % 2 != 0) return std::nullopt;
    raw.emplace_back(e, c / 2);
  }
  return LaurentPoly::from_terms(std::move(raw));
}

/// Returns r with p = d * r; throws NotDivisible when no such r exists in
/// Z[v, v^-1].
inline LaurentPoly exact_div(const LaurentPoly& p, const LaurentPoly& d) {
  if (d.is_zero()) throw PreconditionViolated("exact_div: division by zero");
  if (p.is_zero()) return {};
  // Work with a divisor whose lowest term sits at v^0 and peel terms of the
  // quotient off the low end of the remainder.
  const int dmin = d.min_degree();
  const LaurentPoly d0 = d.shifted(-dmin);
  const BigInt& d0_low = d0.terms().front().second;
  LaurentPoly rem = p.shifted(-dmin);
  const int qmax = rem.max_degree() - d0.max_degree();
  std::vector<LaurentPoly::Term> quotient;
  while (!rem.is_zero()) {
    const int e = rem.min_degree();
    const BigInt& c = rem.terms().front().second;
    if (e > qmax || c % d0_low != 0)
      throw NotDivisible("exact_div: " + p.to_string() + " is not divisible by " +
                         d.to_string());
    BigInt qc = c / d0_low;
    rem -= d0.scaled(qc).shifted(e);
    quotient.emplace_back(e, std::move(qc));
  }
  return LaurentPoly::from_terms(std::move(quotient));
}

/// Polynomial in one variable with integer coefficients; index = exponent.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coefficients)
      : c_(std::move(coefficients)) {
    trim();
  }
  IntPoly(std::initializer_list<long long> coefficients) {
    for (long long c : coefficients) c_.emplace_back(c);
    trim();
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  BigInt coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : BigInt(0);
  }
  const std::vector<BigInt>& coefficients() const { return c_; }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) + b.coeff(int(i));
    return IntPoly(std::move(r));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) - b.coeff(int(i));
    return IntPoly(std::move(r));
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  bool nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& c) { return c >= 0; });
  }

  std::string to_string(const std::string& var = "q") const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      if (!first) out << " + ";
      first = false;
      if (k == 0)
        out << c_[k];
      else
        out << c_[k] << '*' << var << '^' << k;
    }
    return out.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

inline std::ostream& operator<<(std::ostream& os, const IntPoly& p) {
  return os << p.to_string();
}

/// Replaces the variable of p by v^k.
inline LaurentPoly substitute_power(const IntPoly& p, int k) {
  if (k < 1) throw PreconditionViolated("substitute_power: k must be >= 1");
  std::vector<LaurentPoly::Term> raw;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeff(i) != 0) raw.emplace_back(i * k, p.coeff(i));
  return LaurentPoly::from_terms(std::move(raw));
}

/// Inverse of substitute_power: reads p as a polynomial in v^k. Throws
/// ConsistencyError when p has a negative exponent or one not divisible by k.
inline IntPoly extract_power(const LaurentPoly& p, int k) {
  if (p.is_zero()) return {};
  if (p.min_degree() < 0)
    throw ConsistencyError("extract_power: negative exponent in " + p.to_string());
  std::vector<BigInt> c(static_cast<std::size_t>(p.max_degree() / k + 1));
  for (const auto& [e, x] : p.terms()) {
    if (e % k != 0)
      throw ConsistencyError("extract_power: exponent not divisible by " +
                             std::to_string(k) + " in " + p.to_string());
    c[static_cast<std::size_t>(e / k)] = x;
  }
  return IntPoly(std::move(c));
}

}  // namespace twistkl
