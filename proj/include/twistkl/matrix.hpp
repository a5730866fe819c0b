#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistkl/coxeter_matrix.hpp"
#include "twistkl/exactpoly.hpp"

namespace twistkl {

/// Dense square matrix over Z[v, v^-1].
class LMatrix {
 public:
  LMatrix() = default;
  explicit LMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static LMatrix identity(std::size_t n) {
    LMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly(1);
    return m;
  }

  std::size_t size() const { return n_; }
  LaurentPoly& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const LaurentPoly& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  friend LMatrix operator*(const LMatrix& x, const LMatrix& y) {
    LMatrix r(x.n_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k) {
        const LaurentPoly& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < x.n_; ++j)
          if (!y(k, j).is_zero()) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  friend LMatrix operator+(LMatrix x, const LMatrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend LMatrix operator-(LMatrix x, const LMatrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  LMatrix scaled(const LaurentPoly& f) const {
    LMatrix r = *this;
    for (auto& e : r.a_) e *= f;
    return r;
  }
  friend bool operator==(const LMatrix&, const LMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<LaurentPoly> a_;
};

/// Checks (T_s + 1)^2 = (u^2 + 1)(T_s + 1) and the braid relations for the
/// matrices T[s]. Returns a description of the first failing relation.
inline std::optional<std::string> hecke_relation_failure(const CoxeterMatrix& m,
                                                         const std::vector<LMatrix>& t) {
  if (t.empty()) return std::nullopt;
  const std::size_t n = t.front().size();
  const LMatrix one = LMatrix::identity(n);
  const LaurentPoly q1{{0, 1}, {4, 1}};
  for (int s = 0; s < m.rank(); ++s) {
    const LMatrix p = t[s] + one;
    if (!(p * p == p.scaled(q1)))
      return "quadratic relation fails for s" + std::to_string(s + 1);
  }
  for (int s = 0; s < m.rank(); ++s)
    for (int r = s + 1; r < m.rank(); ++r) {
      if (m.is_infinite(s, r)) continue;
      LMatrix lhs = one, rhs = one;
      for (int k = 0; k < m(s, r); ++k) {
        lhs = lhs * t[k % 2 == 0 ? s : r];
        rhs = rhs * t[k % 2 == 0 ? r : s];
      }
      if (!(lhs == rhs))
        return "braid relation fails for (s" + std::to_string(s + 1) + ", s" +
               std::to_string(r + 1) + ")";
    }
  return std::nullopt;
}

}  // namespace twistkl
