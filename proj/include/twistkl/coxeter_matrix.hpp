#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "twistkl/errors.hpp"

namespace twistkl {

/// Marker for m_st = infinity.
inline constexpr int kInfinity = 0;

/// Symmetric matrix (m_st) with m_ss = 1 and m_st in {2, 3, ...} or
/// kInfinity off the diagonal. Generators are indexed from 0.
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  explicit CoxeterMatrix(std::vector<std::vector<int>> m) : m_(std::move(m)) {
    const std::size_t n = m_.size();
    if (n == 0) throw InvalidMatrix("Coxeter matrix must have rank >= 1");
    if (n > 64) throw InvalidMatrix("rank above 64 is not supported");
    for (std::size_t s = 0; s < n; ++s) {
      if (m_[s].size() != n) throw InvalidMatrix("Coxeter matrix must be square");
      if (m_[s][s] != 1) throw InvalidMatrix("diagonal entries must be 1");
    }
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t) {
        if (s == t) continue;
        if (m_[s][t] != m_[t][s]) throw InvalidMatrix("Coxeter matrix must be symmetric");
        if (m_[s][t] != kInfinity && m_[s][t] < 2)
          throw InvalidMatrix("off-diagonal entries must be >= 2 or infinity");
      }
  }

  int rank() const { return static_cast<int>(m_.size()); }
  int operator()(int s, int t) const { return m_[s][t]; }
  bool is_infinite(int s, int t) const { return m_[s][t] == kInfinity; }
  const std::vector<std::vector<int>>& entries() const { return m_; }

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::vector<std::vector<int>> m_;
};

/// The diagram involution *, as a permutation of generator indices.
class StarMap {
 public:
  StarMap() = default;
  explicit StarMap(std::vector<int> perm) : perm_(std::move(perm)) {}

  static StarMap identity(int rank) {
    std::vector<int> p(static_cast<std::size_t>(rank));
    std::iota(p.begin(), p.end(), 0);
    return StarMap(std::move(p));
  }

  /// From a list of 1-based images, e.g. {3, 2, 1}.
  static StarMap from_one_based(const std::vector<int>& images) {
    std::vector<int> p;
    p.reserve(images.size());
    for (int i : images) p.push_back(i - 1);
    return StarMap(std::move(p));
  }

  int operator()(int s) const { return perm_[static_cast<std::size_t>(s)]; }
  int size() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& images() const { return perm_; }
  bool is_identity() const {
    for (int s = 0; s < size(); ++s)
      if (perm_[s] != s) return false;
    return true;
  }

  std::vector<int> one_based() const {
    std::vector<int> r;
    for (int i : perm_) r.push_back(i + 1);
    return r;
  }

  /// Throws InvalidStar unless this is an involutive automorphism of m.
  void validate(const CoxeterMatrix& m) const {
    const int n = m.rank();
    if (size() != n) throw InvalidStar("star map must have one entry per generator");
    for (int s = 0; s < n; ++s)
      if (perm_[s] < 0 || perm_[s] >= n)
        throw InvalidStar("star map entry out of range");
    for (int s = 0; s < n; ++s)
      if (perm_[perm_[s]] != s) throw InvalidStar("star map is not an involution");
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        if (m(perm_[s], perm_[t]) != m(s, t))
          throw InvalidStar("star map does not preserve the Coxeter matrix (m_" +
                            std::to_string(s + 1) + std::to_string(t + 1) + ")");
  }

  friend bool operator==(const StarMap&, const StarMap&) = default;

 private:
  std::vector<int> perm_;
};

namespace detail {

inline std::vector<std::vector<int>> components(const CoxeterMatrix& m) {
  const int n = m.rank();
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out;
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<int> comp{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int t = 0; t < n; ++t)
        if (!seen[t] && m(comp[i], t) != 2) {
          seen[t] = 1;
          comp.push_back(t);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Finite type name of one connected component, or nullopt if infinite.
inline std::optional<std::string> classify_component(const CoxeterMatrix& m,
                                                     const std::vector<int>& c) {
  const int n = static_cast<int>(c.size());
  if (n == 1) return "A1";
  if (n == 2) {
    const int e = m(c[0], c[1]);
    if (e == kInfinity) return std::nullopt;
    if (e == 3) return "A2";
    if (e == 4) return "B2";
    if (e == 6) return "G2";
    return "I2(" + std::to_string(e) + ")";
  }
  // Rank >= 3: must be a tree with labels in {3, 4, 5}.
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  int edges = 0, fours = 0, fives = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int e = m(c[i], c[j]);
      if (e == 2) continue;
      if (e == kInfinity || e > 5) return std::nullopt;
      ++edges;
      ++degree[i];
      ++degree[j];
      if (e == 4) ++fours;
      if (e == 5) ++fives;
    }
  if (edges != n - 1) return std::nullopt;
  const int max_deg = *std::max_element(degree.begin(), degree.end());
  if (max_deg > 3) return std::nullopt;
  if (fours + fives > 1) return std::nullopt;
  if (max_deg == 2) {
    // Path: walk from an end.
    int start = 0;
    while (degree[start] != 1) ++start;
    std::vector<int> path{start};
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    used[start] = 1;
    while (static_cast<int>(path.size()) < n)
      for (int j = 0; j < n; ++j)
        if (!used[j] && m(c[path.back()], c[j]) != 2) {
          used[j] = 1;
          path.push_back(j);
          break;
        }
    std::vector<int> labels;
    for (int i = 0; i + 1 < n; ++i) labels.push_back(m(c[path[i]], c[path[i + 1]]));
    auto special = std::find_if(labels.begin(), labels.end(), [](int e) { return e != 3; });
    if (special == labels.end()) return "A" + std::to_string(n);
    const int pos = static_cast<int>(special - labels.begin());
    const bool at_end = pos == 0 || pos == n - 2;
    if (*special == 4) {
      if (at_end) return "B" + std::to_string(n);
      if (n == 4) return "F4";
      return std::nullopt;
    }
    if (at_end && (n == 3 || n == 4)) return "H" + std::to_string(n);
    return std::nullopt;
  }
  // One branch node, all labels 3.
  if (fours + fives != 0) return std::nullopt;
  if (std::count(degree.begin(), degree.end(), 3) != 1) return std::nullopt;
  const int center = static_cast<int>(std::find(degree.begin(), degree.end(), 3) - degree.begin());
  std::vector<int> arms;
  for (int j = 0; j < n; ++j) {
    if (j == center || m(c[center], c[j]) == 2) continue;
    int len = 1, prev = center, cur = j;
    for (;;) {
      int next = -1;
      for (int k = 0; k < n; ++k)
        if (k != prev && k != cur && m(c[cur], c[k]) != 2) next = k;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
    return "E" + std::to_string(n);
  return std::nullopt;
}

}  // namespace detail

/// Name of the finite Coxeter group with this matrix ("A3", "A1xA1",
/// "I2(7)", ...), or nullopt when the group is infinite.
inline std::optional<std::string> recognize_finite_type(const CoxeterMatrix& m) {
  std::string name;
  for (const auto& comp : detail::components(m)) {
    auto part = detail::classify_component(m, comp);
    if (!part) return std::nullopt;
    if (!name.empty()) name += "x";
    name += *part;
  }
  return name;
}

namespace detail {

inline CoxeterMatrix matrix_from_edges(int n, const std::vector<std::array<int, 3>>& edges) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (const auto& [a, b, label] : edges) {
    m[a - 1][b - 1] = label;
    m[b - 1][a - 1] = label;
  }
  return CoxeterMatrix(std::move(m));
}

inline std::vector<std::array<int, 3>> path_edges(int n, int label = 3) {
  std::vector<std::array<int, 3>> e;
  for (int i = 1; i < n; ++i) e.push_back({i, i + 1, label});
  return e;
}

inline CoxeterMatrix single_named(const std::string& spec) {
  auto bad = [&] { return InvalidMatrix("unknown group type '" + spec + "'"); };
  if (spec.empty()) throw bad();
  const bool affine = spec.back() == '~';
  const std::string body = affine ? spec.substr(0, spec.size() - 1) : spec;
  if (body.size() < 2) throw bad();
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(body[0])));

  if (family == 'I' && !affine) {
    // I2(m)
    if (body.rfind("I2(", 0) != 0 || body.back() != ')') throw bad();
    const std::string arg = body.substr(3, body.size() - 4);
    const int m = (arg == "inf" || arg == "oo") ? kInfinity : std::stoi(arg);
    if (m != kInfinity && m < 2) throw bad();
    return matrix_from_edges(2, {{1, 2, m}});
  }
  for (std::size_t i = 1; i < body.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(body[i]))) throw bad();
  const int n = std::stoi(body.substr(1));
  if (n < 1) throw bad();

  if (!affine) {
    switch (family) {
      case 'A':
        return matrix_from_edges(n, path_edges(n));
      case 'B':
      case 'C': {
        if (n < 2) throw bad();
        auto e = path_edges(n);
        e.back()[2] = 4;
        return matrix_from_edges(n, e);
      }
      case 'D': {
        if (n < 4) throw bad();
        auto e = path_edges(n - 1);
        e.push_back({n - 2, n, 3});
        return matrix_from_edges(n, e);
      }
      case 'E': {
        if (n < 6 || n > 8) throw bad();
        std::vector<std::array<int, 3>> e{{1, 3, 3}, {2, 4, 3}};
        for (int i = 3; i < n; ++i) e.push_back({i, i + 1, 3});
        return matrix_from_edges(n, e);
      }
      case 'F':
        if (n != 4) throw bad();
        return matrix_from_edges(4, {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}});
      case 'G':
        if (n != 2) throw bad();
        return matrix_from_edges(2, {{1, 2, 6}});
      case 'H': {
        if (n != 3 && n != 4) throw bad();
        auto e = path_edges(n);
        e.front()[2] = 5;
        return matrix_from_edges(n, e);
      }
      default:
        throw bad();
    }
  }
  // Affine types; the extra node gets index n + 1.
  switch (family) {
    case 'A': {
      if (n == 1) return matrix_from_edges(2, {{1, 2, kInfinity}});
      auto e = path_edges(n);
      e.push_back({n, n + 1, 3});
      e.push_back({n + 1, 1, 3});
      return matrix_from_edges(n + 1, e);
    }
    case 'B': {
      if (n < 3) throw bad();
      auto e = path_edges(n);
      e.back()[2] = 4;
      e.push_back({2, n + 1, 3});
      return matrix_from_edges(n + 1, e);
    }
    case 'C': {
      if (n < 2) throw bad();
      auto e = path_edges(n + 1);
      e.front()[2] = 4;
      e.back()[2] = 4;
      return matrix_from_edges(n + 1, e);
    }
    case 'D': {
      if (n < 4) throw bad();
      auto e = path_edges(n - 1);
      e.push_back({n - 2, n, 3});
      e.push_back({2, n + 1, 3});
      return matrix_from_edges(n + 1, e);
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      std::vector<std::array<int, 3>> e{{1, 3, 3}, {2, 4, 3}};
      for (int i = 3; i < n; ++i) e.push_back({i, i + 1, 3});
      const int attach = n == 6 ? 2 : (n == 7 ? 1 : 8);
      e.push_back({attach, n + 1, 3});
      return matrix_from_edges(n + 1, e);
    }
    case 'F':
      if (n != 4) throw bad();
      return matrix_from_edges(5, {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {5, 1, 3}});
    case 'G':
      if (n != 2) throw bad();
      return matrix_from_edges(3, {{1, 2, 6}, {2, 3, 3}});
    default:
      throw bad();
  }
}

}  // namespace detail

/// Parses a named type: "A3", "B3", "D4", "E6", "F4", "G2", "H3", "I2(7)",
/// affine forms such as "A2~", and products joined by 'x' ("A1xA1"). The
/// generators of a product are numbered factor by factor.
inline CoxeterMatrix parse_named_type(const std::string& spec) {
  std::vector<CoxeterMatrix> factors;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t pos = spec.find('x', start);
    if (pos == std::string::npos) pos = spec.size();
    factors.push_back(detail::single_named(spec.substr(start, pos - start)));
    start = pos + 1;
  }
  int n = 0;
  for (const auto& f : factors) n += f.rank();
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  int offset = 0;
  for (const auto& f : factors) {
    for (int s = 0; s < f.rank(); ++s)
      for (int t = 0; t < f.rank(); ++t) m[offset + s][offset + t] = f(s, t);
    offset += f.rank();
  }
  return CoxeterMatrix(std::move(m));
}

}  // namespace twistkl
