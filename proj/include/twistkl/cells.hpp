#pragma once

/**
 * @file cells.hpp
 * @brief KL preorders, two-sided and left cells, the a-function
 * and the cell quotient modules M_c. Finite groups only.
 *
 * x <=_L y is generated by "c_x occurs in c_s c_y", x <=_R y by "c_x occurs
 * in c_y c_s", and <=_LR by both; the generators c_s suffice since they
 * generate H as an algebra. a(z) is the largest u-degree of any h_{x,y,z}.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistkl/combination.hpp"
#include "twistkl/coxeter.hpp"
#include "twistkl/errors.hpp"
#include "twistkl/hecke.hpp"
#include "twistkl/invmod.hpp"
#include "twistkl/matrix.hpp"

namespace twistkl {

namespace detail {

/// Reflexive-transitive closure of a relation given as bitset rows:
/// row[x] holds every y with x <= y.
class Preorder {
 public:
  Preorder() = default;
  explicit Preorder(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {
    for (std::size_t i = 0; i < n; ++i) set(i, i);
  }

  void set(std::size_t x, std::size_t y) { rows_[x * words_ + y / 64] |= std::uint64_t{1} << (y % 64); }
  bool test(std::size_t x, std::size_t y) const {
    return (rows_[x * words_ + y / 64] >> (y % 64)) & 1u;
  }

  void close() {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (i != k && test(i, k))
          for (std::size_t w = 0; w < words_; ++w) rows_[i * words_ + w] |= rows_[k * words_ + w];
  }

  /// Equivalence classes, numbered by their smallest member.
  std::vector<int> classes() const {
    std::vector<int> cls(n_, -1);
    int next = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (cls[i] >= 0) continue;
      for (std::size_t j = i; j < n_; ++j)
        if (cls[j] < 0 && test(i, j) && test(j, i)) cls[j] = next;
      ++next;
    }
    return cls;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

}  // namespace detail

class CellDecomposition {
 public:
  explicit CellDecomposition(const Hecke& hecke, unsigned threads = 1)
      : hecke_(hecke), g_(hecke.group()) {
    g_.require_complete("cell decomposition");
    hecke_.compute_products(threads);
    const std::size_t n = g_.size();
    left_ = detail::Preorder(n);
    right_ = detail::Preorder(n);
    for (std::size_t yi = 0; yi < n; ++yi) {
      const ElementId y = g_.id(yi);
      for (int s = 0; s < g_.rank(); ++s) {
        const ElementId gs = g_.mult_gen(s, kIdentity, Side::left);
        for (const auto& [x, f] : hecke_.h_const(gs, y)) left_.set(x.value, yi);
        for (const auto& [x, f] : hecke_.h_const(y, gs)) right_.set(x.value, yi);
      }
    }
    two_sided_ = left_;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (right_.test(x, y)) two_sided_.set(x, y);
    left_.close();
    right_.close();
    two_sided_.close();

    cell_of_ = two_sided_.classes();
    left_cell_of_ = left_.classes();
    cells_.assign(*std::max_element(cell_of_.begin(), cell_of_.end()) + 1, {});
    left_cells_.assign(*std::max_element(left_cell_of_.begin(), left_cell_of_.end()) + 1, {});
    for (std::size_t i = 0; i < n; ++i) {
      cells_[cell_of_[i]].push_back(g_.id(i));
      left_cells_[left_cell_of_[i]].push_back(g_.id(i));
    }

    a_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (const auto& [z, f] : hecke_.h_const(g_.id(x), g_.id(y)))
          a_[z.value] = std::max(a_[z.value], f.max_degree() / 2);
  }

  const Group& group() const { return g_; }
  const Hecke& hecke() const { return hecke_; }

  bool left_leq(ElementId x, ElementId y) const { return left_.test(x.value, y.value); }
  bool right_leq(ElementId x, ElementId y) const { return right_.test(x.value, y.value); }
  bool lr_leq(ElementId x, ElementId y) const { return two_sided_.test(x.value, y.value); }

  /// Two-sided cells, numbered by smallest element id; cell 0 holds the identity.
  const std::vector<std::vector<ElementId>>& cells() const { return cells_; }
  int cell_of(ElementId x) const { return cell_of_[x.value]; }
  const std::vector<std::vector<ElementId>>& left_cells() const { return left_cells_; }
  int left_cell_of(ElementId x) const { return left_cell_of_[x.value]; }

  /// Cell a lies below cell b: its elements are <=_LR those of b.
  bool cell_leq(int a, int b) const {
    return two_sided_.test(cells_[a].front().value, cells_[b].front().value);
  }
  /// y <_LR c.
  bool strictly_below(ElementId y, int c) const {
    return cell_of(y) != c && cell_leq(cell_of(y), c);
  }

  int a_value(ElementId z) const { return a_[z.value]; }

  /// Checks that a is constant on two-sided cells and that z <=_L z' with
  /// a(z) = a(z') forces z ~_L z'. Returns the first violation.
  std::optional<std::string> a_function_failure() const {
    for (const auto& cell : cells_)
      for (ElementId z : cell)
        if (a_value(z) != a_value(cell.front()))
          return "a is not constant on the cell of " + g_.word_string(z);
    const std::size_t n = g_.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (left_.test(x, y) && a_[x] == a_[y] && left_cell_of_[x] != left_cell_of_[y])
          return g_.word_string(g_.id(x)) + " <=_L " + g_.word_string(g_.id(y)) +
                 " with equal a-values but different left cells";
    return std::nullopt;
  }

 private:
  const Hecke& hecke_;
  const Group& g_;
  detail::Preorder left_, right_, two_sided_;
  std::vector<int> cell_of_, left_cell_of_;
  std::vector<std::vector<ElementId>> cells_, left_cells_;
  std::vector<int> a_;
};

/// The quotient M_c = M_{<=c} / M_{<c} with the action of every c_s in the
/// basis {A_x : x in I, x in c}. Entry (i, j) of action[s] is the
/// coefficient of A_{basis[i]} in c_s A_{basis[j]}.
struct CellModule {
  int cell = 0;
  std::vector<ElementId> basis;
  std::vector<LMatrix> action;

  std::ptrdiff_t index_of(ElementId x) const {
    auto it = std::find(basis.begin(), basis.end(), x);
    return it == basis.end() ? -1 : it - basis.begin();
  }

  /// The column of c_s A_{basis[j]} as A-coordinates.
  ACoords column(int s, std::size_t j) const {
    ACoords out;
    for (std::size_t i = 0; i < basis.size(); ++i) out.add(basis[i], action[s](i, j));
    return out;
  }
};

inline CellModule cell_module(const CellDecomposition& cells, const InvolutionModule& m, int c) {
  const Group& g = cells.group();
  CellModule out;
  out.cell = c;
  for (ElementId x : cells.cells()[c])
    if (g.is_twisted_involution(x)) out.basis.push_back(x);
  g.sort_by_length(out.basis);
  const std::size_t n = out.basis.size();
  for (int s = 0; s < g.rank(); ++s) {
    LMatrix mat(n);
    for (std::size_t j = 0; j < n; ++j) {
      const ACoords image = m.expand_in_A(m.act_c(s, m.canonical(out.basis[j])));
      for (const auto& [y, f] : image) {
        if (cells.cell_of(y) == c) {
          mat(static_cast<std::size_t>(out.index_of(y)), j) = f;
        } else if (!cells.strictly_below(y, c)) {
          throw FiltrationViolated("c_s" + std::to_string(s + 1) + " A_" +
                                   g.word_string(out.basis[j]) + " has coefficient " +
                                   f.to_string() + " at A_" + g.word_string(y) +
                                   " outside the cell filtration");
        }
      }
    }
    out.action.push_back(std::move(mat));
  }
  return out;
}

/// T_s = u c_s - 1 on the cell module.
inline std::vector<LMatrix> cell_t_matrices(const CellModule& cm) {
  std::vector<LMatrix> t;
  const LMatrix one = LMatrix::identity(cm.basis.size());
  for (const LMatrix& c : cm.action) t.push_back(c.scaled(LaurentPoly::v_power(2)) - one);
  return t;
}

}  // namespace twistkl
