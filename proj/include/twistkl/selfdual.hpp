#pragma once

/**
 * @file selfdual.hpp
 * @brief Triangular self-dual completion, shared by the Hecke algebra and
 * the involution module.
 *
 * Setting: a free module with a normalized basis n_x indexed by group
 * elements, and a semilinear involution "bar" that is unitriangular on that
 * basis: bar(n_w) - n_w is supported on ids smaller than w. Element ids
 * refine length, and length refines the Bruhat order, so "smaller id" is a
 * valid triangular order.
 *
 * The canonical element C_w is the unique bar-invariant element
 * n_w + sum_{y<w} p_y n_y with every p_y in v^-1 Z[v^-1].
 */

#include <string>
#include <vector>

#include "twistkl/combination.hpp"
#include "twistkl/errors.hpp"
#include "twistkl/exactpoly.hpp"

namespace twistkl {

/// Computes C_w from bar(n_w) (in normalized coordinates) and a callable
/// returning C_y, in normalized coordinates, for any y below w.
///
/// Writes D = bar(n_w) - n_w = sum_y e_y C_y by peeling off the largest id;
/// every e_y must satisfy bar(e_y) = -e_y, and C_w = n_w + sum_y
/// negative_part(e_y) C_y.
template <class Tag, class LowerColumn>
Combination<Tag> selfdual_complete(ElementId w, const Combination<Tag>& bar_of_unit,
                                   LowerColumn&& lower_column) {
  if (!bar_of_unit.is_zero() && bar_of_unit.top() > w)
    throw ConsistencyError("bar operator is not triangular at column " +
                           std::to_string(w.value));
  if (!(bar_of_unit.coeff(w) == LaurentPoly(1)))
    throw ConsistencyError("bar operator is not unitriangular at column " +
                           std::to_string(w.value));
  Combination<Tag> remainder = bar_of_unit;
  remainder.erase(w);
  Combination<Tag> result = Combination<Tag>::basis(w);
  while (!remainder.is_zero()) {
    const ElementId y = remainder.top();
    const LaurentPoly e = remainder.coeff(y);
    if (!(bar(e) == -e))
      throw AntisymmetryViolated("self-dual completion: coefficient " + e.to_string() +
                                 " at " + std::to_string(y.value) + " in column " +
                                 std::to_string(w.value) + " is not bar-antisymmetric");
    const Combination<Tag>& column = lower_column(y);
    remainder.add_scaled(column, -e);
    result.add_scaled(column, negative_part(e));
  }
  return result;
}

}  // namespace twistkl
