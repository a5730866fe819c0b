#pragma once

/**
 * @file hecke.hpp
 * @brief Hecke algebra over Z[u, u^-1], u = v^2, with quadratic relation
 * T_s^2 = u^2 T_1 + (u^2 - 1) T_s.
 *
 * KL columns come from selfdual_complete applied to the
 * normalized basis n_x = u^{-l(x)} T_x, so that
 *   c_w = u^{-l(w)} sum_{y <= w} P_{y,w}(u^2) T_y.
 * Structure constants c_x c_y = sum_z h_{x,y,z} c_z are obtained by
 * expanding products in the T-basis and eliminating against c-columns from
 * the top down.
 */

#include <string>
#include <vector>

#include "twistkl/combination.hpp"
#include "twistkl/coxeter.hpp"
#include "twistkl/detail/once_table.hpp"
#include "twistkl/detail/parallel.hpp"
#include "twistkl/exactpoly.hpp"
#include "twistkl/selfdual.hpp"

namespace twistkl {

struct HeckeNormalizedTag {};
struct CBasisTag {};

/// Coordinates in the normalized basis n_x = u^{-l(x)} T_x.
using HeckeNormalized = Combination<HeckeNormalizedTag>;
/// Coordinates in the KL basis {c_w}.
using CCoords = Combination<CBasisTag>;

class Hecke {
 public:
  explicit Hecke(const Group& g)
      : g_(g),
        inverses_(g.size()),
        columns_(g.size()),
        c_basis_(g.size()),
        product_rows_(g.is_complete() ? g.size() : 0) {}

  const Group& group() const { return g_; }

  /// T_s * h or h * T_s.
  HeckeElt t_mult_gen(const HeckeElt& h, int s, Side side) const {
    HeckeElt out;
    for (const auto& [w, f] : h) {
      const ElementId sw = g_.mult_gen(s, w, side);
      if (g_.length(sw) > g_.length(w)) {
        out.add(sw, f);
      } else {
        const LaurentPoly f4 = f.shifted(4);
        out.add(sw, f4);
        out.add(w, f4 - f);
      }
    }
    return out;
  }

  /// T_w^{-1} in the T-basis, built along w = w' s via
  /// T_w^{-1} = (u^-2 T_s + u^-2 - 1) T_{w'}^{-1}.
  const HeckeElt& t_inverse(ElementId w) const {
    return inverses_.get(w.value, [&] {
      if (w == kIdentity) return HeckeElt::basis(kIdentity);
      const int s = g_.descents(w, Side::right).front();
      const HeckeElt& prev = t_inverse(g_.mult_gen(s, w, Side::right));
      HeckeElt r = t_mult_gen(prev, s, Side::left).shifted(-4);
      r.add_scaled(prev, LaurentPoly{{-4, 1}, {0, -1}});
      return r;
    });
  }

  /// Product in the T-basis: sum_a f_a T_a * b, each T_a applied along a
  /// reduced word.
  HeckeElt multiply(const HeckeElt& a, const HeckeElt& b) const {
    HeckeElt out;
    for (const auto& [x, f] : a) {
      HeckeElt term = b;
      const std::vector<int> word = g_.word(x);
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        term = t_mult_gen(term, *it, Side::left);
      out.add_scaled(term, f);
    }
    return out;
  }

  /// Ring involution with bar(u) = u^-1 and bar(T_w) = T_{w^-1}^{-1}.
  HeckeElt bar(const HeckeElt& h) const {
    HeckeElt out;
    for (const auto& [w, f] : h) out.add_scaled(t_inverse(g_.inverse(w)), twistkl::bar(f));
    return out;
  }

  /// c_w in normalized coordinates.
  const HeckeNormalized& kl_column(ElementId w) const {
    return columns_.get(w.value, [&] {
      HeckeNormalized bar_unit;
      for (const auto& [x, f] : t_inverse(g_.inverse(w)))
        bar_unit.add(x, f.shifted(2 * (g_.length(w) + g_.length(x))));
      return selfdual_complete(w, bar_unit,
                               [&](ElementId y) -> const HeckeNormalized& { return kl_column(y); });
    });
  }

  /// P_{y,w} as a polynomial in q = u^2; zero unless y <= w.
  IntPoly kl_polynomial(ElementId y, ElementId w) const {
    if (!g_.bruhat_leq(y, w)) return {};
    const int gap = g_.length(w) - g_.length(y);
    IntPoly p = extract_power(kl_column(w).coeff(y).shifted(2 * gap), 4);
    if (y == w ? !(p == IntPoly{1}) : 2 * p.degree() > gap - 1)
      throw ConsistencyError("KL polynomial degree bound fails for (" + g_.word_string(y) +
                             ", " + g_.word_string(w) + "): " + p.to_string());
    return p;
  }

  /// Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w}.
  BigInt mu(ElementId y, ElementId w) const {
    const int gap = g_.length(w) - g_.length(y);
    if (gap <= 0 || gap % 2 == 0) return 0;
    return kl_polynomial(y, w).coeff((gap - 1) / 2);
  }

  /// c_w in the T-basis.
  const HeckeElt& c_basis(ElementId w) const {
    return c_basis_.get(w.value, [&] {
      HeckeElt c;
      for (const auto& [y, f] : kl_column(w)) c.add(y, f.shifted(-2 * g_.length(y)));
      return c;
    });
  }

  /// Rewrites a T-basis element in the c-basis by peeling off top terms.
  CCoords to_c_basis(HeckeElt h) const {
    CCoords out;
    while (!h.is_zero()) {
      const ElementId z = h.top();
      const LaurentPoly coef = h.coeff(z).shifted(2 * g_.length(z));
      h.add_scaled(c_basis(z), -coef);
      out.add(z, coef);
    }
    return out;
  }

  /// Structure constants {h_{x,y,z}}_z of c_x c_y. Each value is checked to
  /// lie in N[u, u^-1]. Finite groups only.
  const CCoords& h_const(ElementId x, ElementId y) const {
    return product_row(y)[x.value];
  }

  /// h~_{z,w,w'}: the coefficient of c_{w'} in c_z c_w c_{(z*)^-1}. The
  /// alternate form sums h_{w,(z*)^-1,z'} h_{z,z',w'} instead.
  LaurentPoly h_tilde(ElementId z, ElementId w, ElementId w2, bool alternate = false) const {
    const ElementId zsi = g_.star_inverse(z);
    LaurentPoly total;
    if (!alternate) {
      for (const auto& [z1, f] : h_const(z, w)) total += f * h_const(z1, zsi).coeff(w2);
    } else {
      for (const auto& [z1, f] : h_const(w, zsi)) total += f * h_const(z, z1).coeff(w2);
    }
    return total;
  }

  /// Fills every KL column; columns of one length are independent.
  void compute_kl_columns(unsigned threads) const {
    detail::parallel_for(g_.size(), threads, [&](std::size_t i) { kl_column(g_.id(i)); });
  }

  /// Fills the full table of structure constants.
  void compute_products(unsigned threads) const {
    g_.require_complete("structure constants");
    compute_kl_columns(threads);
    detail::parallel_for(g_.size(), threads, [&](std::size_t i) { product_row(g_.id(i)); });
  }

 private:
  using Dense = std::vector<LaurentPoly>;

  /// out = T_s * x for dense x.
  Dense dense_left_mult(const Dense& x, int s) const {
    Dense out(x.size());
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (x[b].is_zero()) continue;
      const ElementId w = g_.id(b);
      const std::uint32_t sb = g_.mult_raw(s, w, Side::left);
      if (g_.length(ElementId{sb}) > g_.length(w)) {
        out[sb] += x[b];
      } else {
        const LaurentPoly f4 = x[b].shifted(4);
        out[sb] += f4;
        out[b] += f4 - x[b];
      }
    }
    return out;
  }

  /// Row y of the product table: entry x holds c_x c_y in the c-basis.
  const std::vector<CCoords>& product_row(ElementId y) const {
    g_.require_complete("structure constants");
    return product_rows_.get(y.value, [&] {
      const std::size_t n = g_.size();
      // images[a] = T_a c_y, built along a = s a' with l(a) = l(a') + 1.
      std::vector<Dense> images(n);
      images[0].assign(n, LaurentPoly());
      for (const auto& [t, f] : c_basis(y)) images[0][t.value] = f;
      for (std::size_t a = 1; a < n; ++a) {
        const ElementId elt = g_.id(a);
        const int s = g_.descents(elt, Side::left).front();
        images[a] = dense_left_mult(images[g_.mult_raw(s, elt, Side::left)], s);
      }
      std::vector<CCoords> row(n);
      for (std::size_t x = 0; x < n; ++x) {
        Dense acc(n);
        for (const auto& [a, f] : c_basis(g_.id(x))) {
          const Dense& img = images[a.value];
          for (std::size_t t = 0; t < n; ++t)
            if (!img[t].is_zero()) acc[t] += f * img[t];
        }
        CCoords out;
        for (std::size_t z = n; z-- > 0;) {
          if (acc[z].is_zero()) continue;
          const LaurentPoly coef = acc[z].shifted(2 * g_.length(g_.id(z)));
          if (!check_nonneg_even(coef, true))
            throw PositivityViolated("h_{" + g_.word_string(g_.id(x)) + "," +
                                     g_.word_string(y) + "," + g_.word_string(g_.id(z)) +
                                     "} = " + coef.to_string() + " is not in N[u,u^-1]");
          for (const auto& [t, f] : c_basis(g_.id(z))) acc[t.value] -= coef * f;
          out.add(g_.id(z), coef);
        }
        row[x] = std::move(out);
      }
      return row;
    });
  }

  const Group& g_;
  detail::OnceTable<HeckeElt> inverses_;
  detail::OnceTable<HeckeNormalized> columns_;
  detail::OnceTable<HeckeElt> c_basis_;
  detail::OnceTable<std::vector<CCoords>> product_rows_;
};

}  // namespace twistkl
