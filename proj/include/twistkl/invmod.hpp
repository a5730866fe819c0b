#pragma once

/**
 * @file invmod.hpp
 * @brief The Hecke module M with basis {a_w : w twisted involution}.
 *
 * The action of T_s + 1 is defined case by case (u = v^2):
 *   z in I'_e:  (u + 1)(a_z + a_z~)      z in I''_e: (u^2 - u)(a_z + a_z~)
 *   z in I'_n:  a_z + a_z~               z in I''_n: u^2 (a_z + a_z~)
 * The bar operator is fixed by bar(a_1) = a_1, bar(v^n m) = v^-n bar(m) and
 * bar(u^-1 (T_s + 1) m) = u^-1 (T_s + 1) bar(m). The canonical basis is
 *   A_w = v^{-l(w)} sum_{y <= w} P^s_{y,w}(u) a_y,
 * with P^s the sigma-KL polynomials, obtained by selfdual_complete in the
 * normalized basis n_y = v^{-l(y)} a_y.
 */

#include <string>
#include <utility>
#include <vector>

#include "twistkl/combination.hpp"
#include "twistkl/coxeter.hpp"
#include "twistkl/detail/once_table.hpp"
#include "twistkl/detail/parallel.hpp"
#include "twistkl/errors.hpp"
#include "twistkl/exactpoly.hpp"
#include "twistkl/hecke.hpp"
#include "twistkl/selfdual.hpp"

namespace twistkl {

struct ModuleNormalizedTag {};

/// Coordinates in the normalized basis n_y = v^{-l(y)} a_y.
using ModuleNormalized = Combination<ModuleNormalizedTag>;

class InvolutionModule {
 public:
  explicit InvolutionModule(const Hecke& hecke)
      : hecke_(hecke), g_(hecke.group()), bars_(g_.size()), columns_(g_.size()),
        canonical_(g_.size()) {}

  const Group& group() const { return g_; }
  const Hecke& hecke() const { return hecke_; }

  /// (T_s + 1) a_z as the pair (coefficient, z~): the result is coef*(a_z + a_z~).
  std::pair<LaurentPoly, ElementId> ts1_on_basis(int s, ElementId z) const {
    switch (g_.classify_case(s, z)) {
      case InvolutionCase::prime_e:
        return {LaurentPoly{{0, 1}, {2, 1}}, g_.tilde(s, z)};
      case InvolutionCase::dprime_e:
        return {LaurentPoly{{2, -1}, {4, 1}}, g_.tilde(s, z)};
      case InvolutionCase::prime_n:
        return {LaurentPoly(1), g_.tilde(s, z)};
      case InvolutionCase::dprime_n:
        return {LaurentPoly::v_power(4), g_.tilde(s, z)};
    }
    throw ConsistencyError("unreachable involution case");
  }

  MElt act_Ts1(int s, const MElt& m) const {
    MElt out;
    for (const auto& [z, f] : m) {
      const auto [coef, zt] = ts1_on_basis(s, z);
      const LaurentPoly c = coef * f;
      out.add(z, c);
      out.add(zt, c);
    }
    return out;
  }

  MElt act_T(int s, const MElt& m) const { return act_Ts1(s, m) - m; }

  /// T_s^{-1} m = u^-2 (T_s + 1) m - m.
  MElt act_T_inverse(int s, const MElt& m) const { return act_Ts1(s, m).shifted(-4) - m; }

  /// c_s m = u^-1 (T_s + 1) m.
  MElt act_c(int s, const MElt& m) const { return act_Ts1(s, m).shifted(-2); }

  /// h m for h in the T-basis; T_x acts along a reduced word of x.
  MElt act_hecke(const HeckeElt& h, const MElt& m) const {
    MElt out;
    for (const auto& [x, f] : h) {
      MElt term = m;
      const std::vector<int> word = g_.word(x);
      for (auto it = word.rbegin(); it != word.rend(); ++it) term = act_T(*it, term);
      out.add_scaled(term, f);
    }
    return out;
  }

  /// bar(a_w), recursing along the smallest left descent of w.
  const MElt& bar_basis(ElementId w) const {
    return bars_.get(w.value, [&] {
      if (w == kIdentity) return MElt::basis(kIdentity);
      return bar_basis_via(w, g_.descents(w, Side::left).front());
    });
  }

  /// bar(a_w) computed with the given left descent s of w; lower terms come
  /// from the memo table.
  MElt bar_basis_via(ElementId w, int s) const {
    if (!g_.is_twisted_involution(w))
      throw NotTwistedInvolution("bar is defined on twisted involutions only, got " +
                                 g_.word_string(w));
    if (!g_.is_descent(s, w, Side::left))
      throw PreconditionViolated("generator is not a left descent of " + g_.word_string(w));
    const ElementId sw = g_.mult_gen(s, w, Side::left);
    if (sw != g_.mult_gen(g_.star_map()(s), w, Side::right)) {
      // a_w = T_s a_{s w s*}
      return act_T_inverse(s, bar_basis(g_.tilde(s, w)));
    }
    // (u + 1) a_w = (T_s - u) a_{sw}
    const MElt& lower = bar_basis(sw);
    const MElt raised = act_Ts1(s, lower).shifted(-4);
    const LaurentPoly divisor{{-2, 1}, {0, 1}};
    MElt out;
    for (const auto& [y, f] : raised) out.add(y, exact_div(f, divisor));
    return out - lower;
  }

  MElt bar(const MElt& m) const {
    MElt out;
    for (const auto& [w, f] : m) out.add_scaled(bar_basis(w), twistkl::bar(f));
    return out;
  }

  /// A_w in normalized coordinates.
  const ModuleNormalized& a_column(ElementId w) const {
    return columns_.get(w.value, [&] {
      const int lw = g_.length(w);
      ModuleNormalized bar_unit;
      for (const auto& [y, f] : bar_basis(w)) bar_unit.add(y, f.shifted(lw + g_.length(y)));
      return selfdual_complete(w, bar_unit,
                               [&](ElementId y) -> const ModuleNormalized& { return a_column(y); });
    });
  }

  /// A_w in the a-basis.
  const MElt& canonical(ElementId w) const {
    return canonical_.get(w.value, [&] {
      MElt a;
      for (const auto& [y, f] : a_column(w)) a.add(y, f.shifted(-g_.length(y)));
      return a;
    });
  }

  /// P^s_{y,w} as a polynomial in u; zero unless y <= w.
  IntPoly sigma_polynomial(ElementId y, ElementId w) const {
    if (!g_.is_twisted_involution(y) || !g_.bruhat_leq(y, w)) return {};
    const int gap = g_.length(w) - g_.length(y);
    IntPoly p = extract_power(a_column(w).coeff(y).shifted(gap), 2);
    if (y == w ? !(p == IntPoly{1}) : 2 * p.degree() > gap - 1)
      throw ConsistencyError("sigma-KL degree bound fails for (" + g_.word_string(y) + ", " +
                             g_.word_string(w) + "): " + p.to_string("u"));
    return p;
  }

  /// (mu', mu''): coefficients of v^-1 and v^-2 in v^{l(y)-l(w)} P^s_{y,w}(v^2).
  std::pair<BigInt, BigInt> mu_primes(ElementId y, ElementId w) const {
    if (!g_.is_twisted_involution(y) || !g_.bruhat_leq(y, w)) return {0, 0};
    const LaurentPoly c = a_column(w).coeff(y);
    return {c.coeff(-1), c.coeff(-2)};
  }

  /// M^s_{y,w} for sy < y < sw > w with equal parities.
  BigInt m_s_coefficient(int s, ElementId y, ElementId w) const {
    if (!g_.is_twisted_involution(y) || !g_.is_twisted_involution(w))
      throw PreconditionViolated("M^s needs twisted involutions");
    const ElementId sw = g_.mult_gen(s, w, Side::left);
    if (!g_.is_descent(s, y, Side::left) || g_.is_descent(s, w, Side::left) ||
        !(g_.bruhat_leq(y, sw) && y != sw) || g_.parity(y) != g_.parity(w))
      throw PreconditionViolated("M^s_{" + g_.word_string(y) + "," + g_.word_string(w) +
                                 "} needs sy < y < sw > w and equal parity");
    BigInt total = mu_primes(y, w).second;
    for (ElementId x : g_.lower_interval(w, true)) {
      if (x == w || x == y || !g_.bruhat_leq(y, x) || !g_.is_descent(s, x, Side::left)) continue;
      total -= mu_primes(y, x).first * mu_primes(x, w).first;
    }
    const int t = g_.star_map()(s);
    if (sw == g_.mult_gen(t, w, Side::right)) total -= mu_primes(y, sw).first;
    const ElementId sy = g_.mult_gen(s, y, Side::left);
    if (sy == g_.mult_gen(t, y, Side::right)) total += mu_primes(sy, w).first;
    return total;
  }

  /// Coordinates of m in the canonical basis {A_x}.
  ACoords expand_in_A(MElt m) const {
    ACoords out;
    while (!m.is_zero()) {
      const ElementId z = m.top();
      const LaurentPoly coef = m.coeff(z).shifted(g_.length(z));
      m.add_scaled(canonical(z), -coef);
      out.add(z, coef);
    }
    return out;
  }

  MElt assemble(const ACoords& coords) const {
    MElt out;
    for (const auto& [x, f] : coords) out.add_scaled(canonical(x), f);
    return out;
  }

  /// {b_{z,w,w'}}_{w'}: c_z A_w = sum b_{z,w,w'} A_{w'}.
  ACoords b_const(ElementId z, ElementId w) const {
    return expand_in_A(act_hecke(hecke_.c_basis(z), canonical(w)));
  }

  /// Fills the bar and canonical-basis tables for every enumerated twisted
  /// involution.
  void compute_columns(unsigned threads) const {
    const auto& inv = g_.twisted_involutions();
    detail::parallel_for(inv.size(), threads, [&](std::size_t i) { canonical(inv[i]); });
  }

 private:
  const Hecke& hecke_;
  const Group& g_;
  detail::OnceTable<MElt> bars_;
  detail::OnceTable<ModuleNormalized> columns_;
  detail::OnceTable<MElt> canonical_;
};

}  // namespace twistkl
