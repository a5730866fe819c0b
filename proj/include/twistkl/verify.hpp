#pragma once

/**
 * @file verify.hpp
 * @brief Exhaustive verifiers for the module relations, the two positivity
 * statements, the cell-quotient formulas and the parity splitting.
 *
 * Each verifier returns a Report that stops at the first failing tuple and
 * carries enough payload to rerun it. Internal errors raised by lower layers
 * (NotDivisible, AntisymmetryViolated, ...) propagate as exceptions.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "twistkl/cells.hpp"
#include "twistkl/coxeter.hpp"
#include "twistkl/hecke.hpp"
#include "twistkl/invmod.hpp"
#include "twistkl/matrix.hpp"

namespace twistkl {

using json = nlohmann::ordered_json;

struct Report {
  std::string suite;
  bool passed = true;
  std::size_t checked = 0;
  json failure{};
  std::vector<json> notes{};

  void fail(json payload) {
    if (!passed) return;
    passed = false;
    failure = std::move(payload);
  }

  json to_json(const Group& g) const {
    json j;
    j["suite"] = suite;
    j["group"] = group_label(g);
    j["star"] = g.star_map().one_based();
    j["passed"] = passed;
    j["checked"] = checked;
    if (!passed) j["failure"] = failure;
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }

  static std::string group_label(const Group& g) {
    return g.finite_type() ? *g.finite_type() : std::string("matrix");
  }
};

/// The two halves (P_{y,w}(u) + d P^s_{y,w}(u)) / 2 for d = 1, -1, with P's
/// variable q renamed u. Throws PositivityViolated unless both lie in N[u].
inline std::pair<IntPoly, IntPoly> positivity_pointwise(const InvolutionModule& m, ElementId y,
                                                        ElementId w) {
  const Group& g = m.group();
  const IntPoly p = m.hecke().kl_polynomial(y, w);
  const IntPoly ps = m.sigma_polynomial(y, w);
  const int deg = std::max(p.degree(), ps.degree());
  std::vector<BigInt> plus, minus;
  for (int k = 0; k <= deg; ++k) {
    const BigInt a = p.coeff(k) + ps.coeff(k), b = p.coeff(k) - ps.coeff(k);
    if (a % 2 != 0 || b % 2 != 0 || a < 0 || b < 0)
      throw PositivityViolated("(P +- P^s)/2 not in N[u] for (" + g.word_string(y) + ", " +
                               g.word_string(w) + "): P = " + p.to_string("u") +
                               ", P^s = " + ps.to_string("u"));
    plus.push_back(a / 2);
    minus.push_back(b / 2);
  }
  return {IntPoly(std::move(plus)), IntPoly(std::move(minus))};
}

/// The two halves (h~_{z,w,w'}(u) + d b_{z,w,w'}(u)) / 2, where b(u) is b
/// with v renamed u (so b(u) = b(v^2) as a Laurent polynomial in v). Throws
/// PositivityViolated unless both lie in N[u, u^-1].
inline std::pair<LaurentPoly, LaurentPoly> positivity_module(const InvolutionModule& m,
                                                             ElementId z, ElementId w,
                                                             ElementId w2) {
  const Group& g = m.group();
  const LaurentPoly ht = m.hecke().h_tilde(z, w, w2);
  const LaurentPoly bu = stretch(m.b_const(z, w).coeff(w2), 2);
  const auto plus = half(ht + bu), minus = half(ht - bu);
  if (!plus || !minus || !check_nonneg_even(*plus, true) || !check_nonneg_even(*minus, true))
    throw PositivityViolated("(h~ +- b)/2 not in N[u,u^-1] for (" + g.word_string(z) + ", " +
                             g.word_string(w) + ", " + g.word_string(w2) +
                             "): h~ = " + ht.to_string() + ", b(u) = " + bu.to_string());
  return {*plus, *minus};
}

/// Matrices of T_s on M in the basis of all twisted involutions; finite W.
inline std::vector<LMatrix> module_t_matrices(const InvolutionModule& m) {
  const Group& g = m.group();
  const auto& inv = g.twisted_involutions();
  std::map<ElementId, std::size_t> index;
  for (std::size_t i = 0; i < inv.size(); ++i) index[inv[i]] = i;
  std::vector<LMatrix> t;
  for (int s = 0; s < g.rank(); ++s) {
    LMatrix mat(inv.size());
    for (std::size_t j = 0; j < inv.size(); ++j)
      for (const auto& [y, f] : m.act_T(s, MElt::basis(inv[j]))) mat(index.at(y), j) = f;
    t.push_back(std::move(mat));
  }
  return t;
}

inline Report verify_module_relations(const InvolutionModule& m) {
  const Group& g = m.group();
  g.require_complete("module relations");
  Report r{"relations"};
  for (ElementId z : g.twisted_involutions())
    for (int s = 0; s < g.rank(); ++s) {
      const MElt image = m.act_Ts1(s, MElt::basis(z));
      const ElementId zt = g.tilde(s, z);
      ++r.checked;
      if (image.size() != 2 || image.coeff(z) != image.coeff(zt) ||
          g.classify_case(s, zt) == g.classify_case(s, z)) {
        r.fail({{"check", "two-term action"}, {"s", s + 1}, {"z", g.word_string(z)},
                {"image", to_string(image, g, "a")}});
        return r;
      }
    }
  if (auto bad = hecke_relation_failure(g.matrix(), module_t_matrices(m))) {
    r.fail({{"check", "operator relations"}, {"detail", *bad}});
    return r;
  }
  r.checked += g.rank() + g.rank() * (g.rank() - 1) / 2;
  return r;
}

/// Every pair y <= w of twisted involutions, with l(w) <= bound when given.
inline Report verify_positivity_pointwise(const InvolutionModule& m, unsigned threads = 1,
                                          std::optional<int> bound = std::nullopt) {
  const Group& g = m.group();
  Report r{"positivity-point"};
  const auto cols = g.twisted_involutions_up_to(bound.value_or(g.top_length()));
  detail::parallel_for(cols.size(), threads, [&](std::size_t i) {
    m.canonical(cols[i]);
    m.hecke().kl_column(cols[i]);
  });
  for (ElementId w : cols)
    for (ElementId y : g.lower_interval(w, true)) {
      ++r.checked;
      try {
        positivity_pointwise(m, y, w);
      } catch (const PositivityViolated&) {
        r.fail({{"y", g.word_string(y)}, {"w", g.word_string(w)},
                {"P", m.hecke().kl_polynomial(y, w).to_string("u")},
                {"Psigma", m.sigma_polynomial(y, w).to_string("u")}});
        return r;
      }
    }
  return r;
}

inline Report verify_positivity_module(const InvolutionModule& m, unsigned threads = 1) {
  const Group& g = m.group();
  g.require_complete("module positivity");
  Report r{"positivity-module"};
  m.hecke().compute_products(threads);
  m.compute_columns(threads);
  std::size_t odd = 0;
  const auto& inv = g.twisted_involutions();
  for (ElementId z : g.elements())
    for (ElementId w : inv) {
      const ACoords b = m.b_const(z, w);
      for (ElementId w2 : inv) {
        ++r.checked;
        const LaurentPoly bv = b.coeff(w2);
        const LaurentPoly ht = m.hecke().h_tilde(z, w, w2);
        json tuple = {{"z", g.word_string(z)}, {"w", g.word_string(w)}, {"w2", g.word_string(w2)},
                      {"h_tilde", ht.to_string()}, {"b", bv.to_string()}};
        if (!all_exponents_even(bv)) {
          if (odd++ < 8) r.notes.push_back(json{{"odd_b", tuple}});
        }
        if (!(ht == m.hecke().h_tilde(z, w, w2, true))) {
          tuple["check"] = "h_tilde orderings differ";
          r.fail(tuple);
          return r;
        }
        try {
          positivity_module(m, z, w, w2);
        } catch (const PositivityViolated&) {
          tuple["check"] = "(h~ +- b(u))/2 in N[u,u^-1]";
          r.fail(tuple);
          return r;
        }
      }
    }
  r.notes.push_back(json{{"odd_b_count", odd}});
  return r;
}

inline Report verify_a_function(const CellDecomposition& cells) {
  Report r{"a-function"};
  r.checked = cells.group().size();
  if (cells.a_value(kIdentity) != 0) r.fail({{"detail", "a(1) != 0"}});
  if (auto bad = cells.a_function_failure()) r.fail({{"detail", *bad}});
  return r;
}

/// Right side of the closed-form action of c_s on A_w in M_c.
inline ACoords cell_action_closed_form(const CellDecomposition& cells, const InvolutionModule& m, int c,
                              int s, ElementId w) {
  const Group& g = m.group();
  const ElementId sw = g.mult_gen(s, w, Side::left);
  ACoords out;
  if (g.length(sw) < g.length(w)) {
    out.add(w, LaurentPoly{{-2, 1}, {2, 1}});
    return out;
  }
  const int t = g.star_map()(s);
  if (sw != g.mult_gen(t, w, Side::right)) {
    const ElementId sws = g.mult_gen(t, sw, Side::right);
    if (g.length(sws) > g.length(w) && cells.cell_of(sws) == c) out.add(sws, LaurentPoly(1));
  }
  for (ElementId z : cells.cells()[c]) {
    if (!g.is_twisted_involution(z) || g.parity(z) != g.parity(w)) continue;
    if (!g.is_descent(s, z, Side::left) || z == sw || !g.bruhat_leq(z, sw)) continue;
    out.add(z, LaurentPoly(m.m_s_coefficient(s, z, w)));
  }
  return out;
}

inline Report verify_cell_action(const CellDecomposition& cells, const InvolutionModule& m) {
  const Group& g = m.group();
  Report r{"cells-72"};
  m.compute_columns(1);
  for (int c = 0; c < static_cast<int>(cells.cells().size()); ++c) {
    const CellModule cm = cell_module(cells, m, c);
    if (auto bad = hecke_relation_failure(g.matrix(), cell_t_matrices(cm))) {
      r.fail({{"cell", c}, {"check", "cell module relations"}, {"detail", *bad}});
      return r;
    }
    for (int s = 0; s < g.rank(); ++s)
      for (std::size_t j = 0; j < cm.basis.size(); ++j) {
        const ElementId w = cm.basis[j];
        const ElementId sw = g.mult_gen(s, w, Side::left);
        const ACoords actual = cm.column(s, j);
        const ACoords expected = cell_action_closed_form(cells, m, c, s, w);
        ++r.checked;
        json tuple = {{"cell", c}, {"s", s + 1}, {"w", g.word_string(w)},
                      {"actual", to_string(actual, g, "A")},
                      {"expected", to_string(expected, g, "A")}};
        if (!(actual == expected)) {
          tuple["check"] = g.length(sw) < g.length(w) ? "descent-action" : "ascent-action";
          r.fail(tuple);
          return r;
        }
        if (g.length(sw) < g.length(w)) continue;
        const int t = g.star_map()(s);
        if (sw == g.mult_gen(t, w, Side::right) && !cells.strictly_below(sw, c)) {
          tuple["check"] = "sw-below-cell";
          r.fail(tuple);
          return r;
        }
        for (ElementId z : g.twisted_involutions()) {
          if (g.parity(z) == g.parity(w) || !g.is_descent(s, z, Side::left)) continue;
          if (z == sw || !g.bruhat_leq(z, sw) || m.mu_primes(z, w).first == 0) continue;
          if (!cells.strictly_below(z, c)) {
            tuple["check"] = "z-below-cell";
            tuple["z"] = g.word_string(z);
            r.fail(tuple);
            return r;
          }
        }
      }
  }
  // Whether the integer constants of the ascent formula depend on s.
  std::size_t dependent = 0;
  for (const auto& cell : cells.cells())
    for (ElementId w : cell)
      for (ElementId z : cell) {
        if (!g.is_twisted_involution(w) || !g.is_twisted_involution(z) || z == w) continue;
        std::optional<BigInt> seen;
        bool differs = false;
        for (int s = 0; s < g.rank(); ++s) {
          const ElementId sw = g.mult_gen(s, w, Side::left);
          if (g.length(sw) < g.length(w) || g.parity(z) != g.parity(w) ||
              !g.is_descent(s, z, Side::left) || z == sw || !g.bruhat_leq(z, sw))
            continue;
          const BigInt v = m.m_s_coefficient(s, z, w);
          if (seen && *seen != v) differs = true;
          seen = v;
        }
        if (differs && dependent++ < 8)
          r.notes.push_back(json{{"s_dependent_M", {{"z", g.word_string(z)}, {"w", g.word_string(w)}}}});
      }
  r.notes.push_back(json{{"s_dependent_pairs", dependent}});
  return r;
}

inline Report verify_parity(const CellDecomposition& cells, const InvolutionModule& m) {
  const Group& g = m.group();
  Report r{"parity"};
  m.compute_columns(1);
  for (int c = 0; c < static_cast<int>(cells.cells().size()); ++c) {
    const CellModule cm = cell_module(cells, m, c);
    for (int s = 0; s < g.rank(); ++s)
      for (std::size_t i = 0; i < cm.basis.size(); ++i)
        for (std::size_t j = 0; j < cm.basis.size(); ++j) {
          ++r.checked;
          if (g.parity(cm.basis[i]) != g.parity(cm.basis[j]) && !cm.action[s](i, j).is_zero()) {
            r.fail({{"cell", c}, {"s", s + 1}, {"row", g.word_string(cm.basis[i])},
                    {"column", g.word_string(cm.basis[j])},
                    {"entry", cm.action[s](i, j).to_string()}});
            return r;
          }
        }
  }
  return r;
}

}  // namespace twistkl
