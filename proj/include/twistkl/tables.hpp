#pragma once

/**
 * @file tables.hpp
 * @brief Deterministic table builders behind the command-line tool.
 *
 * A table is {"group", "star", "kind", "rows": [...]}; rows are ordered by
 * (l(w), id(w)) and then (l(y), id(y)).
 */

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twistkl/coxeter.hpp"
#include "twistkl/hecke.hpp"
#include "twistkl/invmod.hpp"

namespace twistkl {

using json = nlohmann::ordered_json;

enum class TableKind { kl, skl, mu, bar };

inline std::optional<TableKind> parse_table_kind(const std::string& s) {
  if (s == "kl") return TableKind::kl;
  if (s == "skl") return TableKind::skl;
  if (s == "mu") return TableKind::mu;
  if (s == "bar") return TableKind::bar;
  return std::nullopt;
}

inline std::string to_string(TableKind k) {
  switch (k) {
    case TableKind::kl: return "kl";
    case TableKind::skl: return "skl";
    case TableKind::mu: return "mu";
    case TableKind::bar: return "bar";
  }
  return "";
}

inline json table_header(const Group& g, const std::string& kind) {
  json j;
  j["group"] = g.finite_type() ? *g.finite_type() : std::string("matrix");
  j["star"] = g.star_map().one_based();
  j["kind"] = kind;
  j["rows"] = json::array();
  return j;
}

/// Elements of length <= bound (all of them when bound is empty).
inline std::vector<ElementId> elements_up_to(const Group& g, std::optional<int> bound) {
  std::vector<ElementId> r;
  for (ElementId w : g.elements())
    if (!bound || g.length(w) <= *bound) r.push_back(w);
  return r;
}

inline json involutions_table(const Group& g, std::optional<int> bound) {
  json t = table_header(g, "involutions");
  for (ElementId w : g.twisted_involutions_up_to(bound.value_or(g.top_length()))) {
    json cases = json::array();
    for (int s = 0; s < g.rank(); ++s) cases.push_back(to_string(g.classify_case(s, w)));
    t["rows"].push_back({{"id", w.value},
                         {"length", g.length(w)},
                         {"w", g.word_string(w)},
                         {"epsilon", g.parity(w)},
                         {"cases", cases}});
  }
  return t;
}

inline json polynomial_table(const InvolutionModule& m, TableKind kind, std::optional<int> bound,
                             unsigned threads) {
  const Group& g = m.group();
  const Hecke& h = m.hecke();
  json t = table_header(g, to_string(kind));
  auto& rows = t["rows"];
  if (kind == TableKind::kl) {
    const auto cols = elements_up_to(g, bound);
    detail::parallel_for(cols.size(), threads, [&](std::size_t i) { h.kl_column(cols[i]); });
    for (ElementId w : cols)
      for (ElementId y : g.lower_interval(w))
        rows.push_back({{"w", g.word_string(w)}, {"y", g.word_string(y)},
                        {"poly", h.kl_polynomial(y, w).to_string("q")}});
    return t;
  }
  const auto cols = g.twisted_involutions_up_to(bound.value_or(g.top_length()));
  detail::parallel_for(cols.size(), threads, [&](std::size_t i) { m.canonical(cols[i]); });
  for (ElementId w : cols) {
    if (kind == TableKind::bar) {
      std::vector<ElementId> ys;
      for (const auto& [y, f] : m.bar_basis(w)) ys.push_back(y);
      g.sort_by_length(ys);
      for (ElementId y : ys)
        rows.push_back({{"w", g.word_string(w)}, {"y", g.word_string(y)},
                        {"poly", m.bar_basis(w).coeff(y).to_string()}});
      continue;
    }
    for (ElementId y : g.lower_interval(w, true)) {
      if (kind == TableKind::skl) {
        rows.push_back({{"w", g.word_string(w)}, {"y", g.word_string(y)},
                        {"poly", m.sigma_polynomial(y, w).to_string("u")}});
      } else if (y != w) {
        const auto [mu1, mu2] = m.mu_primes(y, w);
        if (mu1 == 0 && mu2 == 0) continue;
        rows.push_back({{"w", g.word_string(w)}, {"y", g.word_string(y)},
                        {"mu_prime", mu1.str()}, {"mu_dprime", mu2.str()}});
      }
    }
  }
  return t;
}

/// CSV rendering of a table: header from the keys of the first row; arrays
/// are joined with ';'.
inline std::string table_to_csv(const json& table) {
  std::ostringstream out;
  const auto& rows = table.at("rows");
  if (rows.empty()) return "";
  auto cell = [](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const auto& e : v) s += (s.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
      return s;
    }
    return v.dump();
  };
  bool first = true;
  for (const auto& [k, v] : rows.front().items()) {
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [k, v] : row.items()) {
      out << (first ? "" : ",") << cell(v);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace twistkl
