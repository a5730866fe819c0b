#include <random>

#include <gtest/gtest.h>

#include "linear_oracle.hpp"
#include "twistkl/invmod.hpp"
#include "twistkl/verify.hpp"

using namespace twistkl;

namespace {

Group make(const std::string& type, std::vector<int> star = {}, std::optional<int> bound = {}) {
  CoxeterMatrix m = parse_named_type(type);
  StarMap s = star.empty() ? StarMap::identity(m.rank()) : StarMap::from_one_based(star);
  GroupOptions opt;
  opt.max_length = bound;
  return Group(std::move(m), std::move(s), opt);
}

LaurentPoly v(int k) { return LaurentPoly::v_power(k); }

MElt elt(std::initializer_list<std::pair<ElementId, LaurentPoly>> terms) {
  MElt m;
  for (const auto& [w, f] : terms) m.add(w, f);
  return m;
}

struct Setting {
  std::string type;
  std::vector<int> star;
};

const std::vector<Setting> kGroups = {{"A1", {}},     {"A2", {}},       {"A2", {2, 1}},
                                      {"B2", {}},     {"B2", {2, 1}},   {"A3", {}},
                                      {"A3", {3, 2, 1}}, {"B3", {}},    {"H3", {}},
                                      {"A1xA1", {2, 1}}, {"G2", {2, 1}}};

}  // namespace

TEST(InvMod, ActionCasesA1) {
  const Group g = make("A1");
  const Hecke h(g);
  const InvolutionModule m(h);
  const ElementId s = g.from_word({0});
  const LaurentPoly u = v(2);
  EXPECT_EQ(m.act_Ts1(0, MElt::basis(kIdentity)), elt({{kIdentity, u + 1}, {s, u + 1}}));
  EXPECT_EQ(m.act_Ts1(0, MElt::basis(s)), elt({{kIdentity, u * u - u}, {s, u * u - u}}));
  HeckeElt cs = h.c_basis(s);
  EXPECT_EQ(m.act_hecke(cs, MElt::basis(kIdentity)),
            elt({{kIdentity, 1 + v(-2)}, {s, 1 + v(-2)}}));
  EXPECT_EQ(m.act_hecke(HeckeElt::basis(kIdentity, u), MElt::basis(s)), MElt::basis(s, v(2)));
}

TEST(InvMod, ActionCasesSwap) {
  const Group g = make("A1xA1", {2, 1});
  const Hecke h(g);
  const InvolutionModule m(h);
  const ElementId w = g.from_word({0, 1});
  EXPECT_EQ(m.act_Ts1(0, MElt::basis(kIdentity)), elt({{kIdentity, 1}, {w, 1}}));
  EXPECT_EQ(m.act_Ts1(0, MElt::basis(w)), elt({{kIdentity, v(4)}, {w, v(4)}}));
}

TEST(InvMod, BarGoldenValues) {
  const Group g = make("A1");
  const Hecke h(g);
  const InvolutionModule m(h);
  const ElementId s = g.from_word({0});
  EXPECT_EQ(m.bar_basis(kIdentity), MElt::basis(kIdentity));
  EXPECT_EQ(m.bar_basis(s), elt({{kIdentity, v(-2) - 1}, {s, v(-2)}}));

  const Group g2 = make("A1xA1", {2, 1});
  const Hecke h2(g2);
  const InvolutionModule m2(h2);
  const ElementId w = g2.from_word({0, 1});
  EXPECT_EQ(m2.bar_basis(w), elt({{kIdentity, v(-4) - 1}, {w, v(-4)}}));
}

TEST(InvMod, CanonicalGoldenValues) {
  const Group g = make("A1");
  const Hecke h(g);
  const InvolutionModule m(h);
  const ElementId s = g.from_word({0});
  EXPECT_EQ(m.canonical(kIdentity), MElt::basis(kIdentity));
  EXPECT_EQ(m.canonical(s), elt({{kIdentity, v(-1)}, {s, v(-1)}}));
  EXPECT_EQ(m.sigma_polynomial(kIdentity, s), IntPoly{1});
  EXPECT_EQ(m.mu_primes(kIdentity, s), std::make_pair(BigInt(1), BigInt(0)));
  EXPECT_EQ(m.mu_primes(s, s), std::make_pair(BigInt(0), BigInt(0)));
  EXPECT_EQ(m.expand_in_A(elt({{kIdentity, 1}, {s, 1}})), ACoords::basis(s, v(1)));

  const Group g2 = make("A1xA1", {2, 1});
  const Hecke h2(g2);
  const InvolutionModule m2(h2);
  const ElementId w = g2.from_word({0, 1});
  EXPECT_EQ(m2.canonical(w), elt({{kIdentity, v(-2)}, {w, v(-2)}}));
  EXPECT_EQ(m2.sigma_polynomial(kIdentity, w), IntPoly{1});
  EXPECT_EQ(m2.mu_primes(kIdentity, w), std::make_pair(BigInt(0), BigInt(1)));
}

TEST(InvMod, BarIsInvolutiveAndDescentIndependent) {
  for (const auto& [type, star] : kGroups) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    for (ElementId w : g.twisted_involutions()) {
      EXPECT_EQ(m.bar(m.bar_basis(w)), MElt::basis(w)) << type;
      EXPECT_EQ(m.bar_basis(w).coeff(w), v(-2 * g.length(w))) << type;
      for (const auto& [y, f] : m.bar_basis(w)) EXPECT_TRUE(g.bruhat_leq(y, w));
      for (int s : g.descents(w, Side::left)) EXPECT_EQ(m.bar_basis_via(w, s), m.bar_basis(w));
    }
  }
}

// bar is determined by bar(a_1) = a_1, semilinearity and commuting with
// every c_s; check the last property directly.
TEST(InvMod, BarCommutesWithCs) {
  for (const auto& [type, star] : kGroups) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    for (ElementId w : g.twisted_involutions())
      for (int s = 0; s < g.rank(); ++s)
        ASSERT_EQ(m.bar(m.act_c(s, MElt::basis(w))), m.act_c(s, m.bar_basis(w)))
            << type << " " << g.word_string(w);
  }
}

TEST(InvMod, BarIsSemilinear) {
  const Group g = make("B3");
  const Hecke h(g);
  const InvolutionModule m(h);
  std::mt19937 rng(5);
  const auto& inv = g.twisted_involutions();
  std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);
  std::uniform_int_distribution<int> e(-4, 4), c(-3, 3);
  for (int i = 0; i < 40; ++i) {
    MElt x;
    for (int k = 0; k < 3; ++k) x.add(inv[pick(rng)], LaurentPoly({{e(rng), c(rng)}}));
    const LaurentPoly p{{e(rng), c(rng)}, {e(rng), c(rng)}};
    EXPECT_EQ(m.bar(x.scaled(p)), m.bar(x).scaled(bar(p)));
    EXPECT_EQ(m.bar(m.bar(x)), x);
  }
}

TEST(InvMod, CanonicalBasisProperties) {
  for (const auto& [type, star] : kGroups) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    m.compute_columns(1);
    for (ElementId w : g.twisted_involutions()) {
      EXPECT_EQ(m.bar(m.canonical(w)), m.canonical(w));
      const ModuleNormalized& col = m.a_column(w);
      EXPECT_EQ(col.coeff(w), LaurentPoly(1));
      for (const auto& [y, f] : col) {
        if (y == w) continue;
        EXPECT_LT(f.max_degree(), 0);
        const IntPoly p = m.sigma_polynomial(y, w);
        EXPECT_LE(2 * p.degree(), g.length(w) - g.length(y) - 1);
      }
      EXPECT_EQ(m.sigma_polynomial(w, w), IntPoly{1});
      EXPECT_EQ(m.expand_in_A(m.canonical(w)), ACoords::basis(w));
    }
  }
}

TEST(InvMod, ExpandRoundTrip) {
  const Group g = make("A3", {3, 2, 1});
  const Hecke h(g);
  const InvolutionModule m(h);
  std::mt19937 rng(9);
  const auto& inv = g.twisted_involutions();
  std::uniform_int_distribution<std::size_t> pick(0, inv.size() - 1);
  std::uniform_int_distribution<int> e(-4, 4), c(-3, 3);
  for (int i = 0; i < 50; ++i) {
    MElt x;
    for (int k = 0; k < 4; ++k) x.add(inv[pick(rng)], LaurentPoly({{e(rng), c(rng)}}));
    EXPECT_EQ(m.assemble(m.expand_in_A(x)), x);
  }
}

TEST(InvMod, AgreesWithLinearSolver) {
  for (const auto& [type, star] : std::vector<Setting>{
           {"A3", {}}, {"A3", {3, 2, 1}}, {"B2", {}}, {"B2", {2, 1}}}) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    auto bar = [&](const oracle::Vec& x) {
      MElt e;
      for (const auto& [w, f] : x) e.add(w, f);
      const MElt b = m.bar(e);
      return oracle::Vec(b.terms().begin(), b.terms().end());
    };
    for (ElementId w : g.twisted_involutions()) {
      const auto col = oracle::sigma_column(g, w, bar);
      for (ElementId y : g.twisted_involutions()) {
        if (g.length(y) >= g.length(w) && y != w) continue;
        auto it = col.find(y);
        const IntPoly expected = it == col.end() ? IntPoly() : IntPoly(it->second);
        ASSERT_EQ(m.sigma_polynomial(y, w), expected)
            << type << " " << g.word_string(y) << " " << g.word_string(w);
      }
    }
  }
}

TEST(InvMod, InfiniteGroupColumns) {
  const Group g = make("A2~", {}, 8);
  const Hecke h(g);
  const InvolutionModule m(h);
  for (ElementId w : g.twisted_involutions_up_to(6)) {
    EXPECT_EQ(m.bar(m.canonical(w)), m.canonical(w));
    for (ElementId y : g.lower_interval(w, true)) EXPECT_NO_THROW(positivity_pointwise(m, y, w));
  }
}

TEST(InvMod, PointwisePositivity) {
  const Group a1 = make("A1");
  const Hecke h1(a1);
  const InvolutionModule m1(h1);
  const ElementId s = a1.from_word({0});
  EXPECT_EQ(positivity_pointwise(m1, kIdentity, s), std::make_pair(IntPoly{1}, IntPoly()));
  EXPECT_EQ(positivity_pointwise(m1, s, s), std::make_pair(IntPoly{1}, IntPoly()));
  for (const auto& [type, star] : kGroups) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    const Report r = verify_positivity_pointwise(m);
    EXPECT_TRUE(r.passed) << r.to_json(g).dump();
  }
}

TEST(InvMod, ModuleRelations) {
  for (const auto& [type, star] : kGroups) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    const Report r = verify_module_relations(m);
    EXPECT_TRUE(r.passed) << r.to_json(g).dump();
  }
}

TEST(InvMod, BConstants) {
  const Group g = make("A1");
  const Hecke h(g);
  const InvolutionModule m(h);
  const ElementId s = g.from_word({0});
  EXPECT_EQ(m.b_const(kIdentity, s), ACoords::basis(s));
  EXPECT_EQ(m.b_const(s, s), ACoords::basis(s, v(2) + v(-2)));
  EXPECT_EQ(m.b_const(s, kIdentity), ACoords::basis(s, v(1) + v(-1)));
}

TEST(InvMod, ModulePositivity) {
  for (const auto& [type, star] : std::vector<Setting>{
           {"A1", {}}, {"A2", {}}, {"A2", {2, 1}}, {"B2", {}}, {"B2", {2, 1}}, {"A1xA1", {2, 1}}}) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    const Report r = verify_positivity_module(m);
    EXPECT_TRUE(r.passed) << r.to_json(g).dump();
  }
  const Group a1 = make("A1");
  const Hecke h(a1);
  const InvolutionModule m(h);
  const ElementId s = a1.from_word({0});
  const auto [plus, minus] = positivity_module(m, s, s, s);
  EXPECT_EQ(plus, LaurentPoly({{-4, 1}, {0, 1}, {4, 1}}));
  EXPECT_EQ(minus, LaurentPoly(1));
}

TEST(InvMod, MsCoefficient) {
  const Group g = make("A1xA1", {2, 1});
  const Hecke h(g);
  const InvolutionModule m(h);
  EXPECT_THROW(m.m_s_coefficient(0, kIdentity, g.from_word({0, 1})), PreconditionViolated);
}
