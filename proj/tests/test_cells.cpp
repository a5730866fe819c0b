#include <gtest/gtest.h>

#include "oracles.hpp"
#include "twistkl/cells.hpp"
#include "twistkl/verify.hpp"

using namespace twistkl;

namespace {

Group make(const std::string& type, std::vector<int> star = {}) {
  CoxeterMatrix m = parse_named_type(type);
  StarMap s = star.empty() ? StarMap::identity(m.rank()) : StarMap::from_one_based(star);
  return Group(std::move(m), std::move(s));
}

std::vector<std::size_t> sizes(const std::vector<std::vector<ElementId>>& cells) {
  std::vector<std::size_t> r;
  for (const auto& c : cells) r.push_back(c.size());
  std::sort(r.begin(), r.end());
  return r;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

struct Setting {
  std::string type;
  std::vector<int> star;
};

}  // namespace

TEST(Cells, A1) {
  const Group g = make("A1");
  const Hecke h(g);
  const CellDecomposition cells(h);
  EXPECT_EQ(cells.cells().size(), 2u);
  EXPECT_EQ(cells.cell_of(kIdentity), 0);
  EXPECT_EQ(cells.a_value(kIdentity), 0);
  EXPECT_EQ(cells.a_value(g.from_word({0})), 1);
  EXPECT_TRUE(cells.lr_leq(g.from_word({0}), kIdentity));
  EXPECT_FALSE(cells.lr_leq(kIdentity, g.from_word({0})));
}

TEST(Cells, A2) {
  const Group g = make("A2");
  const Hecke h(g);
  const CellDecomposition cells(h);
  EXPECT_EQ(sizes(cells.cells()), (std::vector<std::size_t>{1, 1, 4}));
  EXPECT_EQ(cells.left_cells().size(), 4u);
  EXPECT_EQ(cells.a_value(kIdentity), 0);
  EXPECT_EQ(cells.a_value(g.from_word({0, 1})), 1);
  EXPECT_EQ(cells.a_value(g.longest_element()), 3);
  EXPECT_TRUE(cells.left_leq(g.from_word({1, 0}), g.from_word({0})));
  EXPECT_FALSE(cells.left_leq(g.from_word({0, 1}), g.from_word({0})));
  EXPECT_TRUE(cells.right_leq(g.from_word({0, 1}), g.from_word({0})));
  EXPECT_FALSE(cells.a_function_failure().has_value());
}

TEST(Cells, AgreeWithWGraphOracle) {
  for (std::string type : {"A2", "B2", "G2", "A3", "B3"}) {
    const Group g = make(type);
    const Hecke h(g);
    const CellDecomposition cells(h);
    const oracle::ClassicalKL kl(g);
    std::vector<int> ours(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) ours[i] = cells.cell_of(g.id(i));
    EXPECT_TRUE(same_partition(ours, oracle::wgraph_two_sided_cells(g, kl))) << type;
  }
  const Group a3 = make("A3");
  const Hecke h(a3);
  EXPECT_EQ(sizes(CellDecomposition(h).cells()), (std::vector<std::size_t>{1, 1, 4, 9, 9}));
}

// Generating the preorders from the c_s alone gives the same relations as
// using every c_x.
TEST(Cells, GeneratorStepsSuffice) {
  for (std::string type : {"A2", "B2", "A3"}) {
    const Group g = make(type);
    const Hecke h(g);
    const CellDecomposition cells(h);
    const std::size_t n = g.size();
    detail::Preorder left(n), lr(n);
    for (ElementId x : g.elements())
      for (ElementId y : g.elements())
        for (const auto& [z, f] : h.h_const(x, y)) {
          left.set(z.value, y.value);
          lr.set(z.value, y.value);
          lr.set(z.value, x.value);
        }
    left.close();
    lr.close();
    for (ElementId x : g.elements())
      for (ElementId y : g.elements()) {
        EXPECT_EQ(cells.left_leq(x, y), left.test(x.value, y.value)) << type;
        EXPECT_EQ(cells.lr_leq(x, y), lr.test(x.value, y.value)) << type;
      }
  }
}

TEST(Cells, AFunction) {
  for (std::string type : {"A3", "B3", "H3"}) {
    const Group g = make(type);
    const Hecke h(g);
    const CellDecomposition cells(h);
    EXPECT_FALSE(cells.a_function_failure().has_value()) << type;
    EXPECT_EQ(cells.a_value(g.longest_element()), g.length(g.longest_element()));
    for (int s = 0; s < g.rank(); ++s) EXPECT_EQ(cells.a_value(g.from_word({s})), 1);
  }
}

TEST(Cells, CellModuleA1) {
  const Group g = make("A1");
  const Hecke h(g);
  const InvolutionModule m(h);
  const CellDecomposition cells(h);
  const CellModule top = cell_module(cells, m, cells.cell_of(g.from_word({0})));
  ASSERT_EQ(top.basis.size(), 1u);
  // c_s acts on A_s by u + u^-1.
  EXPECT_EQ(top.action[0](0, 0), LaurentPoly({{-2, 1}, {2, 1}}));
  const CellModule bottom = cell_module(cells, m, 0);
  EXPECT_EQ(bottom.action[0](0, 0), LaurentPoly());
  EXPECT_FALSE(hecke_relation_failure(g.matrix(), cell_t_matrices(top)).has_value());
  EXPECT_FALSE(hecke_relation_failure(g.matrix(), cell_t_matrices(bottom)).has_value());
}

TEST(Cells, CellModulesSatisfyRelations) {
  for (const auto& [type, star] :
       std::vector<Setting>{{"A2", {}}, {"A2", {2, 1}}, {"B2", {}}, {"B2", {2, 1}}, {"A3", {3, 2, 1}}}) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    const CellDecomposition cells(h);
    for (int c = 0; c < static_cast<int>(cells.cells().size()); ++c) {
      const CellModule cm = cell_module(cells, m, c);
      EXPECT_FALSE(hecke_relation_failure(g.matrix(), cell_t_matrices(cm)).has_value()) << type;
    }
  }
}

TEST(Cells, CellActionAndParity) {
  for (const auto& [type, star] : std::vector<Setting>{{"A1", {}},
                                                       {"A1xA1", {2, 1}},
                                                       {"A2", {}},
                                                       {"A2", {2, 1}},
                                                       {"B2", {}},
                                                       {"B2", {2, 1}},
                                                       {"G2", {}},
                                                       {"A3", {}},
                                                       {"A3", {3, 2, 1}},
                                                       {"B3", {}}}) {
    const Group g = make(type, star);
    const Hecke h(g);
    const InvolutionModule m(h);
    const CellDecomposition cells(h);
    const Report action = verify_cell_action(cells, m);
    EXPECT_TRUE(action.passed) << action.to_json(g).dump();
    const Report rp = verify_parity(cells, m);
    EXPECT_TRUE(rp.passed) << rp.to_json(g).dump();
  }
}

TEST(Cells, ClosedFormMatchesExpansion) {
  const Group g = make("B2", {2, 1});
  const Hecke h(g);
  const InvolutionModule m(h);
  const CellDecomposition cells(h);
  for (ElementId w : g.twisted_involutions()) {
    const int c = cells.cell_of(w);
    const CellModule cm = cell_module(cells, m, c);
    const auto j = static_cast<std::size_t>(cm.index_of(w));
    for (int s = 0; s < g.rank(); ++s) {
      if (g.is_descent(s, w, Side::left)) continue;
      const ACoords lhs = cm.column(s, j);
      const ACoords rhs = cell_action_closed_form(cells, m, c, s, w);
      EXPECT_EQ(lhs, rhs) << g.word_string(w) << " s" << s + 1;
    }
  }
}

TEST(Cells, InfiniteGroupRejected) {
  GroupOptions opt;
  opt.max_length = 3;
  const Group g(parse_named_type("A2~"), StarMap::identity(3), opt);
  const Hecke h(g);
  EXPECT_THROW(CellDecomposition{h}, UnsupportedGroup);
}
