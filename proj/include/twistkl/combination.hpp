#pragma once

#include <map>
#include <string>
#include <utility>

#include "twistkl/coxeter.hpp"
#include "twistkl/exactpoly.hpp"

namespace twistkl {

/// Finitely supported map ElementId -> LaurentPoly with no zero values.
/// The tag fixes which basis the ids refer to, so T-basis Hecke elements,
/// a-basis module elements and normalized coordinates cannot be mixed up.
template <class Tag>
class Combination {
 public:
  using Map = std::map<ElementId, LaurentPoly>;
  using const_iterator = typename Map::const_iterator;

  Combination() = default;

  static Combination basis(ElementId w, LaurentPoly coefficient = LaurentPoly(1)) {
    Combination c;
    c.add(w, coefficient);
    return c;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  LaurentPoly coeff(ElementId w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  /// Largest id in the support; the support must be nonempty.
  ElementId top() const { return terms_.rbegin()->first; }

  void add(ElementId w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void erase(ElementId w) { terms_.erase(w); }

  /// this += f * other
  void add_scaled(const Combination& other, const LaurentPoly& f) {
    if (f.is_zero()) return;
    for (const auto& [w, c] : other.terms_) add(w, c * f);
  }

  Combination scaled(const LaurentPoly& f) const {
    Combination r;
    if (f.is_zero()) return r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * f);
    return r;
  }

  /// Multiplication of every coefficient by v^k.
  Combination shifted(int k) const {
    Combination r = *this;
    for (auto& [w, c] : r.terms_) c = c.shifted(k);
    return r;
  }

  /// Coefficientwise v -> v^-1 (not the bar operator of any module).
  Combination conjugated() const {
    Combination r = *this;
    for (auto& [w, c] : r.terms_) c = twistkl::bar(c);
    return r;
  }

  friend Combination operator+(Combination a, const Combination& b) {
    for (const auto& [w, c] : b.terms_) a.add(w, c);
    return a;
  }
  friend Combination operator-(Combination a, const Combination& b) {
    for (const auto& [w, c] : b.terms_) a.add(w, -c);
    return a;
  }
  Combination operator-() const { return scaled(LaurentPoly(-1)); }
  Combination& operator+=(const Combination& b) {
    for (const auto& [w, c] : b.terms_) add(w, c);
    return *this;
  }
  Combination& operator-=(const Combination& b) {
    for (const auto& [w, c] : b.terms_) add(w, -c);
    return *this;
  }

  friend bool operator==(const Combination&, const Combination&) = default;

 private:
  Map terms_;
};

struct TBasisTag {};
struct ABasisTag {};
struct ModuleTag {};

/// Element of the Hecke algebra in the T-basis.
using HeckeElt = Combination<TBasisTag>;
/// Element of the module M in the basis {a_w : w twisted involution}.
using MElt = Combination<ModuleTag>;
/// Coordinates of a module element in the canonical basis {A_w}.
using ACoords = Combination<ABasisTag>;

/// Renders "coef*[w] + ..." using the group's ShortLex words; for
/// diagnostics and CLI output.
template <class Tag>
std::string to_string(const Combination<Tag>& c, const Group& g, const std::string& basis) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& [w, p] : c) {
    if (!out.empty()) out += " + ";
    out += "(" + p.to_string() + ")*" + basis + "_" + g.word_string(w);
  }
  return out;
}

}  // namespace twistkl
