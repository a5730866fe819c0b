#pragma once

/**
 * @file coxeter.hpp
 * @brief Frozen Coxeter group with a diagram involution.
 *
 * Elements are enumerated once, breadth first from the identity under right
 * multiplication, and interned as dense ids; the BFS depth of an element is
 * its length. Finite groups are enumerated completely. Infinite groups are
 * enumerated up to a length bound (a "ball"), which contains every Bruhat
 * interval below its elements, so interval-local computations work there.
 *
 * Canonical keys come from an exact faithful linear representation: Cartan
 * matrix realizations over Z[phi] (phi^2 = phi + 1) for every matrix whose
 * labels lie in {2, 3, 4, 5, 6, inf}, and a rotation/reflection model for the
 * dihedral groups I2(m) with other m.
 *
 * After construction every table is immutable apart from write-once memo
 * slots, so const queries may run concurrently.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistkl/coxeter_matrix.hpp"
#include "twistkl/detail/once_table.hpp"
#include "twistkl/errors.hpp"

namespace twistkl {

/// Handle of an element inside its owning Group. Ids are dense, assigned in
/// discovery order, and that order refines length. Id 0 is the identity.
struct ElementId {
  std::uint32_t value = 0;
  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

inline constexpr ElementId kIdentity{0};

enum class Side { left, right };

/// Position of a twisted involution z relative to a generator s.
/// "e": sz = zs*, "n": sz != zs*; prime: l(sz) > l(z), double prime: l(sz) < l(z).
enum class InvolutionCase { prime_e, dprime_e, prime_n, dprime_n };

inline bool is_e_case(InvolutionCase c) {
  return c == InvolutionCase::prime_e || c == InvolutionCase::dprime_e;
}
inline bool is_prime_case(InvolutionCase c) {
  return c == InvolutionCase::prime_e || c == InvolutionCase::prime_n;
}
inline std::string to_string(InvolutionCase c) {
  switch (c) {
    case InvolutionCase::prime_e: return "I'_e";
    case InvolutionCase::dprime_e: return "I''_e";
    case InvolutionCase::prime_n: return "I'_n";
    case InvolutionCase::dprime_n: return "I''_n";
  }
  return "?";
}

namespace detail {

/// a + b*phi with phi^2 = phi + 1; overflow is reported, never wrapped.
struct ZPhi {
  std::int64_t a = 0, b = 0;

  static std::int64_t add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw UnsupportedGroup("matrix entry overflow");
    return r;
  }
  static std::int64_t mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw UnsupportedGroup("matrix entry overflow");
    return r;
  }
  friend ZPhi operator+(ZPhi x, ZPhi y) { return {add(x.a, y.a), add(x.b, y.b)}; }
  friend ZPhi operator*(ZPhi x, ZPhi y) {
    const std::int64_t bd = mul(x.b, y.b);
    return {add(mul(x.a, y.a), bd), add(add(mul(x.a, y.b), mul(x.b, y.a)), bd)};
  }
  friend ZPhi operator-(ZPhi x) { return {-x.a, -x.b}; }
  friend bool operator==(ZPhi, ZPhi) = default;
};

using Key = std::vector<std::int64_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int64_t x : k) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Exact faithful representation used only to produce canonical keys.
class Realization {
 public:
  explicit Realization(const CoxeterMatrix& m) : n_(m.rank()) {
    if (n_ == 2 && m(0, 1) != kInfinity && m(0, 1) > 6) {
      dihedral_m_ = m(0, 1);
      return;
    }
    cartan_.assign(static_cast<std::size_t>(n_ * n_), ZPhi{});
    for (int s = 0; s < n_; ++s) {
      cartan_[s * n_ + s] = {2, 0};
      for (int t = s + 1; t < n_; ++t) {
        ZPhi st{}, ts{};
        switch (m(s, t)) {
          case 2: break;
          case 3: st = ts = {-1, 0}; break;
          case 4: st = {-1, 0}; ts = {-2, 0}; break;
          case 5: st = ts = {0, -1}; break;
          case 6: st = {-1, 0}; ts = {-3, 0}; break;
          case kInfinity: st = ts = {-2, 0}; break;
          default:
            throw UnsupportedGroup("label m = " + std::to_string(m(s, t)) +
                                   " is only supported in rank 2");
        }
        cartan_[s * n_ + t] = st;
        cartan_[t * n_ + s] = ts;
      }
    }
    check_orders(m);
  }

  Key identity() const {
    if (dihedral_m_) return {0, 0};
    Key k(static_cast<std::size_t>(2 * n_ * n_), 0);
    for (int i = 0; i < n_; ++i) k[2 * (i * n_ + i)] = 1;
    return k;
  }

  // Dihedral keys are (k, f) for r^k s1^f with r = s1 s2, s2 = s1 r.
  Key mul_right(const Key& key, int s) const {
    if (dihedral_m_) {
      const std::int64_t m = dihedral_m_, k = key[0], f = key[1];
      if (s == 0) return {k, 1 - f};
      return f == 0 ? Key{((k - 1) % m + m) % m, 1} : Key{(k + 1) % m, 0};
    }
    // Column update: M' = M * S_s, column u gains -a_{s u} * column s.
    Key out = key;
    for (int u = 0; u < n_; ++u) {
      const ZPhi c = cartan_[s * n_ + u];
      if (u == s || (c.a == 0 && c.b == 0)) continue;
      for (int i = 0; i < n_; ++i) set(out, i, u, at(key, i, u) + (-c) * at(key, i, s));
    }
    for (int i = 0; i < n_; ++i) set(out, i, s, -at(key, i, s));
    return out;
  }

  Key mul_left(int s, const Key& key) const {
    if (dihedral_m_) {
      const std::int64_t m = dihedral_m_, k = key[0], f = key[1];
      if (s == 0) return {(m - k) % m, 1 - f};
      return {((-(k + 1)) % m + m) % m, 1 - f};
    }
    // Row update: only row s of S_s differs from the identity.
    Key out = key;
    for (int j = 0; j < n_; ++j) {
      ZPhi acc{};
      for (int u = 0; u < n_; ++u) {
        const ZPhi c = (u == s) ? ZPhi{-1, 0} : -cartan_[s * n_ + u];
        if (c.a == 0 && c.b == 0) continue;
        acc = acc + c * at(key, u, j);
      }
      set(out, s, j, acc);
    }
    return out;
  }

 private:
  ZPhi at(const Key& k, int i, int j) const {
    const std::size_t p = static_cast<std::size_t>(2 * (i * n_ + j));
    return {k[p], k[p + 1]};
  }
  void set(Key& k, int i, int j, ZPhi v) const {
    const std::size_t p = static_cast<std::size_t>(2 * (i * n_ + j));
    k[p] = v.a;
    k[p + 1] = v.b;
  }

  void check_orders(const CoxeterMatrix& m) const {
    for (int s = 0; s < n_; ++s)
      for (int t = s + 1; t < n_; ++t) {
        if (m(s, t) == kInfinity) continue;
        Key k = identity();
        for (int i = 1; i <= m(s, t); ++i) {
          k = mul_right(mul_right(k, s), t);
          if ((k == identity()) != (i == m(s, t)))
            throw InvalidMatrix("realization does not have the requested orders");
        }
      }
  }

  int n_;
  int dihedral_m_ = 0;
  std::vector<ZPhi> cartan_;
};

}  // namespace detail

struct GroupOptions {
  /// Enumerate only elements of length <= max_length. Required for infinite
  /// groups; for finite ones a bound below the top length gives a ball too.
  std::optional<int> max_length;
  /// Safety cap on the number of enumerated elements.
  std::size_t max_elements = 4'000'000;
};

class Group {
 public:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  Group(CoxeterMatrix matrix, StarMap star, GroupOptions options = {})
      : matrix_(std::move(matrix)), star_(std::move(star)) {
    star_.validate(matrix_);
    finite_type_ = recognize_finite_type(matrix_);
    if (!finite_type_ && !options.max_length)
      throw UnsupportedGroup("infinite Coxeter group requires a length bound");
    if (options.max_length && *options.max_length < 0)
      throw InputError("length bound must be nonnegative");
    enumerate(options);
    build_tables();
    bruhat_rows_ = detail::OnceTable<std::vector<std::uint64_t>>(size());
  }

  Group(const Group&) = delete;
  Group& operator=(const Group&) = delete;
  Group(Group&&) = default;

  const CoxeterMatrix& matrix() const { return matrix_; }
  const StarMap& star_map() const { return star_; }
  int rank() const { return matrix_.rank(); }
  std::size_t size() const { return length_.size(); }
  /// Recognized finite type name, or nullopt for infinite groups.
  const std::optional<std::string>& finite_type() const { return finite_type_; }
  /// True when every element of W was enumerated (W finite, no truncation).
  bool is_complete() const { return complete_; }
  /// Largest length present in the enumeration.
  int top_length() const { return length_.empty() ? 0 : length_.back(); }

  ElementId id(std::size_t i) const { return ElementId{static_cast<std::uint32_t>(i)}; }
  std::vector<ElementId> elements() const {
    std::vector<ElementId> r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = id(i);
    return r;
  }

  int length(ElementId w) const { return length_[w.value]; }
  int parity(ElementId w) const { return length(w) % 2 == 0 ? 1 : -1; }

  /// Raw product with a generator; kNone when it leaves the enumeration.
  std::uint32_t mult_raw(int s, ElementId w, Side side) const {
    const std::size_t k = static_cast<std::size_t>(w.value) * rank() + s;
    return side == Side::left ? left_[k] : right_[k];
  }

  /// sw (left) or ws (right). Throws UnsupportedGroup outside the ball.
  ElementId mult_gen(int s, ElementId w, Side side) const {
    const std::uint32_t r = mult_raw(s, w, side);
    if (r == kNone)
      throw UnsupportedGroup("product leaves the enumerated part of the group");
    return ElementId{r};
  }

  bool is_descent(int s, ElementId w, Side side) const {
    return ((side == Side::left ? ldesc_ : rdesc_)[w.value] >> s) & 1u;
  }
  std::uint64_t descent_mask(ElementId w, Side side) const {
    return (side == Side::left ? ldesc_ : rdesc_)[w.value];
  }
  std::vector<int> descents(ElementId w, Side side) const {
    std::vector<int> r;
    for (int s = 0; s < rank(); ++s)
      if (is_descent(s, w, side)) r.push_back(s);
    return r;
  }

  ElementId inverse(ElementId w) const { return ElementId{inverse_[w.value]}; }
  ElementId star(ElementId w) const { return ElementId{star_elem_[w.value]}; }
  ElementId star_inverse(ElementId w) const { return inverse(star(w)); }

  bool is_twisted_involution(ElementId w) const { return inverse(w) == star(w); }

  /// ShortLex-minimal reduced word (generator indices from 0).
  std::vector<int> word(ElementId w) const {
    std::vector<int> r;
    while (w != kIdentity) {
      const int s = std::countr_zero(ldesc_[w.value]);
      r.push_back(s);
      w = ElementId{left_[static_cast<std::size_t>(w.value) * rank() + s]};
    }
    return r;
  }

  /// "1" for the identity, otherwise e.g. "s1s2s1" (1-based generators).
  std::string word_string(ElementId w) const {
    if (w == kIdentity) return "1";
    std::string r;
    for (int s : word(w)) r += "s" + std::to_string(s + 1);
    return r;
  }

  /// Product of generators, left to right. Throws outside the ball.
  ElementId from_word(const std::vector<int>& letters) const {
    ElementId w = kIdentity;
    for (int s : letters) {
      if (s < 0 || s >= rank()) throw InputError("generator index out of range");
      w = mult_gen(s, w, Side::right);
    }
    return w;
  }

  ElementId longest_element() const {
    require_complete("longest_element");
    return id(size() - 1);
  }

  bool bruhat_leq(ElementId y, ElementId w) const {
    if (length(y) > length(w)) return false;
    if (length(y) == length(w)) return y == w;
    const auto& row = bruhat_row(w);
    return (row[y.value / 64] >> (y.value % 64)) & 1u;
  }

  /// All y <= w (optionally only twisted involutions), by (length, id).
  std::vector<ElementId> lower_interval(ElementId w, bool twisted_only = false) const {
    const auto& row = bruhat_row(w);
    std::vector<ElementId> r;
    for (std::size_t i = 0; i <= w.value; ++i)
      if ((row[i / 64] >> (i % 64)) & 1u) {
        const ElementId y = id(i);
        if (!twisted_only || is_twisted_involution(y)) r.push_back(y);
      }
    sort_by_length(r);
    return r;
  }

  /// Twisted involutions of length <= bound, found by breadth-first search
  /// from the identity under the moves z -> sz (sz = zs*) and z -> szs*.
  std::vector<ElementId> twisted_involutions_up_to(int bound) const {
    if (bound < 0) return {};
    if (!complete_ && bound > top_length())
      throw UnsupportedGroup("length bound exceeds the enumerated ball");
    std::vector<char> seen(size(), 0);
    std::vector<ElementId> out{kIdentity};
    seen[0] = 1;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const ElementId z = out[i];
      for (int s = 0; s < rank(); ++s) {
        const std::uint32_t sz = mult_raw(s, z, Side::left);
        if (sz == kNone) continue;
        const std::uint32_t szs = mult_raw(star_(s), ElementId{sz}, Side::right);
        const std::uint32_t zs = mult_raw(star_(s), z, Side::right);
        const std::uint32_t next = (sz == zs) ? sz : szs;
        if (next == kNone || seen[next] || length_[next] > bound) continue;
        seen[next] = 1;
        out.push_back(ElementId{next});
      }
    }
    sort_by_length(out);
    return out;
  }

  /// Every enumerated twisted involution, by (length, id).
  const std::vector<ElementId>& twisted_involutions() const { return twisted_; }

  InvolutionCase classify_case(int s, ElementId z) const {
    if (!is_twisted_involution(z))
      throw NotTwistedInvolution("element " + word_string(z) + " is not a twisted involution");
    const std::uint32_t sz = mult_raw(s, z, Side::left);
    const std::uint32_t zs = mult_raw(star_(s), z, Side::right);
    if (sz == kNone || zs == kNone)
      throw UnsupportedGroup("case of " + word_string(z) + " depends on elements outside the ball");
    const bool e = sz == zs;
    const bool prime = length_[sz] > length(z);
    if (e) return prime ? InvolutionCase::prime_e : InvolutionCase::dprime_e;
    return prime ? InvolutionCase::prime_n : InvolutionCase::dprime_n;
  }

  /// sz in the e-case, szs* in the n-case.
  ElementId tilde(int s, ElementId z) const {
    const InvolutionCase c = classify_case(s, z);
    const ElementId sz = mult_gen(s, z, Side::left);
    return is_e_case(c) ? sz : mult_gen(star_(s), sz, Side::right);
  }

  /// z if l(sz) > l(z), otherwise tilde(z).
  ElementId hat(int s, ElementId z) const {
    return is_prime_case(classify_case(s, z)) ? z : tilde(s, z);
  }

  void require_complete(const std::string& what) const {
    if (!complete_)
      throw UnsupportedGroup(what + " requires a finite, completely enumerated group");
  }

  void sort_by_length(std::vector<ElementId>& v) const {
    std::sort(v.begin(), v.end(), [&](ElementId a, ElementId b) {
      return std::pair(length(a), a.value) < std::pair(length(b), b.value);
    });
  }

 private:
  void enumerate(const GroupOptions& options) {
    const detail::Realization real(matrix_);
    const int n = rank();
    std::vector<detail::Key> keys{real.identity()};
    std::unordered_map<detail::Key, std::uint32_t, detail::KeyHash> index{{keys[0], 0}};
    length_.push_back(0);
    parent_.push_back({kNone, -1});
    complete_ = true;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const int len = length_[i];
      for (int s = 0; s < n; ++s) {
        detail::Key k = real.mul_right(keys[i], s);
        if (index.count(k)) continue;
        if (options.max_length && len + 1 > *options.max_length) {
          complete_ = false;
          continue;
        }
        if (keys.size() >= options.max_elements)
          throw UnsupportedGroup("group has more than " + std::to_string(options.max_elements) +
                                 " elements in the requested range");
        index.emplace(k, static_cast<std::uint32_t>(keys.size()));
        keys.push_back(std::move(k));
        length_.push_back(len + 1);
        parent_.push_back({static_cast<std::uint32_t>(i), s});
      }
    }
    // A finite group enumerated up to its top length is complete even if a
    // bound was given; an infinite one never is.
    if (!finite_type_) complete_ = false;
    const std::size_t total = keys.size();
    right_.assign(total * n, kNone);
    left_.assign(total * n, kNone);
    for (std::size_t i = 0; i < total; ++i)
      for (int s = 0; s < n; ++s) {
        auto r = index.find(real.mul_right(keys[i], s));
        if (r != index.end()) right_[i * n + s] = r->second;
        auto l = index.find(real.mul_left(s, keys[i]));
        if (l != index.end()) left_[i * n + s] = l->second;
      }
  }

  void build_tables() {
    const std::size_t total = length_.size();
    const int n = rank();
    ldesc_.assign(total, 0);
    rdesc_.assign(total, 0);
    for (std::size_t i = 0; i < total; ++i)
      for (int s = 0; s < n; ++s) {
        const std::uint32_t l = left_[i * n + s], r = right_[i * n + s];
        if (l != kNone && length_[l] < length_[i]) ldesc_[i] |= std::uint64_t{1} << s;
        if (r != kNone && length_[r] < length_[i]) rdesc_[i] |= std::uint64_t{1} << s;
      }
    inverse_.assign(total, kNone);
    star_elem_.assign(total, kNone);
    inverse_[0] = star_elem_[0] = 0;
    for (std::size_t i = 1; i < total; ++i) {
      const auto [p, s] = parent_[i];  // w = p * s
      inverse_[i] = left_[static_cast<std::size_t>(inverse_[p]) * n + s];
      star_elem_[i] = right_[static_cast<std::size_t>(star_elem_[p]) * n + star_(s)];
    }
    for (std::size_t i = 0; i < total; ++i)
      if (inverse_[i] == star_elem_[i]) twisted_.push_back(id(i));
  }

  const std::vector<std::uint64_t>& bruhat_row(ElementId w) const {
    // [1, w] = [1, sw] union s[1, sw] for any left descent s of w.
    return bruhat_rows_.get(w.value, [&] {
      std::vector<std::uint64_t> row((size() + 63) / 64, 0);
      if (w == kIdentity) {
        row[0] = 1;
        return row;
      }
      const int s = std::countr_zero(ldesc_[w.value]);
      const ElementId sw = ElementId{left_[static_cast<std::size_t>(w.value) * rank() + s]};
      row = bruhat_row(sw);
      const auto& base = bruhat_row(sw);
      for (std::size_t i = 0; i <= sw.value; ++i)
        if ((base[i / 64] >> (i % 64)) & 1u) {
          const std::uint32_t j = left_[i * rank() + s];
          row[j / 64] |= std::uint64_t{1} << (j % 64);
        }
      return row;
    });
  }

  CoxeterMatrix matrix_;
  StarMap star_;
  std::optional<std::string> finite_type_;
  bool complete_ = false;
  std::vector<int> length_;
  std::vector<std::pair<std::uint32_t, int>> parent_;
  std::vector<std::uint32_t> right_, left_;
  std::vector<std::uint64_t> ldesc_, rdesc_;
  std::vector<std::uint32_t> inverse_, star_elem_;
  std::vector<ElementId> twisted_;
  detail::OnceTable<std::vector<std::uint64_t>> bruhat_rows_;
};

/// Validates the inputs and enumerates the group.
inline Group build_group(const CoxeterMatrix& matrix, const StarMap& star,
                         GroupOptions options = {}) {
  return Group(matrix, star, options);
}

}  // namespace twistkl
