#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wordlab/rational.hpp"

namespace wordlab {

using Elem = std::uint32_t;

/// A permutation of {1..k}, stored 0-based: image[i] is the image of i+1, minus one.
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::uint64_t kDefaultOrderBudget = 2000;

/// A finite group given by its full multiplication table.
///
/// Element 0 is the identity. Instances are validated on construction and
/// immutable afterwards, so all queries are safe under concurrent access.
class GroupTable {
 public:
  /// Validates and takes ownership of a row-major n*n table. Throws
  /// std::invalid_argument if any group axiom fails.
  GroupTable(std::uint32_t order, std::vector<Elem> table, std::vector<std::string> labels);

  std::uint32_t order() const { return n_; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// Row a of the table: row(a)[b] == mul(a, b).
  std::span<const Elem> row(Elem a) const {
    return {mul_.data() + static_cast<std::size_t>(a) * n_, n_};
  }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Order of the element a (smallest k >= 1 with a^k = 1).
  std::uint32_t element_order(Elem a) const { return orders_[a]; }
  /// a^e for any integer e; exponents are reduced modulo the element order.
  Elem pow(Elem a, std::int64_t e) const;

  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

 private:
  void validate() const;

  std::uint32_t n_;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::string> labels_;
};

/// Breadth-first closure of permutations on a common domain {1..k}, k <= 12.
/// Element ids follow BFS discovery order (right multiplication by the
/// generators in the given order); 0 is the identity. With no generators the
/// result is the trivial group. Throws BudgetExceeded past `order_budget`.
GroupTable closure(std::span<const Permutation> generators, std::uint32_t degree,
                   std::uint64_t order_budget = kDefaultOrderBudget);

GroupTable cyclic(std::uint32_t n);
/// Dihedral group of order 2n (symmetries of the n-gon).
GroupTable dihedral(std::uint32_t n, std::uint64_t order_budget = kDefaultOrderBudget);
GroupTable symmetric(std::uint32_t n, std::uint64_t order_budget = kDefaultOrderBudget);
GroupTable alternating(std::uint32_t n, std::uint64_t order_budget = kDefaultOrderBudget);
GroupTable quaternion8();
/// (a, b) gets id a * |B| + b, so the identity stays at 0.
GroupTable direct_product(const GroupTable& a, const GroupTable& b,
                          std::uint64_t order_budget = kDefaultOrderBudget);

/// Builds a group from text: spec := atom ('x' atom)*, atom := Cn | Dn | Sn | An | Q8 |
/// perm:gen(,gen)* with gen a product of cycles "(a b c)(d e)" on 1..12.
/// Throws ParseError or BudgetExceeded.
GroupTable build_group(std::string_view spec, std::uint64_t order_budget = kDefaultOrderBudget);

/// Parses "(1 2 3)(4 5)" into a permutation on {1..degree}.
Permutation parse_permutation(std::string_view cycles, std::uint32_t degree);

/// |{h : hg = gh}|.
std::uint64_t centralizer_size(const GroupTable& g, Elem x);
/// |{(g,h) : gh = hg}| / n^2.
Rational commuting_probability(const GroupTable& g);
bool is_abelian(const GroupTable& g);
/// Number of orbits of G acting on itself by conjugation.
std::uint32_t conjugacy_class_count(const GroupTable& g);

}  // namespace wordlab
