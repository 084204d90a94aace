#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wordlab/freeword.hpp"
#include "wordlab/group.hpp"

namespace wordlab {

inline constexpr std::uint64_t kDefaultMemoryBudget = 100'000'000;

/// Mixed-radix indexing of G^d: coordinate 0 is most significant, the last
/// coordinate varies fastest.
class TupleSpace {
 public:
  /// Throws BudgetExceeded if n^d exceeds `limit`.
  TupleSpace(const GroupTable& group, std::uint32_t d, std::uint64_t limit);

  std::uint32_t d() const { return d_; }
  std::uint64_t size() const { return size_; }
  const GroupTable& group() const { return *group_; }

  void decode(std::uint64_t index, std::span<Elem> out) const;
  std::uint64_t encode(std::span<const Elem> coords) const;

  /// Coordinatewise product and inverse on indices.
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;

 private:
  const GroupTable* group_;
  std::uint32_t d_;
  std::uint64_t size_;
};

/// n^d, or throws BudgetExceeded when it exceeds `limit` (or overflows).
std::uint64_t checked_power(std::uint64_t n, std::uint32_t d, std::uint64_t limit, const char* what);

/// The value of the word map at one assignment. `assignment.size()` must be at
/// least w.arity(); surplus entries are ignored.
Elem evaluate(const Word& w, const GroupTable& g, std::span<const Elem> assignment);

/// The word map G^d -> G tabulated in TupleSpace index order.
struct WordMapTable {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  std::vector<Elem> values;
};

WordMapTable word_map_table(const Word& w, const GroupTable& g, std::uint32_t d,
                            std::uint64_t memory_budget = kDefaultMemoryBudget, unsigned workers = 1);

}  // namespace wordlab
