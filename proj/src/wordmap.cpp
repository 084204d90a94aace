#include "wordlab/wordmap.hpp"

#include <stdexcept>
#include <string>

#include "wordlab/errors.hpp"
#include "wordlab/parallel.hpp"

namespace wordlab {

std::uint64_t checked_power(std::uint64_t n, std::uint32_t d, std::uint64_t limit, const char* what) {
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (n != 0 && size > limit / n) {
      throw BudgetExceeded(std::string(what) + ": " + std::to_string(n) + "^" + std::to_string(d) +
                           " exceeds the budget " + std::to_string(limit));
    }
    size *= n;
  }
  if (size > limit) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(size) + " exceeds the budget " +
                         std::to_string(limit));
  }
  return size;
}

TupleSpace::TupleSpace(const GroupTable& group, std::uint32_t d, std::uint64_t limit)
    : group_(&group), d_(d), size_(checked_power(group.order(), d, limit, "tuple space")) {}

void TupleSpace::decode(std::uint64_t index, std::span<Elem> out) const {
  const std::uint32_t n = group_->order();
  for (std::uint32_t i = d_; i-- > 0;) {
    out[i] = static_cast<Elem>(index % n);
    index /= n;
  }
}

std::uint64_t TupleSpace::encode(std::span<const Elem> coords) const {
  std::uint64_t index = 0;
  for (std::uint32_t i = 0; i < d_; ++i) index = index * group_->order() + coords[i];
  return index;
}

std::uint64_t TupleSpace::mul(std::uint64_t a, std::uint64_t b) const {
  const std::uint32_t n = group_->order();
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += scale * group_->mul(static_cast<Elem>(a % n), static_cast<Elem>(b % n));
    a /= n;
    b /= n;
    scale *= n;
  }
  return out;
}

std::uint64_t TupleSpace::inv(std::uint64_t a) const {
  const std::uint32_t n = group_->order();
  std::uint64_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < d_; ++i) {
    out += scale * group_->inv(static_cast<Elem>(a % n));
    a /= n;
    scale *= n;
  }
  return out;
}

Elem evaluate(const Word& w, const GroupTable& g, std::span<const Elem> assignment) {
  if (assignment.size() < w.arity()) {
    throw std::invalid_argument("evaluate: assignment shorter than word arity");
  }
  Elem acc = 0;
  for (const auto& s : w.syllables()) acc = g.mul(acc, g.pow(assignment[s.var - 1], s.exp));
  return acc;
}

WordMapTable word_map_table(const Word& w, const GroupTable& g, std::uint32_t d,
                            std::uint64_t memory_budget, unsigned workers) {
  if (d < w.arity()) throw std::invalid_argument("word_map_table: d below word arity");
  const TupleSpace space(g, d, memory_budget);
  WordMapTable table{d, g.order(), std::vector<Elem>(space.size())};
  parallel_for(space.size(), workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Elem> coords(d);
    for (std::uint64_t i = begin; i < end; ++i) {
      space.decode(i, coords);
      table.values[i] = evaluate(w, g, coords);
    }
  });
  return table;
}

}  // namespace wordlab
