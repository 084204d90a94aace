#include "wordlab/homset.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "wordlab/errors.hpp"
#include "wordlab/parallel.hpp"

namespace wordlab {

bool Endo::is_bijective() const {
  std::vector<bool> hit(values.size(), false);
  for (Elem v : values) {
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

Elem Hom::apply(const GroupTable& g, std::span<const Elem> tuple) const {
  Elem acc = 0;
  for (std::size_t i = 0; i < components.size(); ++i) acc = g.mul(acc, components[i](tuple[i]));
  return acc;
}

std::vector<std::uint32_t> GeneratingSequence::expression(Elem g) const {
  std::vector<std::uint32_t> out;
  while (g != 0) {
    out.push_back(via[g]);
    g = parent[g];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

namespace {

// BFS from the identity by right multiplication with the generators in order.
void bfs(const GroupTable& g, GeneratingSequence& seq) {
  const std::uint32_t n = g.order();
  seq.bfs_order.assign(1, 0);
  seq.parent.assign(n, n);
  seq.via.assign(n, 0);
  seq.parent[0] = 0;
  for (std::size_t head = 0; head < seq.bfs_order.size(); ++head) {
    const Elem x = seq.bfs_order[head];
    for (std::uint32_t k = 0; k < seq.generators.size(); ++k) {
      const Elem y = g.mul(x, seq.generators[k]);
      if (seq.parent[y] == n) {
        seq.parent[y] = x;
        seq.via[y] = k;
        seq.bfs_order.push_back(y);
      }
    }
  }
}

}  // namespace

GeneratingSequence generating_sequence(const GroupTable& g) {
  GeneratingSequence seq;
  bfs(g, seq);
  for (Elem x = 1; x < g.order(); ++x) {
    if (seq.parent[x] != g.order()) continue;
    seq.generators.push_back(x);
    bfs(g, seq);
  }
  return seq;
}

bool is_endomorphism(const GroupTable& g, std::span<const Elem> values) {
  if (values.size() != g.order()) return false;
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = 0; b < g.order(); ++b)
      if (values[g.mul(a, b)] != g.mul(values[a], values[b])) return false;
  return true;
}

namespace {

// Fills `values` from generator images along the BFS tree and checks the
// relations x * s for every element x and generator s. Passing this is
// equivalent to being a homomorphism.
bool extend(const GroupTable& g, const GeneratingSequence& seq, std::span<const Elem> images,
            std::vector<Elem>& values) {
  values.assign(g.order(), 0);
  for (std::size_t i = 1; i < seq.bfs_order.size(); ++i) {
    const Elem x = seq.bfs_order[i];
    values[x] = g.mul(values[seq.parent[x]], images[seq.via[x]]);
  }
  for (Elem x = 0; x < g.order(); ++x)
    for (std::uint32_t k = 0; k < seq.generators.size(); ++k)
      if (values[g.mul(x, seq.generators[k])] != g.mul(values[x], images[k])) return false;
  return true;
}

}  // namespace

Endo endo_from_generator_images(const GroupTable& g, const GeneratingSequence& gens,
                                std::span<const Elem> images) {
  if (images.size() != gens.generators.size()) {
    throw std::invalid_argument("expected " + std::to_string(gens.generators.size()) +
                                " generator images, got " + std::to_string(images.size()));
  }
  for (Elem v : images)
    if (v >= g.order()) throw std::invalid_argument("generator image out of range");
  Endo e;
  if (!extend(g, gens, images, e.values) || !is_endomorphism(g, e.values)) {
    throw std::invalid_argument("generator images do not extend to an endomorphism");
  }
  return e;
}

std::vector<Endo> endomorphisms(const GroupTable& g, std::uint64_t budget, unsigned workers) {
  const GeneratingSequence seq = generating_sequence(g);
  const auto k = static_cast<std::uint32_t>(seq.generators.size());
  const std::uint32_t n = g.order();
  const std::uint64_t candidates = checked_power(n, k, budget, "endomorphism search");

  // Partition by candidate index; each range keeps its hits in order.
  const std::uint64_t parts = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, candidates));
  std::vector<std::vector<Endo>> found(parts);
  parallel_for(parts, workers, [&](std::uint64_t pb, std::uint64_t pe) {
    std::vector<Elem> images(k), values;
    for (std::uint64_t p = pb; p < pe; ++p) {
      const std::uint64_t begin = candidates * p / parts, end = candidates * (p + 1) / parts;
      for (std::uint64_t c = begin; c < end; ++c) {
        std::uint64_t rest = c;
        bool orders_ok = true;
        for (std::uint32_t i = k; i-- > 0;) {
          images[i] = static_cast<Elem>(rest % n);
          rest /= n;
          if (g.element_order(seq.generators[i]) % g.element_order(images[i]) != 0) orders_ok = false;
        }
        if (!orders_ok || !extend(g, seq, images, values)) continue;
        if (!is_endomorphism(g, values)) {
          throw std::logic_error("generator relations passed but full homomorphism check failed");
        }
        found[p].push_back(Endo{values});
      }
    }
  });
  std::vector<Endo> out;
  for (auto& part : found)
    for (auto& e : part) out.push_back(std::move(e));
  return out;
}

std::vector<Endo> automorphisms(const GroupTable& g, std::uint64_t budget, unsigned workers) {
  std::vector<Endo> out;
  for (auto& e : endomorphisms(g, budget, workers))
    if (e.is_bijective()) out.push_back(std::move(e));
  return out;
}

bool images_commute(const GroupTable& g, const GeneratingSequence& gens, const Endo& a, const Endo& b) {
  for (Elem s : gens.generators)
    for (Elem t : gens.generators)
      if (!g.commute(a(s), b(t))) return false;
  return true;
}

Hom make_hom(const GroupTable& g, std::vector<Endo> components) {
  const GeneratingSequence gens = generating_sequence(g);
  for (const auto& c : components) {
    if (!is_endomorphism(g, c.values)) throw std::invalid_argument("component is not an endomorphism");
  }
  for (std::size_t i = 0; i < components.size(); ++i)
    for (std::size_t j = i + 1; j < components.size(); ++j)
      if (!images_commute(g, gens, components[i], components[j])) {
        throw std::invalid_argument("images of components " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " do not commute");
      }
  return Hom{std::move(components)};
}

std::vector<Hom> homs_power(const GroupTable& g, std::uint32_t d, std::uint64_t budget, unsigned workers) {
  if (d == 0) throw std::invalid_argument("homs_power: d must be positive");
  const std::vector<Endo> ends = endomorphisms(g, budget, workers);
  checked_power(ends.size(), d, budget, "homomorphism search");
  const GeneratingSequence gens = generating_sequence(g);
  const std::size_t m = ends.size();
  std::vector<std::uint8_t> commutes(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      commutes[a * m + b] = commutes[b * m + a] = images_commute(g, gens, ends[a], ends[b]) ? 1 : 0;

  // Depth-first over component indices; prefix pruning keeps order lexicographic.
  std::vector<Hom> out;
  std::vector<std::size_t> pick(d, 0);
  std::uint32_t depth = 0;
  while (true) {
    if (pick[depth] == m) {
      if (depth == 0) break;
      pick[depth] = 0;
      ++pick[--depth];
      continue;
    }
    bool ok = true;
    for (std::uint32_t j = 0; j < depth && ok; ++j) ok = commutes[pick[j] * m + pick[depth]] != 0;
    if (!ok) {
      ++pick[depth];
      continue;
    }
    if (depth + 1 == d) {
      Hom h;
      for (auto idx : pick) h.components.push_back(ends[idx]);
      out.push_back(std::move(h));
      ++pick[depth];
    } else {
      ++depth;
    }
  }
  return out;
}

std::uint64_t agreement_count(const WordMapTable& table, const GroupTable& g, const Hom& phi) {
  if (phi.d() != table.d) throw std::invalid_argument("homomorphism arity differs from table arity");
  const TupleSpace space(g, table.d, table.values.size());
  std::vector<Elem> coords(table.d);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, coords);
    count += phi.apply(g, coords) == table.values[i] ? 1 : 0;
  }
  return count;
}

std::uint64_t agreement_count(const Word& w, const GroupTable& g, const Hom& phi, std::uint64_t budget) {
  if (w.arity() > phi.d()) throw std::invalid_argument("word arity exceeds homomorphism arity");
  return agreement_count(word_map_table(w, g, phi.d(), budget), g, phi);
}

std::vector<std::uint8_t> agreement_set(const WordMapTable& table, const GroupTable& g, const Hom& phi) {
  const TupleSpace space(g, table.d, table.values.size());
  std::vector<Elem> coords(table.d);
  std::vector<std::uint8_t> flags(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, coords);
    flags[i] = phi.apply(g, coords) == table.values[i] ? 1 : 0;
  }
  return flags;
}

BestAgreement best_agreement(const Word& w, const GroupTable& g, std::uint32_t d,
                             const HomSearchOptions& options) {
  if (d < w.arity()) throw std::invalid_argument("best_agreement: d below word arity");
  const WordMapTable table = word_map_table(w, g, d, options.agreement_budget, options.workers);
  const std::vector<Hom> homs = homs_power(g, d, options.hom_budget, options.workers);

  std::vector<std::uint64_t> counts(homs.size());
  parallel_for(homs.size(), options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) counts[i] = agreement_count(table, g, homs[i]);
  });
  const auto best = std::max_element(counts.begin(), counts.end());  // first maximum
  BestAgreement out;
  out.total = table.values.size();
  out.count = *best;
  out.rho = Rational(BigInt(out.count), BigInt(out.total));
  out.witness = homs[static_cast<std::size_t>(best - counts.begin())];
  out.homs_examined = homs.size();
  return out;
}

Rational power_agreement_profile(const GroupTable& g, std::int64_t e, bool automorphisms_only,
                                 std::uint64_t budget) {
  const std::vector<Endo> maps = automorphisms_only ? automorphisms(g, budget) : endomorphisms(g, budget);
  std::uint64_t best = 0;
  for (const auto& phi : maps) {
    std::uint64_t count = 0;
    for (Elem x = 0; x < g.order(); ++x) count += phi(x) == g.pow(x, e) ? 1 : 0;
    best = std::max(best, count);
  }
  return Rational(BigInt(best), BigInt(g.order()));
}

}  // namespace wordlab
