#include "wordlab/census.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wordlab/errors.hpp"
#include "wordlab/parallel.hpp"
#include "wordlab/random.hpp"

namespace wordlab {

Rational CensusResult::proportion() const {
  if (trials == 0) return Rational(0);
  return Rational(BigInt(count), BigInt(trials));
}

double CensusResult::half_width() const {
  if (mode == CensusMode::exact || trials == 0) return 0.0;
  const double p = static_cast<double>(count) / static_cast<double>(trials);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

bool CensusResult::ci_covers(const Rational& truth) const {
  const Rational p = proportion();
  if (mode == CensusMode::exact) return p == truth;
  const Rational diff = p - truth;
  const Rational z_squared(BigInt(38416), BigInt(10000));  // 1.96^2
  return diff * diff <= z_squared * p * (Rational(1) - p) / Rational(BigInt(trials));
}

namespace {

BigInt big_power(std::uint64_t n, std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= n;
  return r;
}

void check_arity(const Word& w, std::uint32_t d) {
  if (d < w.arity()) {
    throw std::invalid_argument("d = " + std::to_string(d) + " is below the word arity " +
                                std::to_string(w.arity()));
  }
}

// All tuples of G^d decoded once, row-major (N x d).
std::vector<Elem> decode_all(const TupleSpace& space) {
  std::vector<Elem> coords(space.size() * space.d());
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode(i, std::span<Elem>(coords.data() + i * space.d(), space.d()));
  }
  return coords;
}

}  // namespace

FiberStats fiber_stats(const Word& w, const GroupTable& g, std::uint32_t d, const CensusOptions& options) {
  check_arity(w, d);
  const WordMapTable table = word_map_table(w, g, d, options.memory_budget, options.workers);
  FiberStats out;
  out.total = table.values.size();
  out.fibers.assign(g.order(), 0);
  for (Elem v : table.values) ++out.fibers[v];
  for (Elem x = 0; x < g.order(); ++x) {
    ++out.histogram[out.fibers[x]];
    if (out.fibers[x] > out.fibers[out.largest]) out.largest = x;
  }
  out.max_proportion = Rational(BigInt(out.fibers[out.largest]), BigInt(out.total));
  return out;
}

CensusResult count_solutions_exact(const Word& w, const GroupTable& g, std::uint32_t d,
                                   const CensusOptions& options) {
  check_arity(w, d);
  const std::uint64_t triples = checked_power(g.order(), 3 * d, options.iteration_budget, "exact census");
  const TupleSpace space(g, d, options.memory_budget);
  const WordMapTable table = word_map_table(w, g, d, options.memory_budget, options.workers);
  const std::vector<Elem> coords = decode_all(space);
  const std::uint64_t n_tuples = space.size();
  const std::uint32_t n = g.order();

  const std::uint64_t count = parallel_sum(n_tuples, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<Elem> quotient(d);
    for (std::uint64_t s = begin; s < end; ++s) {
      const Elem ws_inv = g.inv(table.values[s]);
      const Elem* sc = coords.data() + s * d;
      for (std::uint64_t t = 0; t < n_tuples; ++t) {
        const Elem* tc = coords.data() + t * d;
        for (std::uint32_t i = 0; i < d; ++i) quotient[i] = g.mul(g.inv(sc[i]), tc[i]);
        const Elem left = g.mul(ws_inv, table.values[t]);
        const auto left_row = g.row(left);
        for (std::uint64_t u = 0; u < n_tuples; ++u) {
          const Elem* uc = coords.data() + u * d;
          std::uint64_t index = 0;
          for (std::uint32_t i = 0; i < d; ++i) index = index * n + g.mul(quotient[i], uc[i]);
          local += table.values[index] == left_row[table.values[u]] ? 1 : 0;
        }
      }
    }
    return local;
  });

  CensusResult r;
  r.mode = CensusMode::exact;
  r.count = count;
  r.trials = triples;
  r.space_size = big_power(g.order(), 3ULL * d);
  return r;
}

CensusResult estimate_solutions(const Word& w, const GroupTable& g, std::uint32_t d, std::uint64_t samples,
                                std::uint64_t seed, const CensusOptions& options) {
  check_arity(w, d);
  if (samples == 0) throw std::invalid_argument("estimate_solutions: samples must be positive");
  const Word derived = derived_word(w, d);

  // Use the tabulated word map when it fits; both paths consume the same
  // random stream and decide each sample identically.
  std::optional<WordMapTable> table;
  std::optional<TupleSpace> space;
  try {
    space.emplace(g, d, options.memory_budget);
    table = word_map_table(w, g, d, options.memory_budget, options.workers);
  } catch (const BudgetExceeded&) {
    table.reset();
  }

  const std::uint64_t chunks = (samples + kEstimatorChunk - 1) / kEstimatorChunk;
  const std::uint64_t hits = parallel_sum(chunks, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<Elem> tuple(3 * static_cast<std::size_t>(d));
    std::vector<Elem> quotient(d);
    const std::span<const Elem> all(tuple);
    for (std::uint64_t c = begin; c < end; ++c) {
      SplitMix64 rng(derive_seed(seed, c));
      const std::uint64_t first = c * kEstimatorChunk;
      const std::uint64_t last = std::min(samples, first + kEstimatorChunk);
      for (std::uint64_t k = first; k < last; ++k) {
        for (auto& x : tuple) x = static_cast<Elem>(rng.uniform(g.order()));
        if (table) {
          const auto xs = all.subspan(0, d), ys = all.subspan(d, d), zs = all.subspan(2 * d, d);
          for (std::uint32_t i = 0; i < d; ++i) quotient[i] = g.mul(g.mul(g.inv(xs[i]), ys[i]), zs[i]);
          const Elem lhs = table->values[space->encode(quotient)];
          const Elem rhs = g.mul(g.mul(g.inv(table->values[space->encode(xs)]), table->values[space->encode(ys)]),
                                 table->values[space->encode(zs)]);
          local += lhs == rhs ? 1 : 0;
        } else {
          local += evaluate(derived, g, tuple) == 0 ? 1 : 0;
        }
      }
    }
    return local;
  });

  CensusResult r;
  r.mode = CensusMode::estimate;
  r.count = hits;
  r.trials = samples;
  r.seed = seed;
  r.space_size = big_power(g.order(), 3ULL * d);
  return r;
}

namespace {

std::vector<std::uint64_t> member_list(std::span<const std::uint8_t> members) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < members.size(); ++i)
    if (members[i]) out.push_back(i);
  return out;
}

}  // namespace

PairCount translate_pair_count(std::span<const std::uint8_t> members, const GroupTable& g, std::uint32_t d,
                               const Rational& threshold, const CensusOptions& options) {
  const TupleSpace space(g, d, options.memory_budget);
  if (members.size() != space.size()) throw std::invalid_argument("membership array has wrong size");
  const std::vector<std::uint64_t> s_list = member_list(members);
  if (s_list.empty()) throw std::invalid_argument("translate_pair_count: S must be nonempty");
  checked_power(space.size(), 1, options.iteration_budget / s_list.size(), "translate pair scan");

  PairCount out;
  out.overlap.assign(space.size(), 0);
  out.quotients.assign(space.size(), 0);
  parallel_for(space.size(), options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t x = begin; x < end; ++x) {
      const std::uint64_t x_inv = space.inv(x);
      std::uint64_t overlap = 0, quotients = 0;
      for (std::uint64_t s : s_list) {
        overlap += members[space.mul(x_inv, s)];   // s in xS
        quotients += members[space.mul(s, x)];     // t = s x in S
      }
      out.overlap[x] = overlap;
      out.quotients[x] = quotients;
    }
  });
  const BigInt n_d = space.size();
  for (std::uint64_t x = 0; x < space.size(); ++x) {
    // overlap >= threshold * n^d, compared on integers
    if (BigInt(out.overlap[x]) * threshold.den() >= threshold.num() * n_d) {
      out.qualifying_pairs += out.quotients[x];
      out.pair_lower_bound += out.quotients[x] * out.overlap[x];
    }
  }
  out.total_pairs = static_cast<std::uint64_t>(s_list.size()) * s_list.size();
  return out;
}

std::uint64_t triple_count(std::span<const std::uint8_t> members, const GroupTable& g, std::uint32_t d,
                           const CensusOptions& options) {
  const TupleSpace space(g, d, options.memory_budget);
  if (members.size() != space.size()) throw std::invalid_argument("membership array has wrong size");
  const std::vector<std::uint64_t> s_list = member_list(members);
  if (s_list.empty()) return 0;
  checked_power(std::max<std::uint64_t>(space.size(), s_list.size()), 1,
                options.iteration_budget / s_list.size(), "triple count");

  // extend[q] = #{u in S : q u in S}; the count is the sum of extend[s^-1 t] over S^2.
  std::vector<std::uint64_t> extend(space.size(), 0);
  parallel_for(space.size(), options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t q = begin; q < end; ++q) {
      std::uint64_t c = 0;
      for (std::uint64_t u : s_list) c += members[space.mul(q, u)];
      extend[q] = c;
    }
  });
  return parallel_sum(s_list.size(), options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t s_inv = space.inv(s_list[i]);
      for (std::uint64_t t : s_list) local += extend[space.mul(s_inv, t)];
    }
    return local;
  });
}

bool TheoremReport::pass() const {
  if (!theorem_pass) return false;
  for (const auto& flag : {lemma_pass, chain_pass, solutions_cover_triples})
    if (flag && !*flag) return false;
  return true;
}

TheoremReport verify_theorem(const Word& w, const GroupTable& g, std::uint32_t d, const TheoremOptions& options) {
  check_arity(w, d);
  if (d == 0) throw std::invalid_argument("verify_theorem: d must be positive");
  const CensusOptions& copt = options.census;

  TheoremReport r;
  r.d = d;
  r.group_order = g.order();
  r.word = w;
  r.derived = derived_word(w, d);

  const WordMapTable table = word_map_table(w, g, d, copt.memory_budget, copt.workers);
  Hom witness;
  if (options.hom) {
    if (options.hom->d() != d) throw std::invalid_argument("supplied homomorphism has the wrong arity");
    witness = *options.hom;
    r.hom_searched = false;
    r.homs_examined = 1;
    r.agreement = agreement_count(table, g, witness);
  } else {
    HomSearchOptions hopt{options.hom_budget, copt.memory_budget, copt.workers};
    BestAgreement best = best_agreement(w, g, d, hopt);
    witness = std::move(best.witness);
    r.homs_examined = best.homs_examined;
    r.agreement = best.count;
  }
  r.tuples = table.values.size();
  if (r.agreement == 0) {
    throw std::invalid_argument("the homomorphism agrees with the word map nowhere; rho would be 0");
  }
  const Rational rho(BigInt(r.agreement), BigInt(r.tuples));
  r.bound = bounds::f(rho);
  r.space_size = big_power(g.order(), 3ULL * d);
  r.required = r.bound.f * Rational(r.space_size);
  const BigInt n_d = r.tuples;
  r.required_pairs = r.bound.f1 * Rational(n_d * n_d);

  bool exact = options.policy == CensusPolicy::exact;
  if (options.policy == CensusPolicy::automatic) exact = r.space_size <= BigInt(copt.iteration_budget);
  r.solutions = exact ? count_solutions_exact(w, g, d, copt)
                      : estimate_solutions(w, g, d, options.samples, options.seed, copt);
  const Rational found = exact ? Rational(BigInt(r.solutions.count))
                               : r.solutions.proportion() * Rational(r.space_size);
  r.theorem_pass = found >= r.required;

  const std::vector<std::uint8_t> members = agreement_set(table, g, witness);
  try {
    r.pairs = translate_pair_count(members, g, d, r.bound.f2, copt);
    r.triples = triple_count(members, g, d, copt);
  } catch (const BudgetExceeded&) {
    r.pairs.reset();
    r.triples.reset();
  }
  if (r.pairs) {
    r.lemma_pass = Rational(BigInt(r.pairs->qualifying_pairs)) >= r.required_pairs;
    bool chain = *r.triples >= r.pairs->pair_lower_bound &&
                 Rational(BigInt(r.pairs->pair_lower_bound)) >= r.required;
    if (exact) {
      r.solutions_cover_triples = r.solutions.count >= *r.triples;
      chain = chain && *r.solutions_cover_triples;
    }
    r.chain_pass = chain;
  }
  return r;
}

MannReport verify_mann_equivalence(std::int64_t e, const GroupTable& g, const CensusOptions& options) {
  checked_power(g.order(), 3, options.iteration_budget, "Mann census");
  const std::uint32_t n = g.order();
  MannReport r;
  r.e = e;
  std::vector<Elem> powers(n);
  for (Elem x = 0; x < n; ++x) powers[x] = g.pow(x, e);
  r.direct = parallel_sum(n, options.workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    for (auto x = static_cast<Elem>(begin); x < end; ++x)
      for (Elem y = 0; y < n; ++y) {
        const Elem xy = g.mul(x, y), pxy = g.mul(powers[x], powers[y]);
        for (Elem z = 0; z < n; ++z) local += powers[g.mul(xy, z)] == g.mul(pxy, powers[z]) ? 1 : 0;
      }
    return local;
  });
  r.derived = count_solutions_exact(Word::variable(1, e), g, 1, options).count;
  return r;
}

CommutingReport verify_commuting_corollary(const GroupTable& g, const TheoremOptions& options) {
  const CensusOptions& copt = options.census;
  const Word product = parse_word("x1*x2");
  CommutingReport r;
  if (options.hom) {
    r.rho = Rational(BigInt(agreement_count(product, g, *options.hom, copt.memory_budget)),
                     BigInt(static_cast<std::uint64_t>(g.order()) * g.order()));
  } else {
    r.rho = best_agreement(product, g, 2, {options.hom_budget, copt.memory_budget, copt.workers}).rho;
  }
  r.bound = bounds::commuting_bound(r.rho);
  r.probability = commuting_probability(g);
  r.classes = conjugacy_class_count(g);
  r.bound_holds = r.probability >= r.bound;
  r.class_identity_holds = r.probability == Rational(BigInt(r.classes), BigInt(g.order()));

  // s1 s2 s1^-1 == t1 t2 u1 t2^-1 s2 u1^-1 t1^-1 versus the derived word of x1*x2
  // with (x1..x6) = (s1, s2, t1, t2, u1, u2).
  const Word derived = derived_word(product);
  auto mismatch = [&](std::span<const Elem> v) {
    const Elem s1 = v[0], s2 = v[1], t1 = v[2], t2 = v[3], u1 = v[4];
    const Elem lhs = g.mul(g.mul(s1, s2), g.inv(s1));
    Elem rhs = g.mul(g.mul(t1, t2), u1);
    rhs = g.mul(g.mul(g.mul(rhs, g.inv(t2)), s2), g.mul(g.inv(u1), g.inv(t1)));
    return (lhs == rhs) != (evaluate(derived, g, v) == 0);
  };
  const std::uint64_t n = g.order();
  std::uint64_t sextuples = 0;
  try {
    sextuples = checked_power(n, 6, kEquationExhaustiveLimit, "equation check");
  } catch (const BudgetExceeded&) {
    sextuples = 0;
  }
  if (sextuples > 0) {
    r.equation_exhaustive = true;
    r.equation_checked = sextuples;
    const TupleSpace space(g, 6, kEquationExhaustiveLimit);
    r.equation_mismatches = parallel_sum(sextuples, copt.workers, [&](std::uint64_t begin, std::uint64_t end) {
      std::uint64_t local = 0;
      std::vector<Elem> v(6);
      for (std::uint64_t i = begin; i < end; ++i) {
        space.decode(i, v);
        local += mismatch(v) ? 1 : 0;
      }
      return local;
    });
  } else {
    r.equation_checked = options.samples;
    SplitMix64 rng(options.seed);
    std::vector<Elem> v(6);
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      for (auto& x : v) x = static_cast<Elem>(rng.uniform(n));
      r.equation_mismatches += mismatch(v) ? 1 : 0;
    }
  }
  return r;
}

}  // namespace wordlab
