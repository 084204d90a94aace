#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wordlab/bounds.hpp"
#include "wordlab/freeword.hpp"
#include "wordlab/group.hpp"
#include "wordlab/homset.hpp"
#include "wordlab/rational.hpp"
#include "wordlab/wordmap.hpp"

namespace wordlab {

inline constexpr std::uint64_t kDefaultIterationBudget = 1'000'000'000;
inline constexpr std::uint64_t kDefaultSamples = 100'000;
/// Samples per estimator chunk. Chunk c draws from SplitMix64(derive_seed(seed, c)).
inline constexpr std::uint64_t kEstimatorChunk = 4096;

struct CensusOptions {
  std::uint64_t iteration_budget = kDefaultIterationBudget;
  std::uint64_t memory_budget = kDefaultMemoryBudget;
  unsigned workers = 1;
};

enum class CensusMode { exact, estimate };

/// Solutions of the derived equation over G^{3d}.
///
/// Exact mode: `count` solutions among `trials` = n^{3d} tuples.
/// Estimate mode: `count` hits among `trials` = samples uniform tuples.
struct CensusResult {
  CensusMode mode = CensusMode::exact;
  std::uint64_t count = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  BigInt space_size;  ///< n^{3d}

  /// count / trials: the exact proportion, or the sample mean.
  Rational proportion() const;
  /// 1.96 * sqrt(p (1 - p) / trials); zero in exact mode. Display only.
  double half_width() const;
  /// Whether `truth` lies in the 95% normal-approximation interval, decided
  /// exactly as (p - truth)^2 <= 1.96^2 p (1 - p) / trials.
  bool ci_covers(const Rational& truth) const;
};

/// Fiber sizes of the word map G^d -> G.
struct FiberStats {
  std::vector<std::uint64_t> fibers;               ///< fibers[g] = |w^-1(g)|
  std::map<std::uint64_t, std::uint32_t> histogram;  ///< fiber size -> number of elements
  Elem largest = 0;                                ///< first element with a largest fiber
  Rational max_proportion;                         ///< largest fiber / n^d
  std::uint64_t total = 0;
};

FiberStats fiber_stats(const Word& w, const GroupTable& g, std::uint32_t d, const CensusOptions& options = {});

/// Exact number of tuples (x, y, z) in (G^d)^3 with
/// w(x^-1 y z) == w(x)^-1 w(y) w(z), via one word-map table over G^d.
/// Throws BudgetExceeded if n^{3d} exceeds the iteration budget.
CensusResult count_solutions_exact(const Word& w, const GroupTable& g, std::uint32_t d,
                                   const CensusOptions& options = {});

/// Monte Carlo estimate of the same proportion from `samples` uniform tuples.
/// Bit-reproducible for fixed (seed, samples) regardless of the worker count.
CensusResult estimate_solutions(const Word& w, const GroupTable& g, std::uint32_t d, std::uint64_t samples,
                                std::uint64_t seed, const CensusOptions& options = {});

/// Translate-intersection pair statistics for a subset S of G^d.
struct PairCount {
  std::uint64_t qualifying_pairs = 0;   ///< #{(s,t) in S^2 : |S cap s^-1 t S| >= threshold n^d}
  std::uint64_t pair_lower_bound = 0;   ///< triples in S^3 contributed by qualifying pairs
  std::uint64_t total_pairs = 0;        ///< |S|^2
  std::vector<std::uint64_t> overlap;   ///< overlap[g] = |S cap g S|
  std::vector<std::uint64_t> quotients; ///< quotients[g] = #{(s,t) in S^2 : s^-1 t = g}
};

PairCount translate_pair_count(std::span<const std::uint8_t> members, const GroupTable& g, std::uint32_t d,
                               const Rational& threshold, const CensusOptions& options = {});

/// #{(s,t,u) in S^3 : s^-1 t u in S}.
std::uint64_t triple_count(std::span<const std::uint8_t> members, const GroupTable& g, std::uint32_t d,
                           const CensusOptions& options = {});

enum class CensusPolicy { automatic, exact, estimate };

struct TheoremOptions {
  CensusOptions census;
  std::uint64_t hom_budget = kDefaultHomBudget;
  CensusPolicy policy = CensusPolicy::automatic;
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  /// Replaces the maximising search with a fixed homomorphism G^d -> G.
  std::optional<Hom> hom;
};

struct TheoremReport {
  std::uint32_t d = 0;
  std::uint32_t group_order = 0;
  Word word;
  Word derived;
  bool hom_searched = true;  ///< false when a fixed homomorphism was supplied
  std::uint64_t homs_examined = 0;
  std::uint64_t agreement = 0;  ///< |S|
  std::uint64_t tuples = 0;     ///< n^d
  bounds::BoundTriple bound;
  BigInt space_size;  ///< n^{3d}
  Rational required;  ///< f(rho) n^{3d}
  Rational required_pairs;  ///< f1(rho) n^{2d}
  CensusResult solutions;
  std::optional<PairCount> pairs;
  std::optional<std::uint64_t> triples;

  /// solutions >= required; statistical (not a proof) in estimate mode.
  bool theorem_pass = false;
  std::optional<bool> lemma_pass;           ///< qualifying pairs >= f1 n^{2d}
  std::optional<bool> chain_pass;           ///< solutions >= triples >= pair bound >= required
  std::optional<bool> solutions_cover_triples;

  bool pass() const;
};

TheoremReport verify_theorem(const Word& w, const GroupTable& g, std::uint32_t d,
                             const TheoremOptions& options = {});

struct MannReport {
  std::int64_t e = 0;
  std::uint64_t direct = 0;   ///< #{(x,y,z) : (xyz)^e = x^e y^e z^e}
  std::uint64_t derived = 0;  ///< census of the derived word of x1^e
  bool equal() const { return direct == derived; }
};

MannReport verify_mann_equivalence(std::int64_t e, const GroupTable& g, const CensusOptions& options = {});

struct CommutingReport {
  Rational rho;
  Rational bound;
  Rational probability;
  std::uint32_t classes = 0;
  bool bound_holds = false;
  bool class_identity_holds = false;  ///< probability == classes / n
  std::uint64_t equation_checked = 0;
  std::uint64_t equation_mismatches = 0;
  bool equation_exhaustive = false;

  bool pass() const { return bound_holds && class_identity_holds && equation_mismatches == 0; }
};

/// Sextuples checked exhaustively when n^6 is at most this; otherwise sampled.
inline constexpr std::uint64_t kEquationExhaustiveLimit = 1'000'000;

CommutingReport verify_commuting_corollary(const GroupTable& g, const TheoremOptions& options = {});

}  // namespace wordlab
