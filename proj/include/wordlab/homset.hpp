#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wordlab/freeword.hpp"
#include "wordlab/group.hpp"
#include "wordlab/rational.hpp"
#include "wordlab/wordmap.hpp"

namespace wordlab {

inline constexpr std::uint64_t kDefaultHomBudget = 10'000'000;
inline constexpr std::uint64_t kDefaultAgreementBudget = 100'000'000;

/// An endomorphism of G as its value table: values[g] is the image of g.
struct Endo {
  std::vector<Elem> values;

  Elem operator()(Elem g) const { return values[g]; }
  bool is_bijective() const;
  friend bool operator==(const Endo&, const Endo&) = default;
};

/// A homomorphism G^d -> G, phi(g1..gd) = c_1(g1) * ... * c_d(gd), where the
/// components c_i are endomorphisms whose images commute pairwise.
struct Hom {
  std::vector<Endo> components;

  std::uint32_t d() const { return static_cast<std::uint32_t>(components.size()); }
  Elem apply(const GroupTable& g, std::span<const Elem> tuple) const;
};

/// Greedy generating sequence with BFS expressions for every element.
///
/// `bfs_order` lists all elements starting with the identity; every other
/// element g satisfies g == parent[g] * generators[via[g]].
struct GeneratingSequence {
  std::vector<Elem> generators;
  std::vector<Elem> bfs_order;
  std::vector<Elem> parent;
  std::vector<std::uint32_t> via;

  /// Generator indices i1..ik with g == generators[i1] * ... * generators[ik].
  std::vector<std::uint32_t> expression(Elem g) const;
};

GeneratingSequence generating_sequence(const GroupTable& g);

/// Full check: values[ab] == values[a] values[b] for all a, b.
bool is_endomorphism(const GroupTable& g, std::span<const Elem> values);

/// All endomorphisms in lexicographic order of the generator images (first
/// generator most significant, images in element-id order). Throws
/// BudgetExceeded if n^(#generators) exceeds `budget`.
std::vector<Endo> endomorphisms(const GroupTable& g, std::uint64_t budget = kDefaultHomBudget,
                                unsigned workers = 1);
std::vector<Endo> automorphisms(const GroupTable& g, std::uint64_t budget = kDefaultHomBudget,
                                unsigned workers = 1);

/// Extends images of the generating sequence to an endomorphism. Throws
/// std::invalid_argument if the assignment does not extend.
Endo endo_from_generator_images(const GroupTable& g, const GeneratingSequence& gens,
                                std::span<const Elem> images);

/// Whether every element of image(a) commutes with every element of image(b).
bool images_commute(const GroupTable& g, const GeneratingSequence& gens, const Endo& a, const Endo& b);

/// Every homomorphism G^d -> G, each exactly once, in lexicographic order of
/// component indices into endomorphisms(g). Throws BudgetExceeded if
/// |End(G)|^d exceeds `budget`.
std::vector<Hom> homs_power(const GroupTable& g, std::uint32_t d, std::uint64_t budget = kDefaultHomBudget,
                            unsigned workers = 1);

/// Assembles a Hom from per-component endomorphisms, checking that images commute.
Hom make_hom(const GroupTable& g, std::vector<Endo> components);

/// |{t in G^d : phi(t) == w(t)}|.
std::uint64_t agreement_count(const Word& w, const GroupTable& g, const Hom& phi,
                              std::uint64_t budget = kDefaultAgreementBudget);
std::uint64_t agreement_count(const WordMapTable& table, const GroupTable& g, const Hom& phi);

/// Membership flags over G^d (TupleSpace order) of the agreement set.
std::vector<std::uint8_t> agreement_set(const WordMapTable& table, const GroupTable& g, const Hom& phi);

struct HomSearchOptions {
  std::uint64_t hom_budget = kDefaultHomBudget;
  std::uint64_t agreement_budget = kDefaultAgreementBudget;
  unsigned workers = 1;
};

struct BestAgreement {
  Rational rho;               ///< count / n^d, exact
  std::uint64_t count = 0;
  std::uint64_t total = 0;    ///< n^d
  Hom witness;                ///< first maximiser in enumeration order
  std::uint64_t homs_examined = 0;
};

/// Maximises agreement_count over all homomorphisms G^d -> G.
BestAgreement best_agreement(const Word& w, const GroupTable& g, std::uint32_t d,
                             const HomSearchOptions& options = {});

/// Best proportion of x in G with phi(x) == x^e over endomorphisms (or only
/// automorphisms) phi.
Rational power_agreement_profile(const GroupTable& g, std::int64_t e, bool automorphisms_only,
                                 std::uint64_t budget = kDefaultHomBudget);

}  // namespace wordlab
