#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wordlab/rational.hpp"

namespace wordlab::family {

/// A family (M_i) of subsets of X = {0..x_size-1} with |M_i| >= rho |X| for all
/// i and |I| >= rho |X|. The constructor rejects instances violating either.
class FamilyInstance {
 public:
  FamilyInstance(std::uint32_t x_size, std::vector<std::vector<std::uint32_t>> sets, Rational rho);

  std::uint32_t x_size() const { return x_size_; }
  std::size_t i_size() const { return sets_.size(); }
  const Rational& rho() const { return rho_; }
  /// Sorted, duplicate-free members of M_i.
  const std::vector<std::uint32_t>& set(std::size_t i) const { return sets_[i]; }

  /// |M_a cap M_b|.
  std::uint32_t intersection(std::size_t a, std::size_t b) const;

 private:
  std::uint32_t x_size_;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::vector<std::vector<std::uint64_t>> bits_;
  Rational rho_;
};

struct LemmaReport {
  std::uint64_t qualifying_pairs = 0;  ///< ordered pairs, diagonal included
  Rational threshold;                  ///< f2(rho) |X|
  Rational required;                   ///< f1(rho) |X|^2
  bool symmetric = true;               ///< (a,b) qualifies iff (b,a) does
  bool diagonal_qualifies = true;
  bool pass = false;
};

LemmaReport verify_lemma(const FamilyInstance& inst, unsigned workers = 1);

/// Each M_i a uniform random subset of size exactly ceil(rho x_size).
/// Throws std::invalid_argument if i_size < rho x_size or rho is not in (0,1].
FamilyInstance random_family(std::uint32_t x_size, std::uint32_t i_size, const Rational& rho,
                             std::uint64_t seed);

struct NamedInstance {
  std::string name;
  FamilyInstance instance;
};

/// Hand-built stress instances around the small-X / large-X boundary
/// |X| = 4 ceil(2/rho) / rho, plus tiny and partition families.
std::vector<NamedInstance> adversarial_families();

/// The k-th instance of the seeded fuzz schedule: rho cycles through
/// {1, 1/2, 1/3, 1/5, 1/10}, |X| through {10, 40, 100, 300}, and |I| is
/// ceil(rho |X|) plus a seeded extra in [0, |X|].
FamilyInstance fuzz_instance(std::uint64_t master_seed, std::uint64_t k);

/// Text format: "X=<n> I=<m> rho=<num>/<den>" then one line of sorted members per set.
void save_instance(std::ostream& os, const FamilyInstance& inst);
FamilyInstance load_instance(std::istream& is);

}  // namespace wordlab::family
