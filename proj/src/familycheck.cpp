#include "wordlab/familycheck.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wordlab/bounds.hpp"
#include "wordlab/parallel.hpp"
#include "wordlab/random.hpp"

namespace wordlab::family {

namespace {

BigInt ceil_mul(const Rational& rho, std::uint64_t x) { return (rho * Rational(BigInt(x))).ceil(); }

}  // namespace

FamilyInstance::FamilyInstance(std::uint32_t x_size, std::vector<std::vector<std::uint32_t>> sets, Rational rho)
    : x_size_(x_size), sets_(std::move(sets)), rho_(std::move(rho)) {
  if (x_size_ == 0) throw std::invalid_argument("X must be nonempty");
  if (!rho_.is_positive() || rho_ > Rational(1)) throw std::invalid_argument("rho must lie in (0,1]");
  const Rational floor_size = rho_ * Rational(BigInt(x_size_));
  if (Rational(BigInt(sets_.size())) < floor_size) {
    throw std::invalid_argument("|I| = " + std::to_string(sets_.size()) + " is below rho|X|");
  }
  const std::size_t words = (x_size_ + 63) / 64;
  bits_.reserve(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    auto& s = sets_[i];
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= x_size_) throw std::invalid_argument("set member outside X");
    if (Rational(BigInt(s.size())) < floor_size) {
      throw std::invalid_argument("|M_" + std::to_string(i) + "| = " + std::to_string(s.size()) +
                                  " is below rho|X|");
    }
    std::vector<std::uint64_t> b(words, 0);
    for (auto v : s) b[v / 64] |= std::uint64_t{1} << (v % 64);
    bits_.push_back(std::move(b));
  }
}

std::uint32_t FamilyInstance::intersection(std::size_t a, std::size_t b) const {
  std::uint32_t c = 0;
  for (std::size_t k = 0; k < bits_[a].size(); ++k) c += std::popcount(bits_[a][k] & bits_[b][k]);
  return c;
}

LemmaReport verify_lemma(const FamilyInstance& inst, unsigned workers) {
  LemmaReport r;
  const Rational x(BigInt(inst.x_size()));
  r.threshold = bounds::f2(inst.rho()) * x;
  r.required = bounds::f1(inst.rho()) * x * x;
  // |M_a cap M_b| >= threshold  <=>  |M_a cap M_b| >= ceil(threshold)
  const auto min_overlap = static_cast<std::uint64_t>(r.threshold.ceil());

  const std::size_t m = inst.i_size();
  std::vector<std::uint8_t> qualifies(m * m);
  parallel_for(m, workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t a = begin; a < end; ++a)
      for (std::size_t b = 0; b < m; ++b) qualifies[a * m + b] = inst.intersection(a, b) >= min_overlap ? 1 : 0;
  });
  for (std::size_t a = 0; a < m; ++a) {
    r.diagonal_qualifies = r.diagonal_qualifies && qualifies[a * m + a];
    for (std::size_t b = 0; b < m; ++b) {
      r.qualifying_pairs += qualifies[a * m + b];
      if (qualifies[a * m + b] != qualifies[b * m + a]) r.symmetric = false;
    }
  }
  r.pass = Rational(BigInt(r.qualifying_pairs)) >= r.required;
  return r;
}

FamilyInstance random_family(std::uint32_t x_size, std::uint32_t i_size, const Rational& rho, std::uint64_t seed) {
  if (x_size == 0) throw std::invalid_argument("random_family: X must be nonempty");
  if (!rho.is_positive() || rho > Rational(1)) throw std::invalid_argument("random_family: rho must lie in (0,1]");
  if (Rational(BigInt(i_size)) < rho * Rational(BigInt(x_size))) {
    throw std::invalid_argument("random_family: |I| below rho|X|");
  }
  const auto k = static_cast<std::uint32_t>(ceil_mul(rho, x_size));
  SplitMix64 rng(seed);
  std::vector<std::uint32_t> pool(x_size);
  std::vector<std::vector<std::uint32_t>> sets;
  sets.reserve(i_size);
  for (std::uint32_t i = 0; i < i_size; ++i) {
    std::iota(pool.begin(), pool.end(), 0U);
    // Partial Fisher-Yates: the first k entries form a uniform k-subset.
    for (std::uint32_t j = 0; j < k; ++j) {
      const auto pick = j + static_cast<std::uint32_t>(rng.uniform(x_size - j));
      std::swap(pool[j], pool[pick]);
    }
    sets.emplace_back(pool.begin(), pool.begin() + k);
  }
  return FamilyInstance(x_size, std::move(sets), rho);
}

namespace {

std::vector<std::uint32_t> range_set(std::uint32_t begin, std::uint32_t end) {
  std::vector<std::uint32_t> s(end - begin);
  std::iota(s.begin(), s.end(), begin);
  return s;
}

// X split into `blocks` equal blocks; set i is block i mod blocks.
FamilyInstance partition_family(std::uint32_t x_size, std::uint32_t blocks, std::uint32_t i_size,
                                const Rational& rho) {
  const std::uint32_t block = x_size / blocks;
  std::vector<std::vector<std::uint32_t>> sets;
  for (std::uint32_t i = 0; i < i_size; ++i) {
    const std::uint32_t b = i % blocks;
    sets.push_back(range_set(b * block, b + 1 == blocks ? x_size : (b + 1) * block));
  }
  return FamilyInstance(x_size, std::move(sets), rho);
}

// Cyclic windows of length `len` starting at multiples of `step`.
FamilyInstance window_family(std::uint32_t x_size, std::uint32_t len, std::uint32_t step, std::uint32_t i_size,
                             const Rational& rho) {
  std::vector<std::vector<std::uint32_t>> sets;
  for (std::uint32_t i = 0; i < i_size; ++i) {
    std::vector<std::uint32_t> s;
    for (std::uint32_t j = 0; j < len; ++j) s.push_back((i * step + j) % x_size);
    sets.push_back(std::move(s));
  }
  return FamilyInstance(x_size, std::move(sets), rho);
}

}  // namespace

std::vector<NamedInstance> adversarial_families() {
  std::vector<NamedInstance> out;
  const Rational half(1, 2), third(BigInt(1), BigInt(3)), fifth(BigInt(1), BigInt(5)), tenth(BigInt(1), BigInt(10));
  auto boundary = [](const Rational& rho) {
    // 4 ceil(2/rho) / rho, an integer for the unit fractions used here
    return static_cast<std::uint32_t>((Rational(4) * Rational(bounds::ceil_two_over(rho)) / rho).ceil());
  };

  // rho = 1/2: boundary |X| = 4 * 4 * 2 = 32. Two disjoint halves alternate.
  for (std::uint32_t x : {boundary(half) - 2, boundary(half), boundary(half) + 2}) {
    const std::uint32_t i_size = static_cast<std::uint32_t>(ceil_mul(half, x));
    out.push_back({"halves rho=1/2 X=" + std::to_string(x), partition_family(x, 2, i_size, half)});
  }
  // rho = 1/3: boundary |X| = 4 * 6 * 3 = 72, three disjoint blocks.
  for (std::uint32_t x : {boundary(third) - 3, boundary(third), boundary(third) + 3}) {
    const std::uint32_t i_size = static_cast<std::uint32_t>(ceil_mul(third, x));
    out.push_back({"thirds rho=1/3 X=" + std::to_string(x), partition_family(x, 3, i_size, third)});
  }
  // Tiny X: three pairwise disjoint singletons.
  out.push_back({"singletons rho=1/3 X=3", FamilyInstance(3, {{0}, {1}, {2}}, third)});
  // Single index with M = X.
  out.push_back({"single full set X=5", FamilyInstance(5, {range_set(0, 5)}, fifth)});
  // Partition families at smaller rho, at and above their boundaries.
  for (const auto& [rho, blocks] : {std::pair{fifth, 5U}, std::pair{tenth, 10U}}) {
    for (std::uint32_t x : {blocks * 4, boundary(rho), boundary(rho) + blocks}) {
      const std::uint32_t i_size = static_cast<std::uint32_t>(ceil_mul(rho, x));
      out.push_back({"partition rho=" + rho.str() + " X=" + std::to_string(x),
                     partition_family(x, blocks, i_size, rho)});
    }
  }
  // Sliding windows of minimal size: overlaps decay with the shift.
  for (const auto& [rho, x] : {std::pair{half, 32U}, std::pair{third, 72U}, std::pair{fifth, 200U}}) {
    const auto len = static_cast<std::uint32_t>(ceil_mul(rho, x));
    const auto i_size = len;
    out.push_back({"windows rho=" + rho.str() + " X=" + std::to_string(x),
                   window_family(x, len, std::max(1U, x / i_size), i_size, rho)});
  }
  return out;
}

FamilyInstance fuzz_instance(std::uint64_t master_seed, std::uint64_t k) {
  static const Rational kRhos[] = {Rational(1), Rational(1, 2), Rational(BigInt(1), BigInt(3)),
                                   Rational(BigInt(1), BigInt(5)), Rational(BigInt(1), BigInt(10))};
  static const std::uint32_t kSizes[] = {10, 40, 100, 300};
  const Rational& rho = kRhos[k % 5];
  const std::uint32_t x = kSizes[(k / 5) % 4];
  const std::uint64_t seed = derive_seed(master_seed, k);
  SplitMix64 rng(seed);
  const auto base = static_cast<std::uint32_t>(ceil_mul(rho, x));
  const auto i_size = base + static_cast<std::uint32_t>(rng.uniform(x + 1));
  return random_family(x, i_size, rho, rng.next());
}

void save_instance(std::ostream& os, const FamilyInstance& inst) {
  os << "X=" << inst.x_size() << " I=" << inst.i_size() << " rho=" << inst.rho().str() << '\n';
  for (std::size_t i = 0; i < inst.i_size(); ++i) {
    const auto& s = inst.set(i);
    for (std::size_t j = 0; j < s.size(); ++j) os << (j ? " " : "") << s[j];
    os << '\n';
  }
}

FamilyInstance load_instance(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("family file: missing header");
  std::istringstream hs(header);
  std::string xs, is_, rs;
  hs >> xs >> is_ >> rs;
  if (xs.rfind("X=", 0) != 0 || is_.rfind("I=", 0) != 0 || rs.rfind("rho=", 0) != 0) {
    throw std::invalid_argument("family file: header must read 'X=<n> I=<m> rho=<num>/<den>'");
  }
  std::uint32_t x_size = 0;
  std::size_t i_size = 0;
  try {
    x_size = static_cast<std::uint32_t>(std::stoul(xs.substr(2)));
    i_size = std::stoul(is_.substr(2));
  } catch (const std::exception&) {
    throw std::invalid_argument("family file: malformed header '" + header + "'");
  }
  const Rational rho = Rational::parse(rs.substr(4));
  std::vector<std::vector<std::uint32_t>> sets;
  std::string line;
  while (sets.size() < i_size && std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<std::uint32_t> s;
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw std::invalid_argument("family file: negative member");
      s.push_back(static_cast<std::uint32_t>(v));
    }
    if (!ls.eof()) throw std::invalid_argument("family file: malformed set line '" + line + "'");
    sets.push_back(std::move(s));
  }
  if (sets.size() != i_size) throw std::invalid_argument("family file: fewer set lines than I");
  return FamilyInstance(x_size, std::move(sets), rho);
}

}  // namespace wordlab::family
