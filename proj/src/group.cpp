#include "wordlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "wordlab/errors.hpp"

namespace wordlab {

GroupTable::GroupTable(std::uint32_t order, std::vector<Elem> table, std::vector<std::string> labels)
    : n_(order), mul_(std::move(table)), labels_(std::move(labels)) {
  if (n_ == 0) throw std::invalid_argument("group order must be positive");
  if (mul_.size() != static_cast<std::size_t>(n_) * n_) {
    throw std::invalid_argument("multiplication table has wrong size");
  }
  if (labels_.empty()) {
    labels_.reserve(n_);
    for (std::uint32_t i = 0; i < n_; ++i) labels_.push_back("g" + std::to_string(i));
  }
  if (labels_.size() != n_) throw std::invalid_argument("label count differs from group order");
  for (Elem v : mul_) {
    if (v >= n_) throw std::invalid_argument("table entry out of range");
  }
  inv_.assign(n_, n_);
  for (Elem a = 0; a < n_; ++a) {
    for (Elem b = 0; b < n_; ++b) {
      if (mul(a, b) == 0) {
        inv_[a] = b;
        break;
      }
    }
  }
  orders_.assign(n_, 0);
  for (Elem a = 0; a < n_; ++a) {
    Elem x = a;
    std::uint32_t k = 1;
    while (x != 0 && k <= n_) {
      x = mul(x, a);
      ++k;
    }
    orders_[a] = k;
  }
  validate();
}

void GroupTable::validate() const {
  for (Elem g = 0; g < n_; ++g) {
    if (mul(0, g) != g || mul(g, 0) != g) throw std::invalid_argument("element 0 is not the identity");
    if (inv_[g] == n_ || mul(g, inv_[g]) != 0 || mul(inv_[g], g) != 0) {
      throw std::invalid_argument("element " + std::to_string(g) + " has no two-sided inverse");
    }
  }
  // Latin square: every row and every column is a permutation.
  std::vector<std::uint32_t> seen(n_, 0);
  std::uint32_t stamp = 0;
  for (Elem a = 0; a < n_; ++a) {
    ++stamp;
    for (Elem b = 0; b < n_; ++b) {
      if (seen[mul(a, b)] == stamp) throw std::invalid_argument("table is not a Latin square");
      seen[mul(a, b)] = stamp;
    }
    ++stamp;
    for (Elem b = 0; b < n_; ++b) {
      if (seen[mul(b, a)] == stamp) throw std::invalid_argument("table is not a Latin square");
      seen[mul(b, a)] = stamp;
    }
  }
  auto assoc = [&](Elem a, Elem b, Elem c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
      throw std::invalid_argument("multiplication is not associative");
    }
  };
  if (n_ <= 64) {
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        for (Elem c = 0; c < n_; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    for (int i = 0; i < 100000; ++i) {
      assoc(static_cast<Elem>(rng() % n_), static_cast<Elem>(rng() % n_),
            static_cast<Elem>(rng() % n_));
    }
  }
  for (Elem a = 0; a < n_; ++a) {
    if (n_ % orders_[a] != 0) throw std::invalid_argument("element order does not divide group order");
  }
}

Elem GroupTable::pow(Elem a, std::int64_t e) const {
  const auto ord = static_cast<std::int64_t>(orders_[a]);
  std::int64_t k = e % ord;
  if (k < 0) k += ord;
  Elem result = 0, base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

namespace {

std::string cycle_label(const Permutation& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += '(';
    std::uint32_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Apply a, then b.
Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

struct PermHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : p) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

void check_budget(std::uint64_t order, std::uint64_t budget) {
  if (order > budget) {
    throw BudgetExceeded("group order " + std::to_string(order) + " exceeds the order budget " +
                         std::to_string(budget));
  }
}

}  // namespace

GroupTable closure(std::span<const Permutation> generators, std::uint32_t degree,
                   std::uint64_t order_budget) {
  if (degree > 12) throw std::invalid_argument("permutation degree above 12");
  for (const auto& g : generators) {
    if (g.size() != degree) throw std::invalid_argument("generators act on different domains");
    std::vector<bool> hit(degree, false);
    for (auto v : g) {
      if (v >= degree || hit[v]) throw std::invalid_argument("generator is not a permutation");
      hit[v] = true;
    }
  }
  Permutation id(degree);
  for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;

  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, Elem, PermHash> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : generators) {
      Permutation next = compose(elems[head], s);
      if (index.emplace(next, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(next));
        check_budget(elems.size(), order_budget);
      }
    }
  }
  const auto n = static_cast<std::uint32_t>(elems.size());
  std::vector<Elem> mul(static_cast<std::size_t>(n) * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mul[static_cast<std::size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& p : elems) labels.push_back(cycle_label(p));
  return GroupTable(n, std::move(mul), std::move(labels));
}

GroupTable cyclic(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("C0 is not a group");
  std::vector<Elem> mul(static_cast<std::size_t>(n) * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) mul[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  std::vector<std::string> labels;
  for (Elem a = 0; a < n; ++a) labels.push_back(std::to_string(a));
  return GroupTable(n, std::move(mul), std::move(labels));
}

GroupTable dihedral(std::uint32_t n, std::uint64_t order_budget) {
  if (n == 0) throw std::invalid_argument("D0 is not a group");
  check_budget(2ULL * n, order_budget);
  // r^i s^j has id i + n j; s r = r^-1 s.
  const std::uint32_t order = 2 * n;
  std::vector<Elem> mul(static_cast<std::size_t>(order) * order);
  for (Elem a = 0; a < order; ++a) {
    for (Elem b = 0; b < order; ++b) {
      const std::uint32_t i1 = a % n, j1 = a / n, i2 = b % n, j2 = b / n;
      const std::uint32_t i = (j1 == 0 ? i1 + i2 : i1 + n - i2) % n;
      mul[static_cast<std::size_t>(a) * order + b] = i + n * ((j1 + j2) % 2);
    }
  }
  std::vector<std::string> labels;
  for (Elem a = 0; a < order; ++a) {
    const std::uint32_t i = a % n, j = a / n;
    std::string l = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
    if (j == 1) l += "s";
    labels.push_back(l.empty() ? "e" : l);
  }
  return GroupTable(order, std::move(mul), std::move(labels));
}

GroupTable symmetric(std::uint32_t n, std::uint64_t order_budget) {
  if (n == 0 || n > 12) throw std::invalid_argument("S n requires 1 <= n <= 12");
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation cycle(n), swap(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      cycle[i] = (i + 1) % n;
      swap[i] = i;
    }
    std::swap(swap[0], swap[1]);
    gens = {cycle, swap};
  }
  return closure(gens, n, order_budget);
}

GroupTable alternating(std::uint32_t n, std::uint64_t order_budget) {
  if (n == 0 || n > 12) throw std::invalid_argument("A n requires 1 <= n <= 12");
  std::vector<Permutation> gens;
  for (std::uint32_t k = 2; k < n; ++k) {  // 3-cycles (1 2 k+1)
    Permutation p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return closure(gens, n, order_budget);
}

GroupTable quaternion8() {
  // Elements 1, i, j, k, -1, -i, -j, -k with ids 0..7: id = unit + 4 * sign.
  static const int kUnitProduct[4][4][2] = {
      // {unit, sign}
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  std::vector<Elem> mul(64);
  for (Elem a = 0; a < 8; ++a) {
    for (Elem b = 0; b < 8; ++b) {
      const auto& p = kUnitProduct[a % 4][b % 4];
      const int sign = (p[1] + static_cast<int>(a / 4) + static_cast<int>(b / 4)) % 2;
      mul[a * 8 + b] = static_cast<Elem>(p[0] + 4 * sign);
    }
  }
  return GroupTable(8, std::move(mul), {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b, std::uint64_t order_budget) {
  const std::uint64_t order = static_cast<std::uint64_t>(a.order()) * b.order();
  check_budget(order, order_budget);
  const auto n = static_cast<std::uint32_t>(order);
  const std::uint32_t nb = b.order();
  std::vector<Elem> mul(static_cast<std::size_t>(n) * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      mul[static_cast<std::size_t>(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (Elem x = 0; x < n; ++x) labels.push_back("(" + a.label(x / nb) + "," + b.label(x % nb) + ")");
  return GroupTable(n, std::move(mul), std::move(labels));
}

Permutation parse_permutation(std::string_view text, std::uint32_t degree) {
  Permutation p(degree);
  for (std::uint32_t i = 0; i < degree; ++i) p[i] = i;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size()) throw ParseError("expected '('", pos);
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    std::vector<std::uint32_t> cycle;
    while (true) {
      skip();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      const std::size_t start = pos;
      std::uint32_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) && v <= 12) {
        v = v * 10 + static_cast<std::uint32_t>(text[pos] - '0');
        ++pos;
      }
      if (pos == start) throw ParseError("expected point or ')'", pos);
      if (v == 0 || v > degree) throw ParseError("point out of range 1.." + std::to_string(degree), start);
      if (std::find(cycle.begin(), cycle.end(), v - 1) != cycle.end()) {
        throw ParseError("repeated point in cycle", start);
      }
      cycle.push_back(v - 1);
      skip();
      if (pos < text.size() && text[pos] == ',') throw ParseError("cycle points are space-separated", pos);
    }
    // Cycles compose left to right: apply the current permutation, then this cycle.
    Permutation c(degree);
    for (std::uint32_t i = 0; i < degree; ++i) c[i] = i;
    for (std::size_t i = 0; i < cycle.size(); ++i) c[cycle[i]] = cycle[(i + 1) % cycle.size()];
    p = compose(p, c);
    skip();
  }
  return p;
}

namespace {

class GroupSpecParser {
 public:
  GroupSpecParser(std::string_view text, std::uint64_t budget) : text_(text), budget_(budget) {}

  GroupTable parse() {
    skip();
    GroupTable g = atom();
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      if (text_[pos_] != 'x' && text_[pos_] != 'X') {
        throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
      }
      ++pos_;
      skip();
      g = direct_product(g, atom(), budget_);
    }
    return g;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::uint32_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 0xFFFFFFFFULL) throw ParseError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    return static_cast<std::uint32_t>(v);
  }

  GroupTable atom() {
    if (pos_ >= text_.size()) throw ParseError("expected a group atom", pos_);
    const std::size_t start = pos_;
    if (text_.substr(pos_, 5) == "perm:") {
      pos_ += 5;
      return permutation_atom();
    }
    const char kind = text_[pos_++];
    switch (kind) {
      case 'C': {
        const std::uint32_t n = number();
        if (n == 0) throw ParseError("C0 is not a group", start);
        if (n > budget_) throw BudgetExceeded("C" + std::to_string(n) + " exceeds the order budget");
        return cyclic(n);
      }
      case 'D': {
        const std::uint32_t n = number();
        if (n == 0) throw ParseError("D0 is not a group", start);
        return dihedral(n, budget_);
      }
      case 'S':
      case 'A': {
        const std::uint32_t n = number();
        if (n == 0 || n > 8) throw ParseError(std::string(1, kind) + "n requires 1 <= n <= 8", start);
        return kind == 'S' ? symmetric(n, budget_) : alternating(n, budget_);
      }
      case 'Q': {
        const std::uint32_t n = number();
        if (n != 8) throw ParseError("only Q8 is supported", start);
        return quaternion8();
      }
      default:
        throw ParseError(std::string("unknown group atom '") + kind + "'", start);
    }
  }

  GroupTable permutation_atom() {
    std::vector<std::pair<std::size_t, std::string_view>> pieces;
    while (true) {
      skip();
      const std::size_t start = pos_;
      if (pos_ >= text_.size() || text_[pos_] != '(') throw ParseError("expected '('", pos_);
      while (pos_ < text_.size() && text_[pos_] == '(') {
        const std::size_t close = text_.find(')', pos_);
        if (close == std::string_view::npos) throw ParseError("unterminated cycle", pos_);
        pos_ = close + 1;
        skip();
      }
      pieces.emplace_back(start, text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      break;
    }
    std::uint32_t degree = 1;
    for (const auto& [offset, piece] : pieces) {
      std::uint64_t v = 0;
      for (std::size_t i = 0; i <= piece.size(); ++i) {
        if (i < piece.size() && std::isdigit(static_cast<unsigned char>(piece[i]))) {
          v = std::min<std::uint64_t>(v * 10 + static_cast<std::uint64_t>(piece[i] - '0'), 1000);
          continue;
        }
        if (v > 12) throw ParseError("permutation points must be <= 12", offset + i);
        degree = std::max(degree, static_cast<std::uint32_t>(v));
        v = 0;
      }
    }
    std::vector<Permutation> gens;
    for (const auto& [offset, piece] : pieces) {
      try {
        gens.push_back(parse_permutation(piece, degree));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), offset + e.position());
      }
    }
    return closure(gens, degree, budget_);
  }

  std::string_view text_;
  std::uint64_t budget_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupTable build_group(std::string_view spec, std::uint64_t order_budget) {
  return GroupSpecParser(spec, order_budget).parse();
}

std::uint64_t centralizer_size(const GroupTable& g, Elem x) {
  std::uint64_t count = 0;
  for (Elem h = 0; h < g.order(); ++h) count += g.commute(h, x) ? 1 : 0;
  return count;
}

Rational commuting_probability(const GroupTable& g) {
  std::uint64_t pairs = 0;
  for (Elem h = 0; h < g.order(); ++h) pairs += centralizer_size(g, h);
  const BigInt n = g.order();
  return Rational(BigInt(pairs), n * n);
}

bool is_abelian(const GroupTable& g) {
  for (Elem a = 0; a < g.order(); ++a)
    for (Elem b = a + 1; b < g.order(); ++b)
      if (!g.commute(a, b)) return false;
  return true;
}

std::uint32_t conjugacy_class_count(const GroupTable& g) {
  std::vector<bool> seen(g.order(), false);
  std::uint32_t classes = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++classes;
    for (Elem h = 0; h < g.order(); ++h) seen[g.mul(g.mul(h, x), g.inv(h))] = true;
  }
  return classes;
}

}  // namespace wordlab
