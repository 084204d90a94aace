#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wordlab/bounds.hpp"
#include "wordlab/census.hpp"
#include "wordlab/familycheck.hpp"
#include "wordlab/freeword.hpp"
#include "wordlab/group.hpp"
#include "wordlab/homset.hpp"
#include "wordlab/random.hpp"

using namespace wordlab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Case {
  std::string group;
  std::string word;
  std::uint32_t d;
};

const std::vector<std::string> kBatteryGroups = {"C1", "C2", "C3", "C4", "C5", "C6",   "C7", "C8",
                                                 "C2xC2", "C2xC4", "S3", "D4", "Q8", "A4"};
const std::vector<std::string> kBatteryWords = {"x1^2", "x1^3", "x1^-1", "x1^5", "x1*x2", "x1*x2*x1^-1*x2^-1"};

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<Case> battery_cases() {
  std::vector<Case> out;
  for (const auto& gs : kBatteryGroups) {
    const std::uint32_t n = build_group(gs).order();
    for (const auto& ws : kBatteryWords) {
      const std::uint32_t arity = parse_word(ws).arity();
      for (std::uint32_t d = arity; d <= 2; ++d) {
        if (d == 2 && (n > 8 || gs == "A4")) continue;
        out.push_back({gs, ws, d});
      }
    }
  }
  return out;
}

struct BatteryEntry {
  Case c;
  TheoremReport report;
};

std::vector<BatteryEntry>& battery() {
  static std::vector<BatteryEntry> entries = [] {
    std::vector<BatteryEntry> v;
    TheoremOptions opt;
    opt.policy = CensusPolicy::exact;
    for (const auto& c : battery_cases()) {
      const GroupTable g = build_group(c.group);
      v.push_back({c, verify_theorem(parse_word(c.word), g, c.d, opt)});
    }
    return v;
  }();
  return entries;
}

std::string case_name(const Case& c) { return c.group + "/" + c.word + "/d=" + std::to_string(c.d); }

// Best agreement proportion by scanning brute-force homomorphism tables.
Rational brute_rho(const Word& w, const GroupTable& g, std::uint32_t d) {
  const auto homs = oracle::brute_force_homs(g, d);
  std::vector<Elem> wvals;
  oracle::for_each_tuple(g, d, [&](const std::vector<Elem>& t) { wvals.push_back(oracle::eval(w, g, t)); });
  std::uint64_t best = 0;
  for (const auto& h : homs) {
    std::uint64_t agree = 0;
    for (std::size_t i = 0; i < wvals.size(); ++i) agree += h[i] == wvals[i] ? 1 : 0;
    best = std::max(best, agree);
  }
  return Rational(BigInt(best), BigInt(wvals.size()));
}

Verdict criterion1() {
  struct Row {
    Rational rho, f1, f2, f;
  };
  const std::vector<Row> rows = {
      {Rational::parse("1/1"), Rational::parse("1/24"), Rational::parse("1/6"), Rational::parse("1/144")},
      {Rational::parse("1/2"), Rational::parse("1/192"), Rational::parse("1/40"), Rational::parse("1/7680")},
      {Rational::parse("1/3"), Rational::parse("1/648"), Rational::parse("1/126"), Rational::parse("1/81648")},
  };
  Verdict v;
  std::ostringstream os;
  for (const auto& r : rows) {
    const bool exact = bounds::f1(r.rho) == r.f1 && bounds::f2(r.rho) == r.f2 && bounds::f(r.rho).f == r.f;
    // Independent floating evaluation of the same formulas.
    const long double rho = r.rho.to_double();
    const long double c = std::ceil(2.0L / rho - 1e-12L);
    const long double f1 = std::min(rho * rho / (12 * c), rho * rho * rho / (4 * c));
    const long double f2 = rho / (c * (c + 1));
    auto close = [](long double a, const Rational& b) {
      return std::fabs(a - static_cast<long double>(b.to_double())) <= 1e-15L * std::fabs(a);
    };
    const bool numeric = close(f1, r.f1) && close(f2, r.f2) && close(f1 * f2, r.f);
    v.pass = v.pass && exact && numeric;
    os << "rho=" << r.rho << (exact && numeric ? " ok " : " MISMATCH ");
  }
  v.detail = os.str();
  return v;
}

Verdict criterion2() {
  Verdict v;
  std::uint64_t passed = 0, brute_checked = 0;
  std::ostringstream failures;
  for (const auto& e : battery()) {
    const auto& r = e.report;
    const GroupTable g = build_group(e.c.group);
    const Word w = parse_word(e.c.word);
    const BigInt space = pow(BigInt(g.order()), 3 * e.c.d);
    const Rational required = bounds::f(r.bound.rho).f * Rational(space);
    const Rational chain_floor = bounds::f1(r.bound.rho) * bounds::f2(r.bound.rho) * Rational(space);
    bool ok = r.pass() && r.solutions.mode == CensusMode::exact && r.triples.has_value();
    ok = ok && Rational(BigInt(r.solutions.count)) >= required;
    ok = ok && r.triples && r.solutions.count >= *r.triples && Rational(BigInt(*r.triples)) >= chain_floor;
    if (ipow(g.order(), e.c.d) <= 6) {
      ++brute_checked;
      ok = ok && brute_rho(w, g, e.c.d) == r.bound.rho;
    }
    if (ok) {
      ++passed;
    } else {
      failures << ' ' << case_name(e.c);
    }
  }
  v.pass = passed == battery().size();
  v.detail = std::to_string(passed) + "/" + std::to_string(battery().size()) + " cases, rho brute-forced on " +
             std::to_string(brute_checked) + failures.str();
  return v;
}

Verdict criterion3() {
  Verdict v;
  std::ostringstream os;
  for (const std::string gs : {"S3", "D4", "Q8", "C6"}) {
    const GroupTable g = build_group(gs);
    for (std::int64_t e : {-1, 2, 3}) {
      const MannReport r = verify_mann_equivalence(e, g);
      const Word xe = Word::variable(1, e);
      std::uint64_t direct = 0;
      oracle::for_each_tuple(g, 3, [&](const std::vector<Elem>& t) {
        const Elem xyz = g.mul(g.mul(t[0], t[1]), t[2]);
        const Elem lhs = oracle::eval(xe, g, {xyz});
        const Elem rhs = g.mul(g.mul(oracle::eval(xe, g, {t[0]}), oracle::eval(xe, g, {t[1]})),
                               oracle::eval(xe, g, {t[2]}));
        direct += lhs == rhs ? 1 : 0;
      });
      const std::uint64_t derived = oracle::naive_census(xe, g, 1);
      const bool ok = r.equal() && r.direct == direct && r.derived == derived && direct == derived;
      v.pass = v.pass && ok;
      os << gs << ",e=" << e << ':' << direct << (ok ? " " : "(MISMATCH) ");
    }
  }
  v.detail = os.str();
  return v;
}

Verdict criterion4() {
  Verdict v;
  std::uint64_t checked = 0;
  std::ostringstream failures;
  for (const auto& e : battery()) {
    const GroupTable g = build_group(e.c.group);
    if (!is_abelian(g)) continue;
    // Independent abelian check by pair scan.
    if (oracle::commuting_pairs(g) != static_cast<std::uint64_t>(g.order()) * g.order()) {
      v.pass = false;
      failures << ' ' << e.c.group << "(not abelian)";
      continue;
    }
    ++checked;
    const bool ok = e.report.bound.rho == Rational(1) &&
                    BigInt(e.report.solutions.count) == pow(BigInt(g.order()), 3 * e.c.d);
    if (!ok) failures << ' ' << case_name(e.c);
    v.pass = v.pass && ok;
  }
  v.pass = v.pass && checked > 0;
  v.detail = std::to_string(checked) + " abelian cases saturated" + failures.str();
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::ostringstream os;
  const std::map<std::string, std::string> expected = {{"S3", "1/2"}, {"D4", "5/8"}, {"Q8", "5/8"}, {"A4", "1/3"}};
  for (const auto& [gs, cp] : expected) {
    const GroupTable g = build_group(gs);
    const Rational brute(BigInt(oracle::commuting_pairs(g)), BigInt(g.order()) * g.order());
    const bool ok = commuting_probability(g) == Rational::parse(cp) && brute == Rational::parse(cp) &&
                    Rational(BigInt(conjugacy_class_count(g)), BigInt(g.order())) == brute;
    v.pass = v.pass && ok;
    os << gs << '=' << brute << (ok ? " " : "(MISMATCH) ");
  }
  std::uint64_t corollary_ok = 0;
  for (const auto& gs : kBatteryGroups) {
    const GroupTable g = build_group(gs);
    const CommutingReport r = verify_commuting_corollary(g);
    bool ok = r.pass() && commuting_probability(g) >= bounds::commuting_bound(r.rho);
    for (const auto& e : battery()) {
      if (e.c.group == gs && e.c.word == "x1*x2" && e.c.d == 2) ok = ok && e.report.bound.rho == r.rho;
    }
    if (ok) {
      ++corollary_ok;
    } else {
      os << gs << "(corollary FAILED) ";
    }
  }
  v.pass = v.pass && corollary_ok == kBatteryGroups.size();
  os << "corollary " << corollary_ok << '/' << kBatteryGroups.size();
  v.detail = os.str();
  return v;
}

// Qualifying ordered pairs via a two-pointer merge of the sorted member lists.
bool lemma_oracle(const family::FamilyInstance& inst, std::uint64_t reported) {
  const Rational rho = inst.rho();
  const std::uint64_t c = static_cast<std::uint64_t>((Rational(2) / rho).ceil().convert_to<std::int64_t>());
  const std::uint64_t m = inst.i_size();
  const auto num = rho.num().convert_to<std::uint64_t>();
  const auto den = rho.den().convert_to<std::uint64_t>();
  std::uint64_t q = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const auto& sa = inst.set(a);
      const auto& sb = inst.set(b);
      std::uint64_t common = 0;
      for (std::size_t i = 0, j = 0; i < sa.size() && j < sb.size();) {
        if (sa[i] < sb[j]) {
          ++i;
        } else if (sb[j] < sa[i]) {
          ++j;
        } else {
          ++common, ++i, ++j;
        }
      }
      // |common| >= rho |X| / (c (c+1))
      q += common * den * c * (c + 1) >= num * inst.x_size() ? 1 : 0;
    }
  }
  // q >= min(rho^2/(12c), rho^3/(4c)) m^2
  const Rational need = std::min(rho * rho / Rational(12 * c), rho * rho * rho / Rational(4 * c)) *
                        Rational(BigInt(m) * m);
  return q == reported && Rational(BigInt(q)) >= need;
}

Verdict criterion6() {
  Verdict v;
  std::uint64_t fuzz_ok = 0, adv_ok = 0;
  const std::uint64_t kFuzz = 1000;
  for (std::uint64_t k = 0; k < kFuzz; ++k) {
    const auto inst = family::fuzz_instance(7, k);
    const auto r = family::verify_lemma(inst);
    if (r.pass && r.symmetric && r.diagonal_qualifies && lemma_oracle(inst, r.qualifying_pairs)) ++fuzz_ok;
  }
  const auto adv = family::adversarial_families();
  std::ostringstream failures;
  for (const auto& [name, inst] : adv) {
    const auto r = family::verify_lemma(inst);
    if (r.pass && r.symmetric && r.diagonal_qualifies && lemma_oracle(inst, r.qualifying_pairs)) {
      ++adv_ok;
    } else {
      failures << ' ' << name;
    }
  }
  v.pass = fuzz_ok == kFuzz && adv_ok == adv.size();
  v.detail = "fuzz " + std::to_string(fuzz_ok) + "/" + std::to_string(kFuzz) + ", adversarial " +
             std::to_string(adv_ok) + "/" + std::to_string(adv.size()) + failures.str();
  return v;
}

// Letter-level derivation with its own free reduction: x_i -> x_i^-1 y_i z_i.
std::vector<int> derive_letters(const std::vector<int>& w, int d) {
  auto image = [&](int letter) {
    const int i = std::abs(letter);
    std::vector<int> img = {-i, d + i, 2 * d + i};
    if (letter < 0) {
      std::reverse(img.begin(), img.end());
      for (auto& x : img) x = -x;
    }
    return img;
  };
  std::vector<int> raw;
  for (int l : w)
    for (int x : image(l)) raw.push_back(x);
  auto inverse = [](std::vector<int> u) {
    std::reverse(u.begin(), u.end());
    for (auto& x : u) x = -x;
    return u;
  };
  auto shifted = [&](int k) {
    std::vector<int> u;
    for (int l : w) u.push_back(l > 0 ? l + k * d : l - k * d);
    return u;
  };
  const auto wz = inverse(shifted(2)), wy = inverse(shifted(1)), wx = shifted(0);
  raw.insert(raw.end(), wz.begin(), wz.end());
  raw.insert(raw.end(), wy.begin(), wy.end());
  raw.insert(raw.end(), wx.begin(), wx.end());
  std::vector<int> stack;
  for (int l : raw) {
    if (!stack.empty() && stack.back() == -l) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return stack;
}

std::vector<int> to_letters(const Word& w) {
  std::vector<int> out;
  for (const auto& s : w.syllables()) {
    const int l = s.exp > 0 ? static_cast<int>(s.var) : -static_cast<int>(s.var);
    for (std::int64_t k = 0; k < std::abs(s.exp); ++k) out.push_back(l);
  }
  return out;
}

Verdict criterion7() {
  Verdict v;
  SplitMix64 rng(2024);
  std::uint64_t nonempty = 0, agree = 0;
  const std::uint64_t kWords = 500;
  for (std::uint64_t k = 0; k < kWords; ++k) {
    const std::uint64_t len = 2 + rng.uniform(19);
    const int vars = 1 + static_cast<int>(rng.uniform(3));
    std::vector<int> letters;
    while (letters.size() < len) {
      int l = 1 + static_cast<int>(rng.uniform(vars));
      if (rng.uniform(2) == 1) l = -l;
      if (!letters.empty() && letters.back() == -l) continue;
      letters.push_back(l);
    }
    std::vector<Syllable> syl;
    for (int l : letters) syl.push_back({static_cast<std::uint32_t>(std::abs(l)), l > 0 ? 1 : -1});
    const Word w = reduce(syl);
    if (to_letters(w) != letters) {
      v.pass = false;
      continue;
    }
    const Word dv = derived_word(w);
    nonempty += dv.empty() ? 0 : 1;
    const auto ref = derive_letters(letters, static_cast<int>(w.arity()));
    agree += ref == to_letters(dv) && !ref.empty() ? 1 : 0;
  }
  const bool trivial_empty = derived_word(parse_word("x1")).empty() && derive_letters({1}, 1).empty();
  v.pass = v.pass && nonempty == kWords && agree == kWords && trivial_empty;
  v.detail = std::to_string(nonempty) + "/" + std::to_string(kWords) + " nonempty, " + std::to_string(agree) +
             " match the letter-level oracle, x1 -> " + (trivial_empty ? "empty" : "NONEMPTY");
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::vector<std::string> groups;
  for (const auto& gs : kBatteryGroups)
    if (build_group(gs).order() <= 16) groups.push_back(gs);
  for (const std::string gs : {"D8", "C16", "C4xC4", "C2xC2xC2xC2"}) groups.push_back(gs);
  const std::map<std::string, std::size_t> aut_order = {{"S3", 6}, {"D4", 8}, {"Q8", 24}, {"A4", 24}, {"D8", 32}};
  struct Threshold {
    std::int64_t e;
    std::uint64_t num, den;
  };
  const std::vector<Threshold> thresholds = {{-1, 3, 4}, {2, 1, 2}, {3, 3, 4}};
  std::ostringstream os;
  std::uint64_t nonabelian = 0;
  for (const auto& gs : groups) {
    const GroupTable g = build_group(gs);
    if (oracle::commuting_pairs(g) == static_cast<std::uint64_t>(g.order()) * g.order()) continue;
    ++nonabelian;
    const auto auts = automorphisms(g);
    bool ok = aut_order.count(gs) == 1 && auts.size() == aut_order.at(gs);
    os << gs << '[';
    for (const auto& t : thresholds) {
      const Word xe = Word::variable(1, t.e);
      std::uint64_t best = 0;
      for (const auto& a : auts) {
        std::uint64_t agree = 0;
        for (Elem x = 0; x < g.order(); ++x) agree += a(x) == oracle::eval(xe, g, {x}) ? 1 : 0;
        best = std::max(best, agree);
      }
      const Rational best_rho(BigInt(best), BigInt(g.order()));
      ok = ok && best * t.den <= t.num * g.order() && power_agreement_profile(g, t.e, true) == best_rho;
      os << ' ' << best_rho;
    }
    os << (ok ? " ] " : " FAILED] ");
    v.pass = v.pass && ok;
  }
  v.pass = v.pass && nonabelian == aut_order.size();
  v.detail = os.str();
  return v;
}

Verdict criterion9() {
  Verdict v;
  const GroupTable g = build_group("S3");
  const Word w = parse_word("x1*x2");
  const std::uint64_t truth = oracle::naive_census(w, g, 2);
  const Rational exact(BigInt(truth), BigInt(ipow(6, 6)));
  const bool exact_ok = count_solutions_exact(w, g, 2).count == truth;
  std::uint64_t covered = 0;
  const std::uint64_t kRuns = 100, kSamples = 100'000;
  for (std::uint64_t seed = 0; seed < kRuns; ++seed) {
    covered += estimate_solutions(w, g, 2, kSamples, seed).ci_covers(exact) ? 1 : 0;
  }
  const CensusResult a = estimate_solutions(w, g, 2, kSamples, 12345);
  const CensusResult b = estimate_solutions(w, g, 2, kSamples, 12345);
  const CensusResult c = estimate_solutions(w, g, 2, kSamples, 12345, CensusOptions{kDefaultIterationBudget, 0, 1});
  const bool reproducible = a.count == b.count && a.count == c.count && a.half_width() == b.half_width();
  v.pass = exact_ok && covered >= 90 && reproducible;
  v.detail = "exact " + exact.str() + ", covered " + std::to_string(covered) + "/" + std::to_string(kRuns) +
             (reproducible ? ", reproducible" : ", NOT reproducible");
  return v;
}

Verdict criterion10() {
  Verdict v;
  std::uint64_t census_cases = 0, census_ok = 0;
  for (const auto& e : battery()) {
    const GroupTable g = build_group(e.c.group);
    if (ipow(g.order(), 3 * e.c.d) > 100'000) continue;
    ++census_cases;
    const Word w = parse_word(e.c.word);
    const std::uint64_t naive = oracle::naive_census(w, g, e.c.d);
    census_ok += naive == count_solutions_exact(w, g, e.c.d).count && naive == e.report.solutions.count ? 1 : 0;
  }
  struct HomCase {
    std::string group;
    std::uint32_t d;
  };
  const std::vector<HomCase> hom_cases = {{"C2", 1}, {"C2", 2}, {"C3", 1}, {"C3", 2}, {"C4", 1}, {"C2xC2", 1}};
  std::ostringstream os;
  std::uint64_t hom_ok = 0;
  for (const auto& hc : hom_cases) {
    const GroupTable g = build_group(hc.group);
    std::set<std::vector<Elem>> lib;
    for (const auto& phi : homs_power(g, hc.d)) {
      std::vector<Elem> table;
      oracle::for_each_tuple(g, hc.d, [&](const std::vector<Elem>& t) { table.push_back(phi.apply(g, t)); });
      lib.insert(table);
    }
    const auto brute = oracle::brute_force_homs(g, hc.d);
    const bool ok = lib == brute && homs_power(g, hc.d).size() == brute.size();
    hom_ok += ok ? 1 : 0;
    os << ' ' << hc.group << "^" << hc.d << ':' << brute.size() << (ok ? "" : "(MISMATCH)");
  }
  v.pass = census_ok == census_cases && census_cases > 0 && hom_ok == hom_cases.size();
  v.detail = "census " + std::to_string(census_ok) + "/" + std::to_string(census_cases) + ", homs" + os.str();
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"bound table", criterion1},
      {"theorem battery (exact)", criterion2},
      {"Mann specialization", criterion3},
      {"abelian saturation", criterion4},
      {"commuting probabilities", criterion5},
      {"set-family lemma fuzz", criterion6},
      {"derived-word nontriviality", criterion7},
      {"power-map threshold sanity", criterion8},
      {"estimator calibration", criterion9},
      {"oracle equivalence", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first << "): "
              << v.detail << " [" << std::fixed << std::setprecision(2) << secs << "s]" << std::endl;
  }
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
