#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wordlab/bounds.hpp"
#include "wordlab/census.hpp"
#include "wordlab/errors.hpp"
#include "wordlab/familycheck.hpp"
#include "wordlab/freeword.hpp"
#include "wordlab/group.hpp"
#include "wordlab/homset.hpp"
#include "wordlab/parallel.hpp"

namespace wordlab::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;
  std::string group;
  std::string word;
  std::optional<std::uint32_t> d;
  bool exact = false;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::uint64_t budget_iter = kDefaultIterationBudget;
  std::uint64_t budget_hom = kDefaultHomBudget;
  std::uint64_t budget_order = kDefaultOrderBudget;
  unsigned workers = default_workers();
  std::string format = "json";
  std::string out;
  std::uint64_t fuzz = 0;
  std::int64_t e = 0;
  std::string hom;
  std::string instance;
  bool timings = false;

  Json to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    if (!group.empty()) j["group"] = group;
    if (!word.empty()) j["word"] = word;
    if (d) j["d"] = *d;
    if (subcommand == "verify-theorem") j["census"] = exact ? "exact" : (samples ? "estimate" : "auto");
    if (samples) j["samples"] = std::to_string(*samples);
    j["seed"] = std::to_string(seed);
    j["budget_iter"] = std::to_string(budget_iter);
    j["budget_hom"] = std::to_string(budget_hom);
    j["budget_order"] = std::to_string(budget_order);
    j["workers"] = workers;
    j["format"] = format;
    if (subcommand == "verify-lemma") {
      j["fuzz"] = std::to_string(fuzz);
      if (!instance.empty()) j["instance"] = instance;
    }
    if (subcommand == "verify-mann") j["e"] = e;
    if (!hom.empty()) j["hom"] = hom;
    return j;
  }
};

std::string dec(std::uint64_t v) { return std::to_string(v); }

CensusOptions census_options(const RunConfig& c) {
  return CensusOptions{c.budget_iter, kDefaultMemoryBudget, c.workers};
}

Json word_json(const Word& w) { return w.str(); }

GroupTable load_group(const RunConfig& c) { return build_group(c.group, c.budget_order); }

std::uint32_t resolve_d(const RunConfig& c, const Word& w) {
  const std::uint32_t d = c.d.value_or(std::max(1U, w.arity()));
  if (d < w.arity()) {
    throw UsageError("--d " + std::to_string(d) + " is below the word arity " + std::to_string(w.arity()));
  }
  if (d == 0) throw UsageError("--d must be positive");
  return d;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

// "--hom a,b;c,d": one ';'-separated component per coordinate, each a
// ','-separated list of element ids giving the images of the generating sequence.
Hom parse_hom(const std::string& text, const GroupTable& g, std::uint32_t d) {
  const GeneratingSequence gens = generating_sequence(g);
  const auto parts = split(text, ';');
  if (parts.size() != d) {
    throw UsageError("--hom has " + std::to_string(parts.size()) + " components, expected " + std::to_string(d));
  }
  std::vector<Endo> comps;
  for (const auto& part : parts) {
    std::vector<Elem> images;
    for (const auto& tok : split(part, ',')) {
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        images.push_back(static_cast<Elem>(v));
      } catch (const std::exception&) {
        throw UsageError("--hom: '" + tok + "' is not an element id");
      }
    }
    try {
      comps.push_back(endo_from_generator_images(g, gens, images));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--hom: ") + e.what());
    }
  }
  try {
    return make_hom(g, std::move(comps));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--hom: ") + e.what());
  }
}

Json hom_json(const GroupTable& g, const Hom& phi) {
  const GeneratingSequence gens = generating_sequence(g);
  Json comps = Json::array();
  for (const auto& c : phi.components) {
    Json images = Json::array();
    for (Elem s : gens.generators) images.push_back(c(s));
    comps.push_back(images);
  }
  return comps;
}

Json census_json(const CensusResult& r) {
  Json j;
  j["mode"] = r.mode == CensusMode::exact ? "exact" : "estimate";
  if (r.mode == CensusMode::exact) {
    j["solutions"] = dec(r.count);
    j["tuples"] = to_decimal(r.space_size);
    j["proportion"] = r.proportion().str();
  } else {
    j["hits"] = dec(r.count);
    j["samples"] = dec(r.trials);
    j["seed"] = dec(r.seed);
    j["estimate"] = r.proportion().str();
    j["ci95_half_width"] = r.half_width();
    j["tuples"] = to_decimal(r.space_size);
  }
  return j;
}

Json optional_flag(const std::optional<bool>& f) { return f ? Json(*f) : Json(nullptr); }

struct Outcome {
  Json results;
  bool pass = true;
};

Outcome verify_theorem_cmd(const RunConfig& c) {
  const GroupTable g = load_group(c);
  const Word w = parse_word(c.word);
  const std::uint32_t d = resolve_d(c, w);
  TheoremOptions opt;
  opt.census = census_options(c);
  opt.hom_budget = c.budget_hom;
  opt.policy = c.exact ? CensusPolicy::exact : (c.samples ? CensusPolicy::estimate : CensusPolicy::automatic);
  opt.samples = c.samples.value_or(kDefaultSamples);
  opt.seed = c.seed;
  if (!c.hom.empty()) opt.hom = parse_hom(c.hom, g, d);
  const TheoremReport r = verify_theorem(w, g, d, opt);

  Json j;
  j["group_order"] = g.order();
  j["word"] = word_json(w);
  j["d"] = d;
  j["derived_word"] = word_json(r.derived);
  j["derived_length"] = dec(r.derived.length());
  j["homomorphism"] = r.hom_searched ? "maximised" : "fixed";
  j["homs_examined"] = dec(r.homs_examined);
  j["agreement"] = dec(r.agreement);
  j["tuples"] = dec(r.tuples);
  j["rho"] = r.bound.rho.str();
  j["f1"] = r.bound.f1.str();
  j["f2"] = r.bound.f2.str();
  j["f"] = r.bound.f.str();
  j["required"] = r.required.str();
  j["census"] = census_json(r.solutions);
  if (r.pairs) {
    Json p;
    p["threshold"] = (r.bound.f2 * Rational(BigInt(r.tuples))).str();
    p["qualifying_pairs"] = dec(r.pairs->qualifying_pairs);
    p["required_pairs"] = r.required_pairs.str();
    p["total_pairs"] = dec(r.pairs->total_pairs);
    p["triple_lower_bound"] = dec(r.pairs->pair_lower_bound);
    j["pairs"] = p;
    j["triples"] = dec(*r.triples);
    if (r.solutions.mode == CensusMode::exact) j["solutions_outside_triples"] = dec(r.solutions.count - *r.triples);
  } else {
    j["pairs"] = nullptr;
    j["triples"] = nullptr;
  }
  if (opt.hom) j["witness"] = hom_json(g, *opt.hom);
  Json checks;
  checks["theorem"] = r.theorem_pass;
  checks["statistical"] = r.solutions.mode == CensusMode::estimate;
  checks["lemma_pairs"] = optional_flag(r.lemma_pass);
  checks["chain"] = optional_flag(r.chain_pass);
  checks["solutions_cover_triples"] = optional_flag(r.solutions_cover_triples);
  j["checks"] = checks;
  return {j, r.pass()};
}

Outcome verify_mann_cmd(const RunConfig& c) {
  const GroupTable g = load_group(c);
  const MannReport r = verify_mann_equivalence(c.e, g, census_options(c));
  Json j;
  j["group_order"] = g.order();
  j["e"] = c.e;
  j["equation_solutions"] = dec(r.direct);
  j["derived_word"] = word_json(derived_word(Word::variable(1, c.e), 1));
  j["derived_solutions"] = dec(r.derived);
  j["equal"] = r.equal();
  return {j, r.equal()};
}

Outcome verify_commuting_cmd(const RunConfig& c) {
  const GroupTable g = load_group(c);
  TheoremOptions opt;
  opt.census = census_options(c);
  opt.hom_budget = c.budget_hom;
  opt.samples = c.samples.value_or(kDefaultSamples);
  opt.seed = c.seed;
  if (!c.hom.empty()) opt.hom = parse_hom(c.hom, g, 2);
  const CommutingReport r = verify_commuting_corollary(g, opt);
  Json j;
  j["group_order"] = g.order();
  j["rho"] = r.rho.str();
  j["bound"] = r.bound.str();
  j["commuting_probability"] = r.probability.str();
  j["conjugacy_classes"] = r.classes;
  j["bound_holds"] = r.bound_holds;
  j["class_identity_holds"] = r.class_identity_holds;
  Json eq;
  eq["mode"] = r.equation_exhaustive ? "exhaustive" : "sampled";
  eq["checked"] = dec(r.equation_checked);
  eq["mismatches"] = dec(r.equation_mismatches);
  j["rearranged_equation"] = eq;
  return {j, r.pass()};
}

Json lemma_json(const family::LemmaReport& r) {
  Json j;
  j["qualifying_pairs"] = dec(r.qualifying_pairs);
  j["threshold"] = r.threshold.str();
  j["required"] = r.required.str();
  j["symmetric"] = r.symmetric;
  j["pass"] = r.pass;
  return j;
}

Outcome verify_lemma_cmd(const RunConfig& c) {
  Json j;
  bool pass = true;
  if (!c.instance.empty()) {
    std::ifstream in(c.instance);
    if (!in) throw UsageError("cannot open --instance " + c.instance);
    const family::FamilyInstance inst = family::load_instance(in);
    const auto r = family::verify_lemma(inst, c.workers);
    j["instance"] = lemma_json(r);
    return {j, r.pass};
  }
  std::uint64_t fuzz_pass = 0;
  Json failures = Json::array();
  for (std::uint64_t k = 0; k < c.fuzz; ++k) {
    const auto inst = family::fuzz_instance(c.seed, k);
    const auto r = family::verify_lemma(inst, c.workers);
    if (r.pass && r.symmetric && r.diagonal_qualifies) {
      ++fuzz_pass;
    } else {
      std::ostringstream os;
      family::save_instance(os, inst);
      failures.push_back({{"index", dec(k)}, {"instance", os.str()}, {"report", lemma_json(r)}});
    }
  }
  j["fuzz"] = {{"instances", dec(c.fuzz)}, {"passed", dec(fuzz_pass)}, {"failures", failures}};
  pass = fuzz_pass == c.fuzz;

  Json adv = Json::array();
  std::uint64_t adv_pass = 0;
  const auto fams = family::adversarial_families();
  for (const auto& [name, inst] : fams) {
    const auto r = family::verify_lemma(inst, c.workers);
    Json e = lemma_json(r);
    e["name"] = name;
    adv.push_back(e);
    adv_pass += r.pass ? 1 : 0;
  }
  j["adversarial"] = {{"instances", dec(fams.size())}, {"passed", dec(adv_pass)}, {"cases", adv}};
  pass = pass && adv_pass == fams.size();
  return {j, pass};
}

Outcome derive_word_cmd(const RunConfig& c) {
  const Word w = parse_word(c.word);
  const std::uint32_t d = c.d.value_or(w.arity());
  if (d < w.arity()) throw UsageError("--d is below the word arity");
  const Word v = derived_word(w, d);
  Json j;
  j["word"] = word_json(w);
  j["d"] = d;
  j["derived_word"] = word_json(v);
  j["length"] = dec(v.length());
  j["variables"] = 3 * d;
  j["nontrivial"] = !v.empty();
  return {j, true};
}

Outcome fiber_stats_cmd(const RunConfig& c) {
  const GroupTable g = load_group(c);
  const Word w = parse_word(c.word);
  const std::uint32_t d = resolve_d(c, w);
  const FiberStats s = fiber_stats(w, g, d, census_options(c));
  Json j;
  j["group_order"] = g.order();
  j["word"] = word_json(w);
  j["d"] = d;
  Json fibers = Json::array();
  for (auto f : s.fibers) fibers.push_back(dec(f));
  j["fibers"] = fibers;
  Json hist = Json::object();
  for (const auto& [size, count] : s.histogram) hist[dec(size)] = count;
  j["histogram"] = hist;
  j["largest_fiber_element"] = s.largest;
  j["largest_fiber_label"] = g.label(s.largest);
  j["max_fiber_proportion"] = s.max_proportion.str();
  return {j, true};
}

Outcome hom_search_cmd(const RunConfig& c) {
  const GroupTable g = load_group(c);
  const std::uint32_t d = c.d.value_or(1);
  if (d == 0) throw UsageError("--d must be positive");
  const GeneratingSequence gens = generating_sequence(g);
  const auto ends = endomorphisms(g, c.budget_hom, c.workers);
  std::uint64_t autos = 0;
  for (const auto& e : ends) autos += e.is_bijective() ? 1 : 0;
  Json j;
  j["group_order"] = g.order();
  Json gj = Json::array();
  for (Elem s : gens.generators) gj.push_back({{"id", s}, {"label", g.label(s)}});
  j["generators"] = gj;
  j["endomorphisms"] = dec(ends.size());
  j["automorphisms"] = dec(autos);
  j["d"] = d;
  j["homomorphisms"] = dec(homs_power(g, d, c.budget_hom, c.workers).size());
  if (!c.word.empty()) {
    const Word w = parse_word(c.word);
    if (d < w.arity()) throw UsageError("--d is below the word arity");
    const BestAgreement best = best_agreement(w, g, d, {c.budget_hom, kDefaultMemoryBudget, c.workers});
    j["word"] = word_json(w);
    j["best_agreement"] = dec(best.count);
    j["rho"] = best.rho.str();
    j["witness"] = hom_json(g, best.witness);
  }
  return {j, true};
}

Outcome commuting_probability_cmd(const RunConfig& c) {
  const GroupTable g = load_group(c);
  Json j;
  j["group_order"] = g.order();
  j["commuting_probability"] = commuting_probability(g).str();
  j["conjugacy_classes"] = conjugacy_class_count(g);
  j["abelian"] = is_abelian(g);
  return {j, true};
}

void print_text(std::ostream& os, const Json& j, const std::string& indent) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      os << indent << key << ":\n";
      print_text(os, value, indent + "  ");
    } else if (value.is_string()) {
      os << indent << key << ": " << value.get<std::string>() << '\n';
    } else {
      os << indent << key << ": " << value.dump() << '\n';
    }
  }
}

void emit(const RunConfig& c, const Json& report, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw UsageError("cannot write --out " + c.out);
    os = &file;
  }
  if (c.format == "text") {
    print_text(*os, report, "");
  } else {
    *os << report.dump(2) << '\n';
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Word-map approximability verification tool"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--budget-iter", cfg.budget_iter, "Iteration budget for exhaustive scans")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget-hom", cfg.budget_hom, "Candidate budget for homomorphism search")
        ->check(CLI::PositiveNumber);
    sub->add_option("--budget-order", cfg.budget_order, "Largest group order accepted")->check(CLI::PositiveNumber);
    sub->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "Write the report to a file");
    sub->add_flag("--timings", cfg.timings, "Record wall-clock timings (makes reports run-dependent)");
  };
  auto d_opt = [&](CLI::App* sub) {
    sub->add_option_function<std::uint32_t>("--d", [&](const std::uint32_t& v) { cfg.d = v; }, "Arity d");
  };
  auto sampling = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>("--samples", [&](const std::uint64_t& v) { cfg.samples = v; },
                                            "Monte Carlo sample count");
    sub->add_option("--seed", cfg.seed, "PRNG seed");
  };

  auto* theorem = app.add_subcommand("verify-theorem", "Check the solution-count bound for a word and group");
  theorem->add_option("--group", cfg.group, "Group spec")->required();
  theorem->add_option("--word", cfg.word, "Word")->required();
  d_opt(theorem);
  auto* exact = theorem->add_flag("--exact", cfg.exact, "Require an exact census");
  sampling(theorem);
  exact->excludes(theorem->get_option("--samples"));
  theorem->add_option("--hom", cfg.hom, "Fixed homomorphism: generator images per component, e.g. \"0,0;1,2\"");
  common(theorem);

  auto* mann = app.add_subcommand("verify-mann", "Compare (xyz)^e = x^e y^e z^e with the derived-word census");
  mann->add_option("--group", cfg.group, "Group spec")->required();
  mann->add_option("-e", cfg.e, "Exponent")->required();
  common(mann);

  auto* commuting = app.add_subcommand("verify-commuting", "Check the commuting-probability bound");
  commuting->add_option("--group", cfg.group, "Group spec")->required();
  sampling(commuting);
  commuting->add_option("--hom", cfg.hom, "Fixed homomorphism G^2 -> G");
  common(commuting);

  auto* lemma = app.add_subcommand("verify-lemma", "Fuzz the set-family pair bound");
  lemma->add_option("--fuzz", cfg.fuzz, "Number of seeded random instances");
  lemma->add_option("--seed", cfg.seed, "PRNG seed");
  lemma->add_option("--instance", cfg.instance, "Check one instance file instead");
  common(lemma);

  auto* derive = app.add_subcommand("derive-word", "Print the derived word");
  derive->add_option("--word", cfg.word, "Word")->required();
  d_opt(derive);
  common(derive);

  auto* fibers = app.add_subcommand("fiber-stats", "Fiber sizes of a word map");
  fibers->add_option("--group", cfg.group, "Group spec")->required();
  fibers->add_option("--word", cfg.word, "Word")->required();
  d_opt(fibers);
  common(fibers);

  auto* homs = app.add_subcommand("hom-search", "Enumerate endomorphisms and homomorphisms G^d -> G");
  homs->add_option("--group", cfg.group, "Group spec")->required();
  homs->add_option("--word", cfg.word, "Optional word for best agreement");
  d_opt(homs);
  common(homs);

  auto* cp = app.add_subcommand("commuting-probability", "Exact commuting probability");
  cp->add_option("--group", cfg.group, "Group spec")->required();
  common(cp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    std::ostringstream diag;
    app.exit(e, out, diag);
    err << "usage error: " << diag.str();
    return e.get_exit_code() == 0 ? kPass : kUsageError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  if (cfg.samples && *cfg.samples < 1000) {
    err << "usage error: --samples must be at least 1000\n";
    return kUsageError;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome outcome;
    const std::string& s = cfg.subcommand;
    if (s == "verify-theorem") outcome = verify_theorem_cmd(cfg);
    else if (s == "verify-mann") outcome = verify_mann_cmd(cfg);
    else if (s == "verify-commuting") outcome = verify_commuting_cmd(cfg);
    else if (s == "verify-lemma") outcome = verify_lemma_cmd(cfg);
    else if (s == "derive-word") outcome = derive_word_cmd(cfg);
    else if (s == "fiber-stats") outcome = fiber_stats_cmd(cfg);
    else if (s == "hom-search") outcome = hom_search_cmd(cfg);
    else outcome = commuting_probability_cmd(cfg);

    Json report;
    report["config"] = cfg.to_json();
    report["results"] = outcome.results;
    report["pass"] = outcome.pass;
    report["timings"] = Json::object();
    if (cfg.timings) {
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      report["timings"]["wall_ms"] = ms;
    }
    emit(cfg, report, out);
    if (!outcome.pass) err << "check failed: see report\n";
    return outcome.pass ? kPass : kCheckFailed;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsageError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wordlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wordlab::cli
