#pragma once

#include <limits>
#include <optional>
#include <sstream>

#include "chyp/explorer.hpp"
#include "chyp/jorgensen.hpp"

namespace chyp {

enum class AnalysisMode { TestMap, TwoLoxodromic, Stabilizer };

inline std::string to_string(AnalysisMode m) {
  switch (m) {
    case AnalysisMode::TestMap: return "test-map";
    case AnalysisMode::TwoLoxodromic: return "two-loxodromic";
    case AnalysisMode::Stabilizer: return "stabilizer";
  }
  return "?";
}

struct ReportOptions {
  AnalysisMode mode = AnalysisMode::TestMap;
  int depth = 6;
  int max_depth = 12;
  /// Near-identity evidence threshold (operator norm by default).
  double epsilon = 0.05;
  /// Norm bound for the torsion elements collected by the Condition A scan.
  double condition_a_epsilon = jorgensen_threshold();
  std::optional<NamedIsometry> test_map;
  JorgensenOptions jorgensen;
  ExplorerOptions explorer;
  /// Conjugates f^k h f^-k use k = 0..max_conjugate_power over this many
  /// loxodromic words.
  int max_conjugate_power = 3;
  std::size_t conjugating_words = 3;
  /// Cap on loxodromic classes entering the pairwise tests.
  std::size_t max_pair_elements = 64;
  std::size_t max_witnesses = 16;
};

struct ReportStats {
  std::size_t classes_explored = 0;
  std::size_t words_examined = 0;
  std::size_t pair_tests = 0;
  std::size_t loxodromic_found = 0;
  std::optional<double> min_n;
  Word min_n_word;
  bool budget_exceeded = false;
};

struct DiscretenessReport {
  AnalysisMode mode = AnalysisMode::TestMap;
  Certificate certificate;
  std::vector<Certificate> findings;
  ReportStats stats;
  /// Generator names followed by the test map, if any; witness words index
  /// into this alphabet.
  std::vector<std::string> alphabet;
  bool experimental = false;
  std::vector<std::string> notes;
};

/// G's generators with the test map appended, the alphabet of report words.
inline GroupInput extended_group(const GroupInput& group, const ReportOptions& opts) {
  GroupInput ext = group;
  if (opts.mode == AnalysisMode::TestMap && opts.test_map) ext.generators.push_back(*opts.test_map);
  return ext;
}

namespace detail {

class ClassCache {
 public:
  ClassCache(const Enumeration& e, const ToleranceConfig& cfg) : e_(e), cfg_(cfg), cache_(e.size()) {}

  /// nullopt when ambiguous.
  const std::optional<IsometryClass>& get(std::size_t i) {
    if (!cache_[i]) cache_[i] = try_classify(e_.element(i), cfg_);
    return *cache_[i];
  }
  bool is(std::size_t i, IsometryTag tag) {
    const auto& c = get(i);
    return c && c->tag == tag;
  }

 private:
  const Enumeration& e_;
  const ToleranceConfig& cfg_;
  std::vector<std::optional<std::optional<IsometryClass>>> cache_;
};

struct PairElement {
  Word word;
  Isometry element;
  double norm = 0.0;
};

/// Collects Jorgensen violations; keeps them in shortlex order of (f, g).
class ViolationCollector {
 public:
  ViolationCollector(const ToleranceConfig& cfg, const JorgensenOptions& opts) : cfg_(cfg), opts_(opts) {}

  void test(const PairElement& f, const PairElement& g) {
    ++tests_;
    // The statistic is at least N(f); no violation is possible above the threshold.
    if (f.norm >= jorgensen_threshold() - cfg_.tol_identity) return;
    if (pu_equal(f.element, identity(f.element.dim_n()), cfg_)) return;
    const JorgensenOutcome o = jorgensen_statistic(f.element, g.element, cfg_, opts_);
    if (o.verdict != JorgensenVerdict::Violation) return;
    found_.push_back({f.word, g.word, o});
  }

  std::size_t tests() const { return tests_; }
  bool any() const { return !found_.empty(); }

  Certificate certificate(std::size_t max_witnesses) {
    std::stable_sort(found_.begin(), found_.end(), [](const Entry& a, const Entry& b) {
      if (a.wf != b.wf) return a.wf.shortlex_less(b.wf);
      return a.wg.shortlex_less(b.wg);
    });
    Certificate c;
    c.kind = CertificateKind::JorgensenViolation;
    const Entry& best = found_.front();
    std::ostringstream os;
    os.precision(10);
    os << found_.size() << " pair(s) violate the Jorgensen bound; first: statistic " << best.outcome.statistic
       << " < " << best.outcome.threshold << " (" << to_string(best.outcome.branch) << " branch, "
       << to_string(best.outcome.norm_used) << " norm). Each such pair generates a group that is not both "
       << "discrete and non-elementary";
    c.narrative = os.str();
    for (std::size_t i = 0; i < found_.size() && i < max_witnesses; ++i) {
      c.witnesses.push_back(jorgensen_f_witness(found_[i].outcome, found_[i].wf));
      c.witnesses.push_back({"g", found_[i].wg, {}});
    }
    for (const auto& e : found_)
      if (e.outcome.branch_assumed) {
        c.assumptions.push_back("some f classifications were ambiguous; elliptic branch used");
        break;
      }
    return c;
  }

 private:
  struct Entry {
    Word wf, wg;
    JorgensenOutcome outcome;
  };
  const ToleranceConfig& cfg_;
  const JorgensenOptions& opts_;
  std::vector<Entry> found_;
  std::size_t tests_ = 0;
};

}  // namespace detail

/// Runs the mode-specific search plus a near-identity search over the words
/// of length <= depth and returns the strongest non-discreteness evidence
/// found (NearIdentitySequence > JorgensenViolation > ConditionAEvidence).
/// Discreteness itself is never certified: without evidence the result is
/// Inconclusive with search statistics.
inline DiscretenessReport discreteness_report(const GroupInput& group, const ReportOptions& opts,
                                              const ToleranceConfig& cfg = {}) {
  cfg.validate();
  if (opts.depth < 1 || opts.depth > opts.max_depth)
    throw PreconditionError("depth must be between 1 and " + std::to_string(opts.max_depth));
  if (!(opts.epsilon > 0.0)) throw PreconditionError("epsilon must be positive");

  DiscretenessReport rep;
  rep.mode = opts.mode;
  rep.notes.push_back("input is a finitely generated group given by explicit matrices; searches cover words of "
                      "length <= " + std::to_string(opts.depth));

  const GroupInput ext = extended_group(group, opts);
  rep.alphabet = ext.names();
  const Enumeration e = explore(group, opts.depth, opts.explorer, cfg);
  rep.stats.classes_explored = e.size();
  rep.stats.words_examined = e.words_examined();
  rep.stats.budget_exceeded = e.budget_exceeded();

  const NormKind norm = opts.jorgensen.norm;
  std::vector<double> raw_norm(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    raw_norm[i] = norm_n(e.element(i), norm);
    const double pn = norm_n_projective(e.element(i), norm);
    if (!rep.stats.min_n || pn < *rep.stats.min_n) {
      rep.stats.min_n = pn;
      rep.stats.min_n_word = e.word(i);
    }
  }

  detail::ClassCache classes(e, cfg);
  detail::ViolationCollector violations(cfg, opts.jorgensen);
  const auto element_of = [&](std::size_t i) {
    return detail::PairElement{e.word(i), e.element(i), raw_norm[i]};
  };
  const auto loxodromic_indices = [&](std::size_t cap) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < e.size() && out.size() < cap; ++i)
      if (classes.is(i, IsometryTag::Loxodromic)) out.push_back(i);
    return out;
  };

  std::optional<Certificate> condition_a;

  switch (opts.mode) {
    case AnalysisMode::TestMap: {
      if (!opts.test_map) throw PreconditionError("test-map mode needs a test map");
      const Isometry& h = opts.test_map->element;
      if (h.dim_n() != group.dim_n) throw DimensionError("test map has the wrong dimension");
      const auto hc = try_classify(h, cfg);
      if (hc && hc->tag == IsometryTag::Identity) throw NotApplicable("the test map must be non-trivial");
      if (!hc || hc->tag == IsometryTag::Elliptic) {
        rep.experimental = true;
        rep.notes.push_back("EXPERIMENTAL: the test map is not parabolic or loxodromic; no theorem backs this run");
      }
      const Letter h_letter{int(group.generators.size()), 1};
      const Word h_word(std::vector<Letter>{h_letter});

      std::vector<detail::PairElement> conjugates{{h_word, h, norm_n(h, norm)}};
      const auto conjugators = loxodromic_indices(opts.conjugating_words);
      rep.stats.loxodromic_found = conjugators.size();
      for (auto i : conjugators) {
        const Word wi = e.word(i);
        CMatrix fk = CMatrix::Identity(group.dim_n + 1, group.dim_n + 1);
        for (int k = 1; k <= opts.max_conjugate_power; ++k) {
          fk = fk * e.element(i).matrix();
          const Isometry fki = Isometry::trusted(fk);
          const Isometry conj = compose(compose(fki, h), inverse(fki));
          const Word w = wi.pow(k) * h_word * wi.pow(-k);
          conjugates.push_back({w, conj, norm_n(conj, norm)});
        }
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        const auto gw = element_of(i);
        for (const auto& hp : conjugates) {
          violations.test(gw, hp);
          violations.test(hp, gw);
        }
      }
      break;
    }
    case AnalysisMode::TwoLoxodromic: {
      const auto lox = loxodromic_indices(opts.max_pair_elements);
      rep.stats.loxodromic_found = lox.size();
      if (lox.empty()) throw ModeUnavailable("no loxodromic element among words of length <= " + std::to_string(opts.depth));
      for (auto i : lox)
        for (auto j : lox)
          if (i != j) violations.test(element_of(i), element_of(j));
      break;
    }
    case AnalysisMode::Stabilizer: {
      const auto lox = loxodromic_indices(1);
      if (lox.empty()) throw ModeUnavailable("no loxodromic element among words of length <= " + std::to_string(opts.depth));
      rep.stats.loxodromic_found = 1;
      const std::size_t hi = lox.front();
      const IsometryClass& hc = *classes.get(hi);
      const auto stab = stabilizer_elements(e, *hc.attracting, *hc.repelling, opts.explorer, cfg);
      std::vector<ConditionACandidate> cands;
      for (const auto& s : stab) cands.push_back({s.word, s.element});
      condition_a = condition_a_scan(cands, opts.condition_a_epsilon, opts.explorer.k_max, cfg);
      rep.notes.push_back("stabilizer of the fixed points of " + e.word(hi).to_string(rep.alphabet) + ": " +
                          std::to_string(stab.size()) + " classes (identity included)");
      const auto h = element_of(hi);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != hi) violations.test(element_of(i), h);
      break;
    }
  }
  rep.stats.pair_tests = violations.tests();

  const auto near = near_identity_search(e, opts.epsilon, norm);
  if (!near.empty()) {
    Certificate c;
    c.kind = CertificateKind::NearIdentitySequence;
    std::ostringstream os;
    os.precision(10);
    os << near.size() << " distinct classes within " << opts.epsilon << " of the identity (smallest N = "
       << near.front().n_value << "): numerical evidence that the group is not discrete";
    c.narrative = os.str();
    for (std::size_t i = 0; i < near.size() && i < opts.max_witnesses; ++i)
      c.witnesses.push_back({"near-identity", near[i].word, {near[i].n_value}});
    rep.findings.push_back(std::move(c));
  }
  if (violations.any()) rep.findings.push_back(violations.certificate(opts.max_witnesses));
  if (condition_a && condition_a->conclusive()) rep.findings.push_back(*condition_a);

  Certificate elem = elementarity_check(e, opts.explorer, cfg);
  rep.findings.push_back(std::move(elem));

  std::stable_sort(rep.findings.begin(), rep.findings.end(),
                   [](const Certificate& a, const Certificate& b) { return strength(a.kind) > strength(b.kind); });
  for (const auto& c : rep.findings)
    if (c.kind != CertificateKind::NonElementaryWitness && c.conclusive()) {
      rep.certificate = c;
      break;
    }
  if (!rep.certificate.conclusive()) {
    std::ostringstream os;
    os.precision(10);
    os << "no evidence of non-discreteness: " << rep.stats.classes_explored << " classes explored";
    if (rep.stats.min_n) os << ", min N = " << *rep.stats.min_n << " at " << rep.stats.min_n_word.to_string(rep.alphabet);
    rep.certificate.narrative = os.str();
  }
  return rep;
}

/// Largest deviation between the values stored in the certificate and those
/// recomputed from its witness words over `group` (the report alphabet).
inline double verify_certificate(const Certificate& cert, const GroupInput& group, const ToleranceConfig& cfg = {},
                                 const JorgensenOptions& opts = {}) {
  double worst = 0.0;
  const auto compare = [&](const std::vector<double>& stored, const std::vector<double>& fresh) {
    if (stored.size() != fresh.size()) {
      worst = std::numeric_limits<double>::infinity();
      return;
    }
    for (std::size_t i = 0; i < stored.size(); ++i) worst = std::max(worst, std::abs(stored[i] - fresh[i]));
  };
  switch (cert.kind) {
    case CertificateKind::NearIdentitySequence:
      for (const auto& w : cert.witnesses) compare(w.values, {norm_n_projective(evaluate(group, w.word), opts.norm)});
      break;
    case CertificateKind::ConditionAEvidence:
      for (const auto& w : cert.witnesses) compare(w.values, {norm_n_projective(evaluate(group, w.word))});
      break;
    case CertificateKind::JorgensenViolation:
      for (std::size_t i = 0; i + 1 < cert.witnesses.size(); i += 2) {
        const auto o = jorgensen_statistic(evaluate(group, cert.witnesses[i].word),
                                           evaluate(group, cert.witnesses[i + 1].word), cfg, opts);
        compare(cert.witnesses[i].values, jorgensen_f_witness(o, {}).values);
      }
      break;
    case CertificateKind::NonElementaryWitness:
      for (const auto& w : cert.witnesses)
        compare(w.values, flatten_points(classify_isometry(evaluate(group, w.word), cfg).boundary_fixed));
      break;
    case CertificateKind::Inconclusive:
      break;
  }
  return worst;
}

}  // namespace chyp
