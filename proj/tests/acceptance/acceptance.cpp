// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exit status is
// non-zero iff some criterion failed.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "cxn/compiler.hpp"
#include "cxn/conllc.hpp"
#include "cxn/conllu.hpp"
#include "cxn/coverage.hpp"
#include "cxn/matcher.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"

namespace {

using namespace cxn;
using namespace cxn::testing;
namespace fs = std::filesystem;

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::Fail, std::move(d)}; }

struct CliResult {
  int status;
  std::string out;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cxn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str()};
}

std::string strip_ws(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out += c;
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

Lexicon load_raw(const RawLexicon& raw) {
  std::istringstream senses(raw.senses_tsv());
  std::istringstream relations(raw.relations_tsv());
  return Lexicon::load(senses, &relations);
}

Outcome grew_fidelity() {
  const std::string expected =
      "pattern {X1 [lemma='fare']; X2 [upos=NOUN, Number=Sing]; X1 < X2; X1 -[obj]-> X2} "
      "without {X2 -[det]-> X3}";
  const auto r = run_cli({"compile", data_path("fare_npsych.conllc")});
  if (r.status != 0) return fail("compile exited with " + std::to_string(r.status));
  std::string body;
  for (const auto& l : lines(r.out))
    if (!l.starts_with("% unexpressed:")) body += l + "\n";
  if (strip_ws(body) != strip_ws(expected)) return fail("got: " + body);
  return pass("query reproduced");
}

Outcome triage() {
  const auto base = std::vector<std::string>{"match", "--cxn", data_path("fare_npsych.conllc"),
                                             "--treebank", data_path("postwita_six.conllu")};
  auto with = base;
  with.insert(with.end(), {"--lexicon", data_path("lexicon_senses.tsv"),
                           data_path("lexicon_relations.tsv")});
  auto without = base;
  without.push_back("--no-sem");
  const auto a = run_cli(with);
  const auto b = run_cli(without);
  if (a.status != 0 || b.status != 0) return fail("match failed");
  const std::vector<std::string> want_sem{"postwita-1\t171\tA=fa B=schifo",
                                          "postwita-2\t171\tA=fa B=paura",
                                          "postwita-3\t171\tA=fa B=piacere"};
  const std::vector<std::string> want_all{
      "postwita-1\t171\tA=fa B=schifo",    "postwita-2\t171\tA=fa B=paura",
      "postwita-3\t171\tA=fa B=piacere",   "postwita-4\t171\tA=fare B=demagogia",
      "postwita-5\t171\tA=fa B=parte",     "postwita-6\t171\tA=fare B=cassa"};
  const auto got_sem = lines(a.out);
  const auto got_all = lines(b.out);
  if (got_sem != want_sem || got_all != want_all)
    return fail(std::to_string(got_sem.size()) + " filtered / " + std::to_string(got_all.size()) +
                " unfiltered matches");
  return pass("3 with semantic filtering, 6 with --no-sem");
}

Outcome identity_relations() {
  const auto lex = fixture_lexicon();
  const auto count = [&](const std::string& cxn, const std::string& corpus) {
    std::vector<std::string> ids;
    const auto sents = fixture_corpus(corpus);
    for (const auto& m : match_corpus(compile(conllc::parse_file(data_path(cxn))), sents, lex))
      ids.push_back(conllu::sentence_id(sents[m.sentence], m.sentence));
    return ids;
  };
  const auto oxy = count("oxymoron.conllc", "oxymoron.conllu");
  const auto cog = count("cognate.conllc", "cognate.conllu");
  if (oxy != std::vector<std::string>{"oxy-1"})
    return fail("oxymoron matched " + std::to_string(oxy.size()) + " sentences");
  if (cog != std::vector<std::string>{"cognate-1", "cognate-2"})
    return fail("cognate matched " + std::to_string(cog.size()) + " sentences");
  return pass("oxymoron 1/1, cognate 2 (dormire un sonno: 0)");
}

Outcome oracle_equivalence() {
  Gen g(20240601u);
  std::size_t cases = 0;
  std::size_t nonempty = 0;
  for (int variant = 0; variant < 4; ++variant) {
    for (int c = 0; c < 500; ++c) {
      const auto raw = random_lexicon(g);
      const auto lex = load_raw(raw);
      const auto def = random_def(g, 4);
      const auto pattern = compile(def);
      const auto s = random_sentence(g, 12);
      MatchOptions opts;
      opts.semantic_filtering = variant != 2;
      opts.missing_lemma = variant == 1 ? MissingLemmaPolicy::Pass : MissingLemmaPolicy::Fail;
      opts.identity_case_fold = variant == 3;
      std::vector<std::vector<int>> got;
      for (const auto& m : match_sentence(pattern, s, lex, opts)) got.push_back(m.assignment);
      const auto want = BruteForceMatcher(def, raw,
                                          {opts.semantic_filtering, variant == 1, variant == 3})
                            .run(s);
      ++cases;
      if (got != want) return fail("mismatch on case " + std::to_string(cases));
      if (!want.empty()) ++nonempty;
    }
  }
  return pass(std::to_string(cases) + " cases, 0 mismatches (" + std::to_string(nonempty) +
              " with matches)");
}

Outcome round_trips() {
  Gen g(77);
  for (int i = 0; i < 300; ++i) {
    std::vector<conllu::Sentence> doc;
    for (int k = g.uniform(1, 5); k > 0; --k) doc.push_back(random_sentence(g, 12, true));
    const auto back = conllu::parse(conllu::serialize(doc));
    if (!back.errors.empty() || back.sentences != doc) return fail("CoNLL-U round-trip");
  }
  for (int i = 0; i < 500; ++i) {
    const auto def = random_def(g, 6);
    if (conllc::parse(conllc::render(def)) != def) return fail("CoNLL-C round-trip");
  }
  const Lexicon empty;
  MatchOptions off;
  off.semantic_filtering = false;
  std::size_t annotated = 0;
  for (int i = 0; i < 500; ++i) {
    const auto def = random_def(g, 3);
    const auto p = compile(def);
    auto s = random_sentence(g, 12, true);
    std::map<int, std::map<std::string, int>> expected;
    for (const auto& m : match_sentence(p, s, empty, off)) {
      const int occ = next_occurrence(s, p.cxn_id);
      s = annotate(s, m, p, p.cxn_id, occ);
      for (std::size_t n = 0; n < p.nodes.size(); ++n)
        if (m.assigned(n)) expected[occ][p.nodes[n].row_id] = m.assignment[n];
      ++annotated;
    }
    const auto back = conllu::parse(conllu::serialize(std::span(&s, 1)));
    if (back.sentences.size() != 1 || back.sentences[0] != s ||
        read_annotations(back.sentences[0], p.cxn_id) != expected)
      return fail("annotated output round-trip");
  }
  return pass("CoNLL-U, CoNLL-C and " + std::to_string(annotated) + " annotations intact");
}

Outcome coverage_arithmetic() {
  const std::set<Pos> both{Pos::Noun, Pos::Verb};
  const auto report =
      coverage_report(frequency_list(fixture_corpus("coverage.conllu"), both, 5), fixture_lexicon(), 5);
  if (render_report(report, ReportFormat::Tsv) != read_data("coverage_golden.tsv"))
    return fail("golden TSV differs");
  const auto& b = report.per_pos.at(Pos::Noun).buckets;
  if (b.at(0) != CoverageCount{1, 10} || b.at(1) != CoverageCount{2, 13} ||
      b.at(2) != CoverageCount{1, 8})
    return fail("bucket values differ");

  Gen g(91);
  for (int i = 0; i < 200; ++i) {
    const auto raw = random_lexicon(g);
    std::istringstream senses(raw.senses_tsv());
    const auto lex = Lexicon::load(senses);
    std::vector<conllu::Sentence> corpus;
    for (int k = g.uniform(1, 30); k > 0; --k) corpus.push_back(random_sentence(g, 12));
    std::optional<CoverageReport> prev;
    for (std::uint64_t t = 0; t <= 6; ++t) {
      const auto r = coverage_report(frequency_list(corpus, both, t), lex, t);
      const auto partitioned = [](const TopicCountTable& t) {
        CoverageCount sum;
        for (const auto& [k, c] : t.buckets) {
          sum.lemmas += c.lemmas;
          sum.forms += c.forms;
        }
        return sum == t.total;
      };
      if (!partitioned(r.overall)) return fail("partition violated");
      for (const auto& [pos, table] : r.per_pos)
        if (!partitioned(table)) return fail("per-pos partition violated");
      if (prev) {
        if (r.overall.total.lemmas > prev->overall.total.lemmas ||
            r.overall.total.forms > prev->overall.total.forms)
          return fail("threshold monotonicity violated");
        for (const auto& [k, c] : r.overall.buckets) {
          const auto it = prev->overall.buckets.find(k);
          if (it == prev->overall.buckets.end() || c.lemmas > it->second.lemmas ||
              c.forms > it->second.forms)
            return fail("bucket monotonicity violated");
        }
      }
      prev = r;
    }
  }
  return pass("golden exact; partition and monotonicity on 200 random corpora");
}

std::vector<std::string> expand_treebanks(const std::string& list) {
  std::vector<std::string> out;
  std::istringstream in(list);
  for (std::string item; std::getline(in, item, ':');) {
    if (item.empty()) continue;
    if (fs::is_directory(item)) {
      for (const auto& e : fs::recursive_directory_iterator(item))
        if (e.is_regular_file() && e.path().extension() == ".conllu") out.push_back(e.path().string());
    } else {
      out.push_back(item);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

Outcome full_scale() {
  const char* treebanks = std::getenv("CXN_FULLSCALE_TREEBANKS");
  const char* senses = std::getenv("CXN_FULLSCALE_LEXICON");
  if (!treebanks || !senses)
    return {Verdict::Skip,
            "set CXN_FULLSCALE_TREEBANKS (':'-separated .conllu files or directories) and "
            "CXN_FULLSCALE_LEXICON (converted sense TSV) to run"};
  std::vector<conllu::Sentence> corpus;
  for (const auto& path : expand_treebanks(treebanks)) {
    auto doc = conllu::parse_file(path);
    for (auto& s : doc.sentences) corpus.push_back(std::move(s));
  }
  const auto lex = Lexicon::load(senses);
  const auto r = coverage_report(frequency_list(corpus, {Pos::Noun, Pos::Verb}, 5), lex, 5);
  const auto share = [&](Pos pos, bool forms) {
    const auto it = r.per_pos.find(pos);
    if (it == r.per_pos.end()) return 0.0;
    const auto u = r.untagged(pos);
    const auto& t = it->second.total;
    const double den = forms ? static_cast<double>(t.forms) : static_cast<double>(t.lemmas);
    return den == 0 ? 0.0 : 100.0 * (forms ? static_cast<double>(u.forms) : static_cast<double>(u.lemmas)) / den;
  };
  const auto total = static_cast<double>(r.overall.total.lemmas);
  std::ostringstream d;
  d.precision(3);
  d << "lemmas=" << total << " noun_untagged=" << share(Pos::Noun, false)
    << "% verb_untagged=" << share(Pos::Verb, false) << "% noun_form=" << share(Pos::Noun, true)
    << "% verb_form=" << share(Pos::Verb, true) << "%";
  const bool ok = within(total, 5273, 5273 * 0.05) && within(share(Pos::Noun, false), 10.1, 1.5) &&
                  within(share(Pos::Verb, false), 12.7, 1.5) &&
                  within(share(Pos::Noun, true), 3.5, 1.0) && within(share(Pos::Verb, true), 3.5, 1.0);
  return {ok ? Verdict::Pass : Verdict::Fail, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"grew emission fidelity", grew_fidelity},
      {"triage reproduction", triage},
      {"identity-relation filtering", identity_relations},
      {"oracle equivalence", oracle_equivalence},
      {"round-trips", round_trips},
      {"coverage arithmetic", coverage_arithmetic},
      {"full-scale coverage", full_scale},
  };
  bool failed = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    failed |= o.verdict == Verdict::Fail;
    std::cout << tag << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ["
              << ms << " ms]\n";
  }
  return failed ? 1 : 0;
}
