#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "cxn/compiler.hpp"
#include "cxn/conllc.hpp"
#include "cxn/matcher.hpp"

namespace {

using namespace cxn;

const char* kLemmas[] = {"fare", "paura", "schifo", "casa", "il", "di", "vita", "danza"};
const char* kUpos[] = {"VERB", "NOUN", "NOUN", "NOUN", "DET", "ADP", "NOUN", "NOUN"};

std::vector<conllu::Sentence> synthetic_corpus(std::size_t sentences, int length) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> word(0, 7);
  std::vector<conllu::Sentence> out;
  for (std::size_t i = 0; i < sentences; ++i) {
    conllu::Sentence s;
    for (int id = 1; id <= length; ++id) {
      const int w = word(rng);
      conllu::Token t;
      t.id = id;
      t.form = t.lemma = kLemmas[w];
      t.upos = kUpos[w];
      t.feats["Number"] = "Sing";
      t.head = id == 1 ? 0 : std::uniform_int_distribution<int>(1, id - 1)(rng);
      t.deprel = id == 1 ? "root" : (t.upos == "NOUN" ? "obj" : "det");
      s.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(s));
  }
  return out;
}

Lexicon bench_lexicon() {
  std::istringstream senses(
      "paura\tn\tp1\tnoun.feeling\nschifo\tn\ts1\tnoun.feeling\ncasa\tn\tc1\tnoun.artifact\n"
      "vita\tn\tv1\tnoun.state\ndanza\tn\td1\tnoun.act\nfare\tv\tf1\tverb.creation\n");
  std::istringstream relations("v1\tsimilar\td1\n");
  return Lexicon::load(senses, &relations);
}

const std::string kFare =
    "#cxn-id = 171\n"
    "A\t_\tfare\tVERB\t_\t0\troot\t1\t_\t_\t_\t_\n"
    "B\t_\t_\tNOUN\tNumber=Sing\tA\tobj\t1\tCHILDREN:DEPREL=det\tOntoClass=feeling\tFREE\t_\n";

const std::string kThreeNodes =
    "#cxn-id = three\n"
    "A\t_\t_\tNOUN\t_\t0\troot\t1\t_\t_\t_\t_\n"
    "B\t_\t_\tDET\t_\tC\tdet\t0\t_\t_\tFREE\t_\n"
    "C\t_\t_\tNOUN\t_\tA\tobj\t1\t_\t_\tFREE\tLEMMA=similar:A\n";

void BM_MatchCorpus(benchmark::State& state, const std::string& cxn) {
  const auto corpus = synthetic_corpus(1000, static_cast<int>(state.range(0)));
  const auto lex = bench_lexicon();
  const auto pattern = compile(conllc::parse(cxn));
  const auto jobs = static_cast<unsigned>(state.range(1));
  std::size_t matches = 0;
  for (auto _ : state) {
    const auto ms = match_corpus(pattern, corpus, lex, {}, jobs);
    matches = ms.size();
    benchmark::DoNotOptimize(ms.data());
  }
  state.counters["matches"] = static_cast<double>(matches);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * corpus.size()));
}

BENCHMARK_CAPTURE(BM_MatchCorpus, fare_npsych, kFare)
    ->ArgsProduct({{12, 30}, {1, 4}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MatchCorpus, optional_relation, kThreeNodes)
    ->ArgsProduct({{12, 30}, {1, 4}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);

void BM_Compile(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(emit_grew(compile(conllc::parse(kFare))));
}
BENCHMARK(BM_Compile);

}  // namespace
