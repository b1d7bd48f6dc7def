#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cxn/compiler.hpp"
#include "cxn/conllc.hpp"
#include "cxn/conllu.hpp"
#include "cxn/coverage.hpp"
#include "cxn/error.hpp"
#include "cxn/lexicon.hpp"
#include "cxn/matcher.hpp"
#include "cxn/text.hpp"

namespace cxn::cli {

namespace fs = std::filesystem;

namespace {

/// Input that cannot be read at all (status 2).
struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || fs::is_directory(path)) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

// Writes to `path`, or to `out` when no path is given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

struct Corpus {
  std::vector<conllu::Sentence> sentences;
  std::vector<std::string> ids;
};

Corpus load_corpus(const std::vector<std::string>& paths, std::ostream& err) {
  Corpus c;
  for (const auto& path : paths) {
    const auto text = read_file(path);
    conllu::Document doc;
    try {
      doc = conllu::parse(text);
    } catch (const FormatError& e) {
      throw IoError(path + ": " + e.what());
    }
    for (const auto& e : doc.errors)
      err << path << ":" << e.line << ": skipped sentence: " << e.message << '\n';
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      const auto* sid = doc.sentences[i].meta("sent_id");
      c.ids.push_back(sid ? *sid : fs::path(path).filename().string() + "#" + std::to_string(i + 1));
      c.sentences.push_back(std::move(doc.sentences[i]));
    }
  }
  return c;
}

Lexicon load_lexicon(const std::vector<std::string>& paths) {
  for (const auto& p : paths)
    if (!fs::is_regular_file(p)) throw IoError("cannot read " + p);
  std::optional<std::string> relations;
  if (paths.size() > 1) relations = paths[1];
  return Lexicon::load(paths.at(0), relations);
}

std::vector<std::string> expand_cxn_paths(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in))
        if (entry.is_regular_file() && entry.path().extension() == ".conllc")
          found.push_back(entry.path().string());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(in);
    }
  }
  return out;
}

int cmd_validate(const std::vector<std::string>& inputs, std::ostream& out, std::ostream& err) {
  int status = kOk;
  for (const auto& path : expand_cxn_paths(inputs)) {
    std::string text;
    try {
      text = read_file(path);
    } catch (const IoError& e) {
      err << e.what() << '\n';
      status = kUsageError;
      continue;
    }
    std::vector<conllc::Diagnostic> diags;
    try {
      diags = conllc::validate(conllc::parse(text));
    } catch (const conllc::ParseError& e) {
      diags.push_back(e.diagnostic());
    }
    for (const auto& d : diags) err << path << ": " << d.str() << '\n';
    if (conllc::has_errors(diags)) {
      if (status == kOk) status = kDomainError;
    } else {
      out << path << ": ok\n";
    }
  }
  return status;
}

std::string match_line(const std::string& sent_id, const Pattern& p, const Match& m,
                       const conllu::Sentence& s) {
  std::vector<std::string> pairs;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (!m.assigned(i)) continue;
    pairs.push_back(p.nodes[i].row_id + "=" + s.token(m.assignment[i])->form);
  }
  return sent_id + "\t" + p.cxn_id + "\t" + join(pairs, " ");
}

struct MatchArgs {
  std::string cxn;
  std::vector<std::string> treebanks;
  std::vector<std::string> lexicon;
  bool no_sem = false;
  std::string sem_missing = "fail";
  bool case_fold = false;
  std::string annotate;
  std::string report;
  unsigned jobs = 1;
};

int cmd_match(const MatchArgs& a, std::ostream& out, std::ostream& err) {
  if (a.lexicon.empty() && !a.no_sem) {
    err << "match: --lexicon is required unless --no-sem is given\n";
    return kUsageError;
  }
  conllc::CxnDef def;
  try {
    def = conllc::parse(read_file(a.cxn));
  } catch (const conllc::ParseError& e) {
    err << a.cxn << ": " << e.what() << '\n';
    return kDomainError;
  }
  const auto pattern = compile(def);
  const auto lexicon = a.lexicon.empty() ? Lexicon{} : load_lexicon(a.lexicon);
  auto corpus = load_corpus(a.treebanks, err);

  MatchOptions opts;
  opts.semantic_filtering = !a.no_sem;
  opts.missing_lemma = a.sem_missing == "pass" ? MissingLemmaPolicy::Pass : MissingLemmaPolicy::Fail;
  opts.identity_case_fold = a.case_fold;
  const auto matches = match_corpus(pattern, corpus.sentences, lexicon, opts, a.jobs);

  std::ostringstream report;
  report << "sent_id\tcxn_id\toccurrence\tassignment\tforms\n";
  std::vector<conllu::Sentence> annotated = corpus.sentences;
  for (const auto& m : matches) {
    const auto& s = corpus.sentences[m.sentence];
    const auto& id = corpus.ids[m.sentence];
    out << match_line(id, pattern, m, s) << '\n';

    auto& target = annotated[m.sentence];
    const int occurrence = next_occurrence(target, pattern.cxn_id);
    target = annotate(target, m, pattern, pattern.cxn_id, occurrence);

    std::vector<std::string> assignment;
    std::vector<std::string> forms;
    for (std::size_t i = 0; i < pattern.nodes.size(); ++i) {
      if (!m.assigned(i)) continue;
      assignment.push_back(pattern.nodes[i].row_id + ":" + std::to_string(m.assignment[i]));
      forms.push_back(s.token(m.assignment[i])->form);
    }
    report << id << '\t' << pattern.cxn_id << '\t' << occurrence << '\t' << join(assignment, ",")
           << '\t' << join(forms, " ") << '\n';
  }
  if (!a.annotate.empty()) emit(a.annotate, conllu::serialize(annotated), out);
  if (!a.report.empty()) emit(a.report, report.str(), out);
  err << matches.size() << " match(es) in " << corpus.sentences.size() << " sentence(s)\n";
  return kOk;
}

struct CoverageArgs {
  std::vector<std::string> treebanks;
  std::vector<std::string> lexicon;
  std::uint64_t min_freq = 5;
  std::vector<std::string> pos{"noun", "verb"};
  std::string format = "table";
  std::string output;
};

int cmd_coverage(const CoverageArgs& a, std::ostream& out, std::ostream& err) {
  if (a.treebanks.empty()) {
    err << "coverage: no treebank files given\n";
    return kUsageError;
  }
  const auto format = report_format_from_string(a.format);
  if (!format) {
    err << "coverage: unknown format '" << a.format << "'\n";
    return kUsageError;
  }
  std::set<Pos> pos_set;
  for (const auto& p : a.pos) {
    const auto pos = pos_from_tag(p);
    if (!pos) {
      err << "coverage: unknown pos '" << p << "'\n";
      return kUsageError;
    }
    pos_set.insert(*pos);
  }
  const auto lexicon = load_lexicon(a.lexicon);
  const auto corpus = load_corpus(a.treebanks, err);
  const auto freq = frequency_list(corpus.sentences, pos_set, a.min_freq);
  emit(a.output, render_report(coverage_report(freq, lexicon, a.min_freq), *format), out);
  return kOk;
}

struct ConvertArgs {
  OmwSources sources;
  std::string senses_out;
  std::string relations_out;
};

int cmd_convert(const ConvertArgs& a, std::ostream&, std::ostream& err) {
  auto inputs = a.sources.omw_tab;
  inputs.push_back(a.sources.lexnames);
  inputs.insert(inputs.end(), a.sources.wordnet_data.begin(), a.sources.wordnet_data.end());
  for (const auto& p : inputs)
    if (!fs::is_regular_file(p)) throw IoError("cannot read " + p);
  std::ofstream senses(a.senses_out);
  std::ofstream relations(a.relations_out);
  if (!senses || !relations) throw IoError("cannot write output files");
  const auto result = convert_omw(a.sources, senses, relations);
  err << result.senses << " senses, " << result.relations << " relations, "
      << result.skipped_lemmas << " lemma rows without a noun/verb topic\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construction pattern engine for CoNLL-C definitions and CoNLL-U treebanks"};
  app.require_subcommand(1);

  std::vector<std::string> validate_inputs;
  auto* validate = app.add_subcommand("validate", "Check CoNLL-C files or directories");
  validate->add_option("inputs", validate_inputs, "CoNLL-C files or directories")->required();

  std::string compile_input;
  std::string compile_output;
  bool compile_grew = false;
  bool compile_conllc = false;
  auto* compile_cmd = app.add_subcommand("compile", "Emit the Grew query of a construction");
  compile_cmd->add_option("cxn", compile_input, "CoNLL-C file")->required();
  auto* grew_flag = compile_cmd->add_flag("--grew", compile_grew, "Grew query text (default)");
  compile_cmd->add_flag("--conllc", compile_conllc, "Canonical single-block CoNLL-C instead")
      ->excludes(grew_flag);
  compile_cmd->add_option("-o,--output", compile_output, "Output file (default stdout)");

  MatchArgs match_args;
  auto* match = app.add_subcommand("match", "Find constructs of one construction in treebanks");
  match->add_option("--cxn", match_args.cxn, "CoNLL-C file")->required();
  match->add_option("--treebank", match_args.treebanks, "CoNLL-U files")->required();
  match->add_option("--lexicon", match_args.lexicon, "Sense TSV [relation TSV]")->expected(1, 2);
  match->add_flag("--no-sem", match_args.no_sem, "Disable lexicon-backed constraints");
  match->add_option("--sem-missing", match_args.sem_missing, "OntoClass on unknown lemmas")
      ->check(CLI::IsMember({"pass", "fail"}));
  match->add_flag("--case-fold", match_args.case_fold, "Case-insensitive IDENTITY equality");
  match->add_option("--annotate", match_args.annotate, "Write the annotated corpus here");
  match->add_option("--report", match_args.report, "Write a TSV of matches here");
  match->add_option("--jobs", match_args.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  CoverageArgs cov_args;
  auto* coverage = app.add_subcommand("coverage", "Topic coverage of treebank lemmas");
  coverage->add_option("--treebank", cov_args.treebanks, "CoNLL-U files");
  coverage->add_option("--lexicon", cov_args.lexicon, "Sense TSV [relation TSV]")
      ->expected(1, 2)
      ->required();
  coverage->add_option("--min-freq", cov_args.min_freq, "Keep lemmas with freq > N");
  coverage->add_option("--pos", cov_args.pos, "Word classes")->delimiter(',');
  coverage->add_option("--format", cov_args.format, "table, tsv or json");
  coverage->add_option("-o,--output", cov_args.output, "Output file (default stdout)");

  ConvertArgs conv_args;
  auto* convert = app.add_subcommand("convert-lexicon", "OMW tab files to sense/relation TSVs");
  convert->add_option("--omw", conv_args.sources.omw_tab, "OMW tab files")->required();
  convert->add_option("--lexnames", conv_args.sources.lexnames, "WordNet lexnames")->required();
  convert->add_option("--wndata", conv_args.sources.wordnet_data, "WordNet data.noun/data.verb")
      ->required();
  convert->add_option("--senses-out", conv_args.senses_out, "Sense TSV to write")->required();
  convert->add_option("--relations-out", conv_args.relations_out, "Relation TSV to write")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const auto code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*validate) return cmd_validate(validate_inputs, out, err);
    if (*compile_cmd) {
      conllc::CxnDef def;
      try {
        def = conllc::parse(read_file(compile_input));
      } catch (const conllc::ParseError& e) {
        err << compile_input << ": " << e.what() << '\n';
        return kDomainError;
      }
      if (compile_conllc) {
        emit(compile_output, conllc::render(def), out);
      } else {
        emit(compile_output, emit_grew(compile(def)), out);
      }
      return kOk;
    }
    if (*match) return cmd_match(match_args, out, err);
    if (*coverage) return cmd_coverage(cov_args, out, err);
    if (*convert) return cmd_convert(conv_args, out, err);
  } catch (const IoError& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kDomainError;
  }
  return kUsageError;
}

}  // namespace cxn::cli
