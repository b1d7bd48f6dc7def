#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "cxn/conllu.hpp"
#include "cxn/lexicon.hpp"

namespace cxn::testing {

inline std::string data_path(const std::string& name) {
  return std::string(CXN_TEST_DATA) + "/" + name;
}

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Lexicon fixture_lexicon() {
  return Lexicon::load(data_path("lexicon_senses.tsv"), data_path("lexicon_relations.tsv"));
}

inline std::vector<conllu::Sentence> fixture_corpus(const std::string& name) {
  return conllu::parse_file(data_path(name)).sentences;
}

/// One CoNLL-U token line; XPOS, DEPS and MISC are left empty.
inline std::string conllu_line(int id, const std::string& form, const std::string& lemma,
                               const std::string& upos, const std::string& feats, int head,
                               const std::string& deprel) {
  return std::to_string(id) + "\t" + form + "\t" + lemma + "\t" + upos + "\t_\t" + feats + "\t" +
         std::to_string(head) + "\t" + deprel + "\t_\t_\n";
}

}  // namespace cxn::testing
