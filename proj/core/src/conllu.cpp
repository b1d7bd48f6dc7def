#include "cxn/conllu.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "cxn/error.hpp"

namespace cxn::conllu {

const std::string* Token::misc_value(std::string_view key) const {
  for (const auto& item : misc)
    if (item.key == key && item.value) return &*item.value;
  return nullptr;
}

void Token::set_misc(std::string_view key, std::string value) {
  for (auto& item : misc) {
    if (item.key == key) {
      item.value = std::move(value);
      return;
    }
  }
  misc.push_back({std::string(key), std::move(value)});
}

const std::string* Sentence::meta(std::string_view key) const {
  for (const auto& c : metadata)
    if (c.key == key && c.value) return &*c.value;
  return nullptr;
}

const Token* Sentence::token(int id) const {
  if (id < 1 || static_cast<std::size_t>(id) > tokens.size()) return nullptr;
  const auto& t = tokens[static_cast<std::size_t>(id - 1)];
  return t.id == id ? &t : nullptr;
}

namespace {

std::string absent(std::string_view column) {
  return column == "_" ? std::string() : std::string(column);
}

std::string present(const std::string& value) { return value.empty() ? "_" : value; }

int parse_int(std::string_view text, const char* what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty())
    throw FormatError(std::string("non-integer ") + what + " '" + std::string(text) + "'");
  return value;
}

bool is_opaque_id(std::string_view id) {
  return id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos;
}

Comment parse_comment(std::string_view line) {
  auto body = trim(line.substr(1));
  Comment c;
  if (const auto eq = body.find(" = "); eq != std::string_view::npos) {
    c.key = std::string(trim(body.substr(0, eq)));
    c.value = std::string(trim(body.substr(eq + 3)));
  } else if (body.size() >= 2 && body.substr(body.size() - 2) == " =") {
    c.key = std::string(trim(body.substr(0, body.size() - 2)));
    c.value = std::string();
  } else {
    c.key = std::string(body);
  }
  return c;
}

std::vector<MiscItem> parse_misc(std::string_view column) {
  std::vector<MiscItem> out;
  if (column == "_") return out;
  for (auto& piece : split(column, '|')) {
    if (piece.empty()) throw FormatError("empty MISC item");
    const auto eq = piece.find('=');
    if (eq == std::string::npos)
      out.push_back({piece, std::nullopt});
    else
      out.push_back({piece.substr(0, eq), piece.substr(eq + 1)});
  }
  return out;
}

std::string format_misc(const std::vector<MiscItem>& misc) {
  if (misc.empty()) return "_";
  std::string out;
  for (std::size_t i = 0; i < misc.size(); ++i) {
    if (i) out += '|';
    out += misc[i].key;
    if (misc[i].value) out += '=' + *misc[i].value;
  }
  return out;
}

Token parse_token(const std::vector<std::string>& cols) {
  Token t;
  t.id = parse_int(cols[0], "id");
  if (t.id < 1) throw FormatError("token id must be >= 1");
  t.form = absent(cols[1]);
  t.lemma = absent(cols[2]);
  t.upos = absent(cols[3]);
  if (cols[4] != "_") t.xpos = cols[4];
  t.feats = parse_features(cols[5]);
  t.head = parse_int(cols[6], "head");
  if (t.head < 0) throw FormatError("negative head");
  if (t.head == t.id) throw FormatError("token is its own head");
  t.deprel = absent(cols[7]);
  t.deps = absent(cols[8]);
  t.misc = parse_misc(cols[9]);
  return t;
}

struct Builder {
  Document doc;
  Sentence current;
  bool failed = false;
  bool open = false;
  std::size_t start_line = 0;
  std::size_t start_offset = 0;

  void error(std::size_t line, std::size_t offset, std::string message) {
    doc.errors.push_back({line, offset, std::move(message)});
    failed = true;
  }

  void flush() {
    if (!open) return;
    if (!failed) {
      if (current.tokens.empty()) {
        error(start_line, start_offset, "sentence has no tokens");
      } else if (auto problem = check(current); !problem.empty()) {
        error(start_line, start_offset, problem);
      } else {
        doc.sentences.push_back(std::move(current));
      }
    }
    current = Sentence{};
    failed = false;
    open = false;
  }
};

}  // namespace

Features parse_features(std::string_view column) {
  Features feats;
  if (column == "_" || column.empty()) return feats;
  for (auto& piece : split(column, '|')) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == piece.size())
      throw FormatError("malformed feature '" + piece + "'");
    auto [_, inserted] = feats.emplace(piece.substr(0, eq), piece.substr(eq + 1));
    if (!inserted) throw FormatError("duplicate feature '" + piece.substr(0, eq) + "'");
  }
  return feats;
}

std::string format_features(const Features& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (const auto& [k, v] : feats) {
    if (!out.empty()) out += '|';
    out += k + '=' + v;
  }
  return out;
}

std::string check(const Sentence& s) {
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const auto& t = s.tokens[i];
    if (t.id != static_cast<int>(i + 1))
      return "token ids are not consecutive at id " + std::to_string(t.id);
    if (t.head < 0 || t.head == t.id)
      return "invalid head " + std::to_string(t.head) + " on token " + std::to_string(t.id);
    if (t.head > static_cast<int>(s.tokens.size()))
      return "dangling head " + std::to_string(t.head) + " on token " + std::to_string(t.id);
  }
  for (const auto& t : s.tokens) {
    for (const auto* field : {&t.form, &t.lemma, &t.upos, &t.deprel, &t.deps}) {
      if (field->find_first_of("\t\n") != std::string::npos)
        return "control character in token " + std::to_string(t.id);
    }
  }
  for (std::size_t i = 0; i < s.opaque.size(); ++i) {
    if (s.opaque[i].before_token > s.tokens.size()) return "opaque row out of range";
    if (i && s.opaque[i].before_token < s.opaque[i - 1].before_token)
      return "opaque rows out of order";
  }
  return {};
}

Document parse(std::istream& in) {
  Builder b;
  std::string line;
  std::size_t lineno = 0;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto line_offset = offset;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!is_valid_utf8(line)) throw FormatError("invalid UTF-8", lineno);

    if (trim(line).empty()) {
      b.flush();
      continue;
    }
    if (!b.open) {
      b.open = true;
      b.start_line = lineno;
      b.start_offset = line_offset;
    }
    if (line.front() == '#') {
      b.current.metadata.push_back(parse_comment(line));
      continue;
    }
    auto cols = split(line, '\t');
    if (cols.size() != 10) {
      b.error(lineno, line_offset,
              "expected 10 fields, found " + std::to_string(cols.size()));
      continue;
    }
    if (is_opaque_id(cols[0])) {
      b.current.opaque.push_back({b.current.tokens.size(), line});
      continue;
    }
    try {
      auto token = parse_token(cols);
      if (token.id != static_cast<int>(b.current.tokens.size() + 1)) {
        b.error(lineno, line_offset,
                "unexpected token id " + std::to_string(token.id));
        continue;
      }
      b.current.tokens.push_back(std::move(token));
    } catch (const FormatError& e) {
      b.error(lineno, line_offset, e.what());
    }
  }
  b.flush();
  return std::move(b.doc);
}

Document parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return parse(in);
}

void serialize(std::span<const Sentence> sentences, std::ostream& out) {
  for (const auto& s : sentences) {
    if (auto problem = check(s); !problem.empty())
      throw Error("cannot serialize sentence: " + problem);
  }
  for (const auto& s : sentences) {
    for (const auto& c : s.metadata) {
      out << "# " << c.key;
      if (c.value) out << " = " << *c.value;
      out << '\n';
    }
    std::size_t next_opaque = 0;
    const auto emit_opaque = [&](std::size_t before) {
      while (next_opaque < s.opaque.size() && s.opaque[next_opaque].before_token == before)
        out << s.opaque[next_opaque++].line << '\n';
    };
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      emit_opaque(i);
      const auto& t = s.tokens[i];
      out << t.id << '\t' << present(t.form) << '\t' << present(t.lemma) << '\t'
          << present(t.upos) << '\t' << (t.xpos ? *t.xpos : "_") << '\t'
          << format_features(t.feats) << '\t' << t.head << '\t' << present(t.deprel)
          << '\t' << present(t.deps) << '\t' << format_misc(t.misc) << '\n';
    }
    emit_opaque(s.tokens.size());
    out << '\n';
  }
}

std::string serialize(std::span<const Sentence> sentences) {
  std::ostringstream out;
  serialize(sentences, out);
  return out.str();
}

std::string sentence_id(const Sentence& s, std::size_t index) {
  if (const auto* id = s.meta("sent_id")) return *id;
  return std::to_string(index + 1);
}

}  // namespace cxn::conllu
