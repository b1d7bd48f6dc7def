#include <gtest/gtest.h>

#include <regex>

#include "cxn/compiler.hpp"
#include "cxn/error.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace cxn {
namespace {

const std::string kHeader =
    "ID\tUD.FORM\tLEMMA\tUPOS\tFEATS\tHEAD\tDEPREL\tREQUIRED\tWITHOUT\tSEM.FEATS\tADJACENCY\tIDENTITY\n";

Pattern compile_rows(const std::string& rows) {
  return compile(conllc::parse("#cxn-id = t\n" + kHeader + rows));
}

std::string grew_of(const std::string& file) {
  return emit_grew(compile(conllc::parse_file(testing::data_path(file))));
}

TEST(Compiler, FareNpsychGolden) {
  EXPECT_EQ(grew_of("fare_npsych.conllc"), testing::read_data("fare_npsych.grew"));
}

TEST(Compiler, NNonNGolden) {
  EXPECT_EQ(grew_of("n_non_n.conllc"), testing::read_data("n_non_n.grew"));
}

TEST(Compiler, RelationIdentityAndFreeOrder) {
  EXPECT_EQ(grew_of("oxymoron.conllc"),
            "pattern {X1 [upos=NOUN]; X2 [upos=NOUN]; X1 << X2; X1 -[nmod]-> X2}\n"
            "% unexpressed: X2 LEMMA=antonym:X1\n");
}

TEST(Compiler, PatternStructure) {
  const auto p = compile(conllc::parse_file(testing::data_path("fare_npsych.conllc")));
  EXPECT_EQ(p.cxn_id, "171");
  EXPECT_EQ(p.root, 0u);
  ASSERT_EQ(p.nodes.size(), 2u);
  EXPECT_EQ(p.nodes[0].lemma, "fare");
  EXPECT_FALSE(p.nodes[0].upos);  // descriptive on a lexically fixed row
  EXPECT_EQ(p.nodes[1].onto_class->str(), "noun.feeling");
  ASSERT_EQ(p.edges.size(), 1u);
  EXPECT_EQ(p.edges[0], (PatternEdge{0, 1, std::string("obj")}));
  EXPECT_EQ(p.edge_into(1), &p.edges[0]);
  EXPECT_EQ(p.edge_into(0), nullptr);
  ASSERT_EQ(p.order.size(), 1u);
  EXPECT_EQ(p.order[0], (OrderLink{0, 1, conllc::Adjacency::Strict}));
}

TEST(Compiler, OptionalNodesLeaveThePattern) {
  const auto p = compile_rows(
      "A\t_\t_\tVERB\t_\t0\troot\t1\t_\t_\t_\t_\n"
      "B\t_\t_\tDET\t_\tC\tdet\t0\t_\t_\t_\t_\n"
      "C\t_\t_\tNOUN\t_\tA\tobj\t1\t_\t_\tFREE\t_\n");
  ASSERT_EQ(p.order.size(), 1u);
  EXPECT_EQ(p.order[0], (OrderLink{0, 2, conllc::Adjacency::Free}));
  EXPECT_EQ(emit_grew(p),
            "pattern {X1 [upos=VERB]; X3 [upos=NOUN]; X1 << X3; X1 -[obj]-> X3}\n"
            "% unexpressed: X2 REQUIRED=0\n");
}

TEST(Compiler, WithoutForms) {
  const auto p = compile_rows(
      "A\t_\t_\tNOUN\t_\t0\troot\t1\tCHILDREN:UPOS=DET,UD.FORM=x,DEPREL=obl\t_\t_\t_\n"
      "B\t_\tbello\t_\tGender=Fem\tA\tamod\t1\tCHILDREN:LEMMA=molto\tOntoClass=noun.act|Aktionsart=x\t_\tFEATS:Number=A\n");
  EXPECT_EQ(emit_grew(p),
            "pattern {X1 [upos=NOUN]; X2 [lemma='bello', Gender=Fem]; X1 < X2; X1 -[amod]-> X2}\n"
            "without {X1 -> X3; X3 [upos=DET]}\n"
            "without {X1 [form='x']}\n"
            "without {X4 -[obl]-> X1}\n"
            "without {X2 -> X5; X5 [lemma='molto']}\n"
            "% unexpressed: X2 OntoClass=noun.act; X2 Aktionsart=x; X2 FEATS:Number=X1\n");
}

TEST(Compiler, UnexpressedIsGroupedByNode) {
  const auto p = compile_rows(
      "A\t_\t_\t_\t_\t_\t_\t1\t_\t_\t_\tLEMMA=C\n"
      "B\t_\t_\t_\t_\t_\t_\t0\t_\t_\tFREE\t_\n"
      "C\t_\t_\t_\t_\t_\t_\t1\t_\tOntoClass=verb.motion\tFREE\t_\n");
  EXPECT_EQ(emit_grew(p),
            "pattern {X1 []; X3 []; X1 << X3}\n"
            "% unexpressed: X1 LEMMA=X3; X2 REQUIRED=0; X3 OntoClass=verb.motion\n");
}

TEST(Compiler, RejectsInvalidDefinitions) {
  conllc::CxnDef def;
  def.cxn_id = "bad";
  conllc::CxnRow a;
  a.id = "A";
  a.required = false;
  def.rows.push_back(a);
  try {
    compile(def);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("construction bad does not validate"), std::string::npos);
  }
}

TEST(CompilerProperty, GrewShape) {
  testing::Gen g(17);
  const std::regex decl(R"(X(\d+) \[)");
  for (int i = 0; i < 1000; ++i) {
    const auto def = testing::random_def(g, 5);
    const auto p = compile(def);
    const auto text = emit_grew(p);
    ASSERT_EQ(text, emit_grew(compile(def)));
    ASSERT_TRUE(text.starts_with("pattern {"));
    ASSERT_TRUE(text.ends_with("\n"));

    const auto first_line = text.substr(0, text.find('\n'));
    std::vector<std::size_t> declared;
    for (auto it = std::sregex_iterator(first_line.begin(), first_line.end(), decl);
         it != std::sregex_iterator(); ++it)
      declared.push_back(std::stoul((*it)[1]) - 1);
    std::vector<std::size_t> required;
    std::size_t withouts = 0;
    for (std::size_t k = 0; k < p.nodes.size(); ++k) {
      if (!p.nodes[k].required) continue;
      required.push_back(k);
      withouts += p.nodes[k].without.size();
    }
    EXPECT_EQ(declared, required) << text;

    std::size_t blocks = 0;
    for (auto pos = text.find("\nwithout {"); pos != std::string::npos;
         pos = text.find("\nwithout {", pos + 1))
      ++blocks;
    EXPECT_EQ(blocks, withouts) << text;
    EXPECT_EQ(std::count(text.begin(), text.end(), '{'), std::count(text.begin(), text.end(), '}'));
    EXPECT_EQ(p.order.size(), required.empty() ? 0 : required.size() - 1);
  }
}

}  // namespace
}  // namespace cxn
