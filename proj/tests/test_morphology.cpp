#include <doctest.h>

#include <set>

#include "negata/morphology.hpp"
#include "support.hpp"

using namespace negata;

TEST_CASE("core table matches the published table") {
  const auto& published = test::published_aux_table();
  const auto& rows = AuxNegationTable::core().rows();
  REQUIRE(rows.size() == 22);
  REQUIRE(published.size() == 22);
  int missing = 0;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& want = published[i];
    CAPTURE(want[0]);
    CHECK(rows[i].aux == want[0]);
    CHECK(negate_aux(want[0], Cue::Not) == want[1]);
    CHECK(negate_aux(want[0], Cue::Never) == want[3]);
    if (want[2] == "-") {
      ++missing;
      CHECK_FALSE(negate_aux(want[0], Cue::Nt));
    } else {
      CHECK(negate_aux(want[0], Cue::Nt) == want[2]);
    }
  }
  CHECK(missing == 8);
}

TEST_CASE("table lookups") {
  CHECK(negate_aux("was", Cue::Nt) == "wasn't");
  CHECK_FALSE(negate_aux("must", Cue::Nt));
  CHECK(negate_aux("be", Cue::Never) == "never be");
  CHECK(negate_aux("Was", Cue::Not) == "was not");
  CHECK_THROWS_AS(negate_aux("seem", Cue::Not), MorphologyError);
  CHECK(AuxNegationTable::core().find("are") == nullptr);
  REQUIRE(AuxNegationTable::supplementary().find("are") != nullptr);
  CHECK(AuxNegationTable::supplementary().find("are")->nt_form == "aren't");
}

TEST_CASE("every cell contains its auxiliary and its cue") {
  for (const auto* table : {&AuxNegationTable::core(), &AuxNegationTable::supplementary()}) {
    for (const auto& row : table->rows()) {
      CAPTURE(row.aux);
      CHECK(row.not_form.find(row.aux) != std::string::npos);
      CHECK(row.not_form.find("not") != std::string::npos);
      CHECK(row.never_form.find(row.aux) != std::string::npos);
      CHECK(row.never_form.find("never") != std::string::npos);
      if (row.nt_form) CHECK(row.nt_form->substr(row.nt_form->size() - 3) == "n't");
    }
  }
}

TEST_CASE("table parser") {
  const auto t = AuxNegationTable::parse("# c\nx\tx not\t-\tx never\ny\ty not\tyn't\ty never\n");
  REQUIRE(t.rows().size() == 2);
  CHECK_FALSE(t.find("x")->nt_form);
  CHECK(t.find("y")->nt_form == "yn't");
}

TEST_CASE("past tense") {
  CHECK(past_tense("go") == "went");
  CHECK(past_tense("walk") == "walked");
  CHECK(past_tense("try") == "tried");
  CHECK(past_tense("play") == "played");
  CHECK(past_tense("stop") == "stopped");
  CHECK(past_tense("like") == "liked");
  CHECK(past_tense("display") == "displayed");
  CHECK(past_tense("visit") == "visited");
  CHECK(past_tense("be") == "was");
  CHECK(past_tense("have") == "had");
}

TEST_CASE("third person singular") {
  CHECK(third_person_singular("have") == "has");
  CHECK(third_person_singular("display") == "displays");
  CHECK(third_person_singular("watch") == "watches");
  CHECK(third_person_singular("try") == "tries");
  CHECK(third_person_singular("go") == "goes");
  CHECK(third_person_singular("fix") == "fixes");
  CHECK(third_person_singular("be") == "is");
  CHECK(third_person_singular("sneak") == "sneaks");
}

TEST_CASE("inflection is total over the irregular table") {
  const auto& table = IrregularVerbTable::standard();
  CHECK(table.size() > 100);
  for (const char* lemma : {"go", "take", "see", "write", "begin", "lose", "win", "think"}) {
    const auto* forms = table.find(lemma);
    REQUIRE(forms != nullptr);
    CHECK(past_tense(lemma) == forms->past);
    CHECK(third_person_singular(lemma) == forms->third_sg);
  }
}

TEST_CASE("expand contraction") {
  CHECK(expand_contraction("can't") == "can");
  CHECK(expand_contraction("won't") == "will");
  CHECK(expand_contraction("Doesn't") == "Does");
  CHECK(expand_contraction("shan't") == "shall");
  CHECK(expand_contraction("isn’t") == "is");
  CHECK(expand_contraction("aren't") == "are");
  CHECK_THROWS_AS(expand_contraction("cat"), MorphologyError);
  CHECK_THROWS_AS(expand_contraction("n't"), MorphologyError);
}

TEST_CASE("contraction round trip over the core table") {
  std::set<std::string> contractible;
  for (const auto& row : AuxNegationTable::core().rows()) {
    if (!row.nt_form) continue;
    contractible.insert(row.aux);
    CHECK(expand_contraction(*row.nt_form) == row.aux);
    CHECK(negate_aux(expand_contraction(*row.nt_form), Cue::Nt) == row.nt_form);
  }
  CHECK(contractible.size() == 14);
}

TEST_CASE("modals and case") {
  for (const char* m : {"can", "could", "will", "would", "shall", "should", "must", "may", "might", "'ll"}) {
    CHECK(is_modal(m));
  }
  CHECK_FALSE(is_modal("have"));
  CHECK(match_case("does", "Did") == "Does");
  CHECK(match_case("does", "DID") == "DOES");
  CHECK(match_case("does", "did") == "does");
}
