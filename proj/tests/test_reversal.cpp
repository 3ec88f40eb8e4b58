#include <doctest.h>

#include <map>

#include "negata/reversal.hpp"
#include "support.hpp"

using namespace negata;

namespace {

ParsedSentence golden(const std::string& id) {
  for (auto& c : test::load_golden()) {
    if (c.id == id) return c.sentence;
  }
  throw std::runtime_error("no golden case " + id);
}

// "She eats any fruit." already carries an NPI before any cue is added.
const char* kAnyFruit =
    "1\tShe\tshe\tPRON\tPRP\tCase=Nom|Number=Sing|Person=3|PronType=Prs\t2\tnsubj\t_\t_\n"
    "2\teats\teat\tVERB\tVBZ\tMood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin\t0\troot\t_\t_\n"
    "3\tany\tany\tDET\tDT\t_\t4\tdet\t_\t_\n"
    "4\tfruit\tfruit\tNOUN\tNN\tNumber=Sing\t2\tobj\t_\tSpaceAfter=No\n"
    "5\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_\n\n";

}  // namespace

TEST_CASE("golden reversal cases") {
  const auto cases = test::load_golden();
  CHECK(cases.size() >= 10);
  for (const auto& c : cases) {
    CAPTURE(c.id);
    CHECK(test::run_golden(c) == c.expect);
  }
}

TEST_CASE("auxiliary selection") {
  using V = std::vector<std::string>;
  CHECK(select_auxiliary(V{"might", "have", "been"}) == 1);
  CHECK(select_auxiliary(V{"is"}) == 0);
  CHECK(select_auxiliary(V{"has", "been"}) == 0);
  CHECK(select_auxiliary(V{"will", "be"}) == 0);
  CHECK(select_auxiliary(V{"could", "'ve", "been"}) == 1);

  const auto s = golden("might-have-been");
  const auto main = main_verb(s);
  REQUIRE(main);
  const auto chain = aux_chain(s, *main);
  REQUIRE(chain.size() == 3);
  CHECK(s.at(select_auxiliary(s, chain)).form == "have");
}

TEST_CASE("outcome metadata") {
  const auto r = add_negation(golden("must-nt-degrades"), Cue::Nt);
  REQUIRE(r);
  CHECK(r.outcome().direction == Direction::Added);
  CHECK(r.outcome().requested == Cue::Nt);
  CHECK(r.outcome().cue_used == Cue::Not);
  CHECK(r.outcome().degraded());

  const auto removed = remove_negation(golden("display-remove"));
  REQUIRE(removed);
  CHECK(removed.outcome().direction == Direction::Removed);
  CHECK(removed.outcome().cue_used == Cue::Nt);
  CHECK_FALSE(removed.outcome().degraded());
}

TEST_CASE("edits replay to the output") {
  const auto s = golden("display-add-nt");
  const auto r = add_negation(s, Cue::Nt);
  REQUIRE(r);
  const auto& edits = r.outcome().edits;
  std::map<EditKind, int> kinds;
  for (const auto& e : edits) ++kinds[e.kind];
  CHECK(kinds[EditKind::InsertAux] == 1);
  CHECK(kinds[EditKind::InsertCue] == 1);
  CHECK(kinds[EditKind::ReplaceVerbForm] == 1);
  CHECK(kinds[EditKind::SwapNPI] == 1);
  CHECK(replay(surface(s), edits) == surface(r.outcome().output));
  CHECK(r.outcome().output.size() == s.size() + 2);

  auto broken = edits;
  broken.front().before = "nonsense";
  if (broken.front().op != EditOp::Insert) CHECK_THROWS_AS(replay(surface(s), broken), std::logic_error);
  std::vector<Edit> far = {{EditOp::Delete, EditKind::DeleteCue, 99, "x", "", true, std::nullopt}};
  CHECK_THROWS_AS(replay(surface(s), far), std::logic_error);
}

TEST_CASE("token delta") {
  const auto direct = add_negation(golden("shopping-not"), Cue::Not);
  REQUIRE(direct);
  CHECK(direct.outcome().output.size() == golden("shopping-not").size() + 1);

  const auto do_support = add_negation(golden("went-not"), Cue::Not);
  REQUIRE(do_support);
  CHECK(do_support.outcome().output.size() == golden("went-not").size() + 2);

  const auto removal = remove_negation(golden("did-not-go"));
  REQUIRE(removal);
  CHECK(removal.outcome().output.size() == golden("did-not-go").size() - 2);
}

TEST_CASE("removal undoes addition outside NPI contexts") {
  for (const char* id : {"shopping-not", "went-not", "store-closed-not", "might-have-been", "watches", "can-nt"}) {
    CAPTURE(id);
    const auto s = golden(id);
    const auto added = add_negation(s, Cue::Not);
    REQUIRE(added);
    const auto back = remove_negation(added.outcome().output);
    REQUIRE(back);
    CHECK(back.outcome().text == detokenize(s));
  }
}

TEST_CASE("pre-existing NPI breaks the round trip") {
  const auto s = test::parse_one(kAnyFruit);
  const auto added = add_negation(s, Cue::Not);
  REQUIRE(added);
  CHECK(added.outcome().text == "She does not eat any fruit.");
  const auto back = remove_negation(added.outcome().output);
  REQUIRE(back);
  CHECK(back.outcome().text == "She eats some fruit.");
}

TEST_CASE("add and remove reject the wrong polarity") {
  const auto add = add_negation(golden("display-remove"), Cue::Not);
  REQUIRE_FALSE(add);
  CHECK(add.error().reason == Rejection::NotAffirmative);
  const auto remove = remove_negation(golden("went-not"));
  REQUIRE_FALSE(remove);
  CHECK(remove.error().reason == Rejection::NoCue);
}

TEST_CASE("cue policy") {
  CHECK(CuePolicy::fixed(Cue::Never).draw(1) == Cue::Never);
  CHECK(CuePolicy::fixed(Cue::Never).is_fixed());
  CHECK(CuePolicy::distribution({0, 1, 0}).draw(12345) == Cue::Nt);
  CHECK_THROWS_AS(CuePolicy::distribution({0.5, 0.2, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(CuePolicy::distribution({1.5, -0.5, 0}), std::invalid_argument);

  const auto mixed = CuePolicy::distribution({0.5, 0.3, 0.2});
  std::map<Cue, int> seen;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) ++seen[mixed.draw(seed)];
  CHECK(seen[Cue::Not] > 1300);
  CHECK(seen[Cue::Nt] > 750);
  CHECK(seen[Cue::Never] > 450);
}

TEST_CASE("reverse polarity dispatches on polarity") {
  const auto policy = CuePolicy::distribution({0.4, 0.4, 0.2});
  const auto removed = reverse_polarity(golden("display-remove"), policy, 3);
  REQUIRE(removed);
  CHECK(removed.outcome().direction == Direction::Removed);
  CHECK(removed.outcome().text == "It displayed some images.");

  const auto never = reverse_polarity(golden("shopping-not"), CuePolicy::fixed(Cue::Never), 3);
  REQUIRE(never);
  CHECK(never.outcome().text == "I was never shopping.");

  const auto a = reverse_polarity(golden("went-not"), policy, 99);
  const auto b = reverse_polarity(golden("went-not"), policy, 99);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a.outcome().text == b.outcome().text);

  const auto rejected = reverse_polarity(golden("multiple"), policy, 3);
  REQUIRE_FALSE(rejected);
  CHECK(rejected.error().reason == Rejection::MultipleCues);
}

TEST_CASE("property suite on the fixture corpus") {
  const auto report = test::check_properties(test::load_fixture("corpus_1k.conllu"));
  CHECK(report.affirmatives > 400);
  CHECK(report.eligible == 400);
  CHECK(report.round_trip_a > 200);
  CHECK(report.contractible == 14);
  for (const auto& v : report.violations) FAIL_CHECK(v);
}
