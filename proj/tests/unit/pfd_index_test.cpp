#include "fdlab/pfd_index.hpp"

#include <gtest/gtest.h>

#include <map>

#include "fdlab/error.hpp"
#include "fdlab/io.hpp"
#include "fdlab/semantics.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fdlab;

namespace {

const Schema kStaff{"employee", "superior"};

PfdIndex staff_index() {
  return PfdIndex(kStaff, FunctionalDependency::parse(kStaff, {"employee"}, {"superior"}));
}

AnyTuple row(std::string_view text) {
  return parse_table("employee,superior\n" + std::string(text) + "\n").tuple(0);
}

std::vector<StandardTuple> answers(std::initializer_list<std::string_view> vs) {
  std::vector<StandardTuple> out;
  for (auto v : vs) out.push_back(StandardTuple({Value(v)}));
  return out;
}

StandardTuple binding(std::string_view v) { return StandardTuple({Value(v)}); }

// Entries the index should hold for `stored`, computed from full expansions.
std::map<oracle::Row, std::pair<oracle::Rows, std::size_t>> expected_entries(
    const std::vector<AnyTuple>& stored, const FunctionalDependency& fd) {
  std::map<oracle::Row, std::pair<oracle::Rows, std::size_t>> out;
  for (const auto& t : stored) {
    const auto e = oracle::expand(t);
    const std::vector<oracle::Row> rows(e.begin(), e.end());
    for (const auto& a : oracle::bindings(rows, fd.lhs)) {
      auto& slot = out[a];
      slot.first = oracle::selection(rows, fd.lhs, a, fd.rhs);
      ++slot.second;
    }
  }
  return out;
}

std::map<oracle::Row, std::pair<oracle::Rows, std::size_t>> actual_entries(const PfdIndex& idx) {
  std::map<oracle::Row, std::pair<oracle::Rows, std::size_t>> out;
  for (const auto& [a, e] : idx.entries()) {
    oracle::Rows ys;
    for (const auto& y : e.answer) ys.insert(y.cells);
    out[a.cells] = {std::move(ys), e.support};
  }
  return out;
}

}  // namespace

TEST(PfdIndex, StartsEmpty) {
  auto idx = staff_index();
  EXPECT_TRUE(idx.empty());
  EXPECT_TRUE(idx.check(row("{John|Peter},{Jill|Bob}")).accepted);
  EXPECT_TRUE(idx.empty());
}

TEST(PfdIndex, RejectsFdOutsideSchema) {
  EXPECT_THROW(PfdIndex(kStaff, FunctionalDependency(AttrSet{0}, AttrSet{2})), SchemaError);
}

TEST(PfdIndex, RepeatedInsertIncrementsSupport) {
  auto idx = staff_index();
  EXPECT_TRUE(idx.insert(row("John,{Jill|Bob}")).accepted);
  EXPECT_TRUE(idx.insert(row("John,{Jill|Bob}")).accepted);
  ASSERT_EQ(idx.size(), 1u);
  const auto* e = idx.find(binding("John"));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->support, 2u);
  EXPECT_EQ(e->answer, answers({"Bob", "Jill"}));
}

TEST(PfdIndex, ConflictingAnswerIsRejectedWithBothAnswerSets) {
  auto idx = staff_index();
  ASSERT_TRUE(idx.insert(row("John,{Jill|Bob}")).accepted);
  const auto before = idx;
  const auto v = idx.insert(row("John,Jill"));
  EXPECT_FALSE(v.accepted);
  ASSERT_TRUE(v.conflict);
  EXPECT_EQ(v.conflict->binding, binding("John"));
  EXPECT_EQ(v.conflict->stored, answers({"Bob", "Jill"}));
  EXPECT_EQ(v.conflict->incoming, answers({"Jill"}));
  EXPECT_EQ(idx, before);
}

TEST(PfdIndex, RejectIsAtomic) {
  auto idx = staff_index();
  ASSERT_TRUE(idx.insert(row("Peter,Bob")).accepted);
  const auto before = idx;
  // Ann would be new but Peter conflicts, so nothing is stored.
  EXPECT_FALSE(idx.insert(row("{Ann|Peter},Jill")).accepted);
  EXPECT_EQ(idx, before);
  EXPECT_EQ(idx.find(binding("Ann")), nullptr);
}

TEST(PfdIndex, CorrelatedDisjunctiveTuplesAreBothAccepted) {
  const auto r =
      parse_table("A,B,C,D\n(a1,b1,c1,d1)||(a2,b2,c2,d2)\n(a1,b1,c2,d2)||(a2,b2,c1,d1)\n");
  PfdIndex ab(r.schema(), FunctionalDependency::parse(r.schema(), {"A"}, {"B"}));
  PfdIndex cd(r.schema(), FunctionalDependency::parse(r.schema(), {"C"}, {"D"}));
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_TRUE(ab.insert(r.tuple(i)).accepted);
    EXPECT_TRUE(cd.insert(r.tuple(i)).accepted);
  }
  EXPECT_EQ(ab.size(), 2u);
  EXPECT_EQ(ab.find(StandardTuple({Value("a1")}))->support, 2u);
  EXPECT_NE(ab, cd);
}

TEST(PfdIndex, CheckNeverMutates) {
  auto idx = staff_index();
  const auto empty = idx;
  EXPECT_TRUE(idx.check(row("John,{Jill|Bob}")).accepted);
  EXPECT_EQ(idx, empty);
  idx.insert(row("John,{Jill|Bob}"));
  const auto one = idx;
  EXPECT_TRUE(idx.check(row("John,{Jill|Bob}")).accepted);
  const auto first = idx.check(row("John,Jill"));
  const auto again = idx.check(row("John,Jill"));
  EXPECT_FALSE(first.accepted);
  EXPECT_FALSE(again.accepted);
  EXPECT_EQ(first.conflict->binding, again.conflict->binding);
  EXPECT_EQ(idx, one);
}

TEST(PfdIndex, RemoveUndoesInsert) {
  auto idx = staff_index();
  const auto t = row("John,{Jill|Bob}");
  idx.insert(t);
  idx.insert(t);
  idx.remove(t);
  ASSERT_NE(idx.find(binding("John")), nullptr);
  EXPECT_EQ(idx.find(binding("John"))->support, 1u);
  idx.remove(t);
  EXPECT_TRUE(idx.empty());
}

TEST(PfdIndex, RemoveOfUnknownTupleThrowsAndChangesNothing) {
  auto idx = staff_index();
  EXPECT_THROW(idx.remove(row("John,Jill")), ContractError);
  idx.insert(row("John,{Jill|Bob}"));
  const auto before = idx;
  EXPECT_THROW(idx.remove(row("John,Jill")), ContractError);
  EXPECT_THROW(idx.remove(row("{John|Ann},{Jill|Bob}")), ContractError);
  EXPECT_EQ(idx, before);
}

TEST(PfdIndex, OverlappingSidesIncludeTheLhsInAnswers) {
  const auto r = parse_table("A,B\n{a1|a2},b1\n");
  const auto fd = FunctionalDependency::parse(r.schema(), {"A"}, {"A", "B"});
  PfdIndex idx(r.schema(), fd);
  ASSERT_TRUE(idx.insert(r.tuple(0)).accepted);
  EXPECT_EQ(idx.find(StandardTuple({Value("a1")}))->answer,
            (std::vector<StandardTuple>{StandardTuple({Value("a1"), Value("b1")})}));
  const auto other = parse_table("A,B\na1,{b1|b2}\n").tuple(0);
  const auto both = Table::from_tuples(r.schema(), Model::Vague, {r.tuple(0), other});
  EXPECT_EQ(idx.check(other).accepted, check_pfd(both, fd));
  EXPECT_FALSE(idx.check(other).accepted);
}

TEST(PfdIndex, ArityMismatchIsASchemaError) {
  auto idx = staff_index();
  EXPECT_THROW(idx.insert(StandardTuple({Value("x")})), SchemaError);
}

// Properties.

class PfdIndexOracle : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(PfdIndexOracle, RandomSequencesMatchBatchChecking) {
  gen::Rng rng(GetParam());
  gen::Shape shape;
  shape.max_attrs = 3;
  shape.domain = 2;
  int accepted = 0, rejected = 0, removed = 0;
  for (int seq = 0; seq < 60; ++seq) {
    const bool disjunctive = gen::coin(rng, 0.3);
    const std::size_t n = gen::uniform(rng, 1, shape.max_attrs);
    const auto schema = gen::schema(n);
    const auto fd = gen::fd(rng, n);
    const Model model = disjunctive ? Model::Disjunctive : Model::Vague;
    PfdIndex idx(schema, fd);
    std::vector<AnyTuple> stored;
    const std::size_t length = gen::uniform(rng, 1, 50);
    for (std::size_t step = 0; step < length; ++step) {
      if (!stored.empty() && gen::coin(rng, 0.25)) {
        const auto k = gen::uniform(rng, 0, stored.size() - 1);
        idx.remove(stored[k]);
        stored.erase(stored.begin() + static_cast<std::ptrdiff_t>(k));
        ++removed;
      } else {
        AnyTuple t = disjunctive ? AnyTuple(gen::disjunctive_tuple(rng, n, shape))
                                 : AnyTuple(gen::vague_tuple(rng, n, shape));
        auto with = stored;
        with.push_back(t);
        const bool expected = oracle::pfd(Table::from_tuples(schema, model, with), fd);
        const auto v = idx.insert(t);
        ASSERT_EQ(v.accepted, expected);
        if (v.accepted) {
          stored.push_back(t);
          ++accepted;
        } else {
          ++rejected;
        }
      }
      ASSERT_TRUE(oracle::pfd(Table::from_tuples(schema, model, stored), fd));
      ASSERT_EQ(actual_entries(idx), expected_entries(stored, fd));
      PfdIndex replay(schema, fd);
      for (const auto& t : stored) ASSERT_TRUE(replay.insert(t).accepted);
      ASSERT_EQ(idx, replay);
    }
  }
  EXPECT_GT(accepted, 100);
  EXPECT_GT(rejected, 20);
  EXPECT_GT(removed, 20);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PfdIndexOracle, ::testing::Values(51, 52, 53, 54));
