#include "oracles.hpp"
#include "support.hpp"

#include "oruga/matching.hpp"

#include <doctest.h>

using namespace oruga;
using testing::kind_of;

namespace {

using C = Construction;

struct Arith {
  Document doc = testing::arith_document();
  const ConSpec& cs = *doc.con_spec("arith");
  const TypeSystem& ts = doc.types_of(cs);
  const Construction& con = doc.construction("con")->body;
  const Construction& sum123 = doc.construction("sum123")->body;
  const Pattern& pattern23 = doc.construction("pattern23")->body;
  const Pattern& plus_source = doc.schema("plusJoin")->source_pattern;
};

constexpr MatchOptions kExact{MatchMode::Exact, true};
constexpr MatchOptions kPrefix{MatchMode::Prefix, true};

std::map<std::string, std::string> pairs(std::initializer_list<std::pair<const std::string, std::string>> xs) {
  return xs;
}

// The three invariants every matching must satisfy.
void check_invariants(const Matching& m, const Construction& c, const Pattern& p,
                      const TypeSystem& ts, bool injective = true) {
  auto ctypes = token_types(c);
  auto ptypes = token_types(p);
  std::set<std::string> images;
  for (const auto& t : tokens_of(p)) CHECK(m.map.count(t.id) == 1);
  for (const auto& [pid, token] : m.map) {
    REQUIRE(ctypes.count(token.id));
    CHECK(ctypes.at(token.id) == token.type);
    CHECK(ts.leq(token.type, ptypes.at(pid)));
    images.insert(token.id);
  }
  if (injective) CHECK(images.size() == m.map.size());
}

} // namespace

TEST_CASE("the construction of 1+2=x matches the pattern of its shape") {
  Arith a;
  auto m = find_match(a.con, a.pattern23, a.ts, kExact);
  REQUIRE(m);
  CHECK(m->mode == MatchMode::Exact);
  check_invariants(*m, a.con, a.pattern23, a.ts);
  CHECK(oracle::id_map(*m) == pairs({{"f", "t"}, {"e", "t1"}, {"o", "t11"}, {"b", "t12"},
                                     {"n", "t13"}, {"r", "t2"}, {"y", "t3"}}));
  auto all = oracle::all_matchings(a.con, a.pattern23, a.ts, kExact, true);
  CHECK(all.size() == 1);
  CHECK(all.count(oracle::id_map(*m)));
}

TEST_CASE("prefix matching cuts sub-trees at pattern leaves") {
  Arith a;
  auto m = find_match(a.sum123, a.plus_source, a.ts, kPrefix);
  REQUIRE(m);
  check_invariants(*m, a.sum123, a.plus_source, a.ts);
  CHECK(oracle::id_map(*m) == pairs({{"t", "s"}, {"n", "s1"}, {"p", "p2"}, {"m", "c"}}));
  auto all = oracle::all_matchings(a.sum123, a.plus_source, a.ts, kPrefix, true);
  CHECK(all == std::set{oracle::id_map(*m)});
  // the same pair has no exact match, since n stands for a whole sub-tree
  CHECK_FALSE(find_match(a.sum123, a.plus_source, a.ts, kExact));
}

TEST_CASE("type respect") {
  Arith a;
  CHECK_FALSE(find_match(C::source({"a", "plus"}), C::source({"v", "binRel"}), a.ts, kExact));
  CHECK(find_match(C::source({"a", "plus"}), C::source({"v", "binOp"}), a.ts, kExact));
  CHECK_FALSE(find_match(C::source({"a", "binOp"}), C::source({"v", "plus"}), a.ts, kExact));
}

TEST_CASE("anchored matching") {
  Arith a;
  auto rooted = find_match_anchored(a.sum123, a.plus_source, a.ts, kPrefix, {{"t", "s"}});
  REQUIRE(rooted);
  CHECK(*rooted == *find_match(a.sum123, a.plus_source, a.ts, kPrefix));

  // the leaf 3 is not built by infixOp
  CHECK_FALSE(find_match_anchored(a.sum123, a.plus_source, a.ts, kPrefix, {{"t", "c"}}));
  CHECK(oracle::all_matchings(a.sum123, a.plus_source, a.ts, kPrefix, false, {{"t", "c"}})
            .empty());

  // the inner sum is reachable once anchored
  auto inner = find_match_anchored(a.sum123, a.plus_source, a.ts, kPrefix, {{"t", "s1"}});
  REQUIRE(inner);
  CHECK(oracle::id_map(*inner) == pairs({{"t", "s1"}, {"n", "a"}, {"p", "p1"}, {"m", "b"}}));

  CHECK(find_match_anchored(a.con, a.pattern23, a.ts, kExact, {}) ==
        find_match(a.con, a.pattern23, a.ts, kExact));
  CHECK(find_match_anchored(a.sum123, a.plus_source, a.ts, kPrefix, {}) ==
        find_match(a.sum123, a.plus_source, a.ts, kPrefix));

  CHECK(kind_of([&] {
          find_match_anchored(a.sum123, a.plus_source, a.ts, kPrefix, {{"zz", "s"}});
        }) == ErrorKind::UnboundToken);
  CHECK(kind_of([&] {
          find_match_anchored(a.sum123, a.plus_source, a.ts, kPrefix, {{"t", "zz"}});
        }) == ErrorKind::UnboundToken);
}

TEST_CASE("1+2=x against the plus schema source") {
  Arith a;
  CHECK_FALSE(find_match(a.con, a.plus_source, a.ts, kExact));
  auto m = find_match_anchored(a.con, a.plus_source, a.ts, kPrefix, {{"t", "t1"}});
  REQUIRE(m);
  CHECK(oracle::id_map(*m) == pairs({{"t", "t1"}, {"n", "t11"}, {"p", "t12"}, {"m", "t13"}}));
}

TEST_CASE("all placements") {
  Arith a;
  auto all = find_all_matches(a.sum123, a.plus_source, a.ts, kPrefix, {});
  REQUIRE(all.size() == 2);
  CHECK(all[0].map.at("t").id == "s");
  CHECK(all[1].map.at("t").id == "s1");
  std::set<std::map<std::string, std::string>> got;
  for (const auto& m : all) got.insert(oracle::id_map(m));
  CHECK(got == oracle::all_matchings(a.sum123, a.plus_source, a.ts, kPrefix, false));
}

TEST_CASE("prefix matching follows references into their constructions") {
  auto doc = testing::load_corpus({"dot_diagrams.oruga"});
  const auto& triangle = doc.construction("triangle")->body;
  const auto& ts = *doc.type_system("dotT");
  // remove[r, rotate[...]] only exists by unfolding the reference to v
  auto p = C::apply({"x", "dotDiag"}, "remove",
                    {C::source({"y", "dotDiag"}),
                     C::apply({"z", "dotDiag"}, "rotate", {C::source({"q", "dotDiag"})})});
  // the unfolded rotate consumes w again, so only a non-injective match exists
  CHECK_FALSE(find_match_anchored(triangle, p, ts, kPrefix, {{"x", "w"}}));
  MatchOptions loose{MatchMode::Prefix, false};
  auto m = find_match_anchored(triangle, p, ts, loose, {{"x", "w"}});
  REQUIRE(m);
  CHECK(oracle::id_map(*m) == pairs({{"x", "w"}, {"y", "r"}, {"z", "v"}, {"q", "w"}}));
  CHECK_FALSE(find_match_anchored(triangle, p, ts, {MatchMode::Exact, false}, {{"x", "w"}}));
  CHECK(oracle::all_matchings(triangle, p, ts, loose, false) == std::set{oracle::id_map(*m)});
  CHECK(oracle::all_matchings(triangle, p, ts, kPrefix, false).empty());
}

TEST_CASE("injectivity can be switched off") {
  Arith a;
  auto c = C::apply({"t", "numExp"}, "implicitMult",
                    {C::source({"a", "numeral"}), C::reference("a")});
  auto p = C::apply({"u", "numExp"}, "implicitMult",
                    {C::source({"x", "numExp"}), C::source({"y", "numExp"})});
  CHECK_FALSE(find_match(c, p, a.ts, kPrefix));
  MatchOptions loose{MatchMode::Prefix, false};
  auto m = find_match(c, p, a.ts, loose);
  REQUIRE(m);
  check_invariants(*m, c, p, a.ts, false);
  CHECK(oracle::all_matchings(c, p, a.ts, loose, true).size() == 1);
}

TEST_CASE("matching agrees with brute force on random constructions") {
  Arith a;
  oracle::ArithGenerator gen(1234);
  int found = 0, absent = 0;
  for (int round = 0; round < 150; ++round) {
    auto c = gen.make(8);
    REQUIRE(validate(c, a.cs, a.ts).ok());
    // alternately a pattern cut from c and an unrelated random one
    Pattern p = round % 2 == 0 ? gen.cut_pattern(c, a.ts) : gen.make(5);
    if (tokens_of(p).size() > 8) continue;
    REQUIRE(validate(p, a.cs, a.ts).ok());
    for (auto opts : {kExact, kPrefix}) {
      auto expected = oracle::all_matchings(c, p, a.ts, opts, true);
      auto m = find_match(c, p, a.ts, opts);
      CHECK(m.has_value() == !expected.empty());
      if (m) {
        check_invariants(*m, c, p, a.ts);
        CHECK(expected.count(oracle::id_map(*m)));
        // exact matches are prefix matches
        if (opts.mode == MatchMode::Exact) CHECK(find_match(c, p, a.ts, kPrefix));
        ++found;
      } else {
        ++absent;
      }

      auto anywhere = oracle::all_matchings(c, p, a.ts, opts, false);
      std::set<std::map<std::string, std::string>> got;
      for (const auto& x : find_all_matches(c, p, a.ts, opts, {})) {
        check_invariants(x, c, p, a.ts);
        got.insert(oracle::id_map(x));
      }
      CHECK(got == anywhere);

      // rename invariance
      std::map<std::string, std::string> names;
      for (const auto& t : tokens_of(c)) names[t.id] = "r" + t.id;
      CHECK(find_match(rename_tokens(c, names), p, a.ts, opts).has_value() == m.has_value());
    }
  }
  // both outcomes must actually be exercised
  CHECK(found > 20);
  CHECK(absent > 20);
}

TEST_CASE("instantiation") {
  auto doc = testing::arith_document();
  const auto& ts = *doc.type_system("dotT");
  const auto& target = doc.schema("plusJoin")->target_pattern;
  auto fresh = [](const std::string& id) { return id + "_1"; };

  auto built = instantiate(target, {{"t'", {"v1", "arr"}}}, ts, fresh);
  CHECK(built == C::apply({"v1", "arr"}, "join",
                          {C::source({"a_1", "arr"}), C::source({"b_1", "arr"})}));

  auto inst = instantiate_with_bindings(target, {{"t'", {"v1", "arr"}}}, ts, fresh);
  CHECK(inst.fresh == std::vector<Token>{{"a_1", "arr"}, {"b_1", "arr"}});
  CHECK(inst.tokens.at("t'") == Token{"v1", "arr"});

  // bound tokens are refined downwards
  CHECK(instantiate(C::source({"v", "arr"}), {{"v", {"w", "1arr"}}}, ts, fresh) ==
        C::source({"w", "1arr"}));
  CHECK(instantiate(C::source({"v", "arr"}), {{"v", {"w", "dotDiag"}}}, ts, fresh) ==
        C::source({"w", "arr"}));

  CHECK(kind_of([&] {
          instantiate(C::source({"v", "arr"}), {{"v", {"w", "numExp"}}}, ts, fresh);
        }) == ErrorKind::TypeClash);
  CHECK(kind_of([&] {
          instantiate(C::source({"v", "1arr"}), {{"v", {"w", "2arr"}}}, ts, fresh);
        }) == ErrorKind::TypeClash);

  const auto& cs = *doc.con_spec("dotDiagrams");
  CHECK(validate(built, cs, ts).ok());
}

TEST_CASE("instantiation keeps references to bound tokens") {
  auto doc = testing::gauss_document();
  const auto& ts = *doc.type_system("dotT");
  const auto& target = doc.schema("halfRotate")->target_pattern;
  auto c = instantiate(target, {{"t'", {"v0", "arr"}}}, ts,
                       [](const std::string& id) { return id + "_3"; });
  CHECK(c == C::apply({"v0", "arr"}, "rotate",
                      {C::apply({"w_3", "arr"}, "remove",
                                {C::source({"r_3", "arr"}), C::reference("v0")})}));
}
