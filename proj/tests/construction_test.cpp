#include "oracles.hpp"
#include "support.hpp"

#include "oruga/construction.hpp"

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
};

std::set<ViolationKind> kinds(const ValidationReport& r) {
  std::set<ViolationKind> out;
  for (const auto& v : r.violations) out.insert(v.kind);
  return out;
}

std::vector<std::string> ids(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.id);
  return out;
}

// con with the first and third inputs of its infixOp exchanged
Construction mirror_of_con(const Construction& con) {
  const auto& op = con.inputs()[0];
  auto swapped = C::apply(op.token(), op.constructor(),
                          {op.inputs()[2], op.inputs()[1], op.inputs()[0]});
  return C::apply(con.token(), con.constructor(),
                  {swapped, con.inputs()[1], con.inputs()[2]});
}

} // namespace

TEST_CASE("the construction of 1+2=x validates") {
  Arith a;
  auto report = validate(a.con, a.cs, a.ts);
  CHECK(report.ok());
  CHECK(report.summary().empty());
  CHECK(ids(tokens_of(a.con)) ==
        std::vector<std::string>{"t", "t1", "t11", "t12", "t13", "t2", "t3"});
}

TEST_CASE("a single token is a construction") {
  Arith a;
  auto c = C::source({"t", "plus"});
  CHECK(validate(c, a.cs, a.ts).ok());
  CHECK(ids(tokens_of(C::source({"a", "plus"}))) == std::vector<std::string>{"a"});
}

TEST_CASE("output typing uses the subtype order") {
  Arith a;
  CHECK_FALSE(a.ts.leq("formula", "numExp"));
  auto bad = C::apply({"t", "formula"}, "infixOp",
                      {C::source({"a", "numeral"}), C::source({"p", "plus"}),
                       C::source({"b", "numeral"})});
  auto report = validate(bad, a.cs, a.ts);
  CHECK(kinds(report) == std::set<ViolationKind>{ViolationKind::Typing});
  CHECK(report.violations.front().token_id == "t");

  auto good = C::apply({"t", "1plus2"}, "infixOp",
                       {C::source({"a", "numeral"}), C::source({"p", "plus"}),
                        C::source({"b", "numeral"})});
  CHECK(validate(good, a.cs, a.ts).ok());
}

TEST_CASE("input typing is checked per position") {
  Arith a;
  auto c = C::apply({"t", "numExp"}, "infixOp",
                    {C::source({"a", "plus"}), C::source({"p", "numeral"}),
                     C::source({"b", "numeral"})});
  auto report = validate(c, a.cs, a.ts);
  CHECK(report.violations.size() == 2);
  CHECK(kinds(report) == std::set<ViolationKind>{ViolationKind::Typing});
}

TEST_CASE("every violation is reported") {
  Arith a;
  auto arity = C::apply({"t", "numExp"}, "infixOp", {C::source({"a", "numeral"})});
  CHECK(kinds(validate(arity, a.cs, a.ts)) == std::set<ViolationKind>{ViolationKind::Arity});

  auto unresolved = C::apply({"t", "numExp"}, "implicitMult",
                             {C::source({"a", "numeral"}), C::reference("zz")});
  CHECK(kinds(validate(unresolved, a.cs, a.ts)) ==
        std::set<ViolationKind>{ViolationKind::UnresolvedReference});

  auto inconsistent = C::apply({"t", "numExp"}, "implicitMult",
                               {C::source({"a", "numeral"}), C::source({"a", "var"})});
  CHECK(kinds(validate(inconsistent, a.cs, a.ts)).count(ViolationKind::InconsistentTokenType));

  auto duplicate = C::apply({"t", "numExp"}, "implicitMult",
                            {C::source({"a", "numeral"}), C::source({"a", "numeral"})});
  CHECK(kinds(validate(duplicate, a.cs, a.ts)) ==
        std::set<ViolationKind>{ViolationKind::DuplicateBinding});

  auto two_applies = C::apply(
      {"t", "numExp"}, "implicitMult",
      {C::apply({"u", "numExp"}, "implicitMult",
                {C::source({"a", "numeral"}), C::source({"b", "numeral"})}),
       C::apply({"u", "numExp"}, "implicitMult", {C::reference("a"), C::reference("b")})});
  CHECK(kinds(validate(two_applies, a.cs, a.ts)) ==
        std::set<ViolationKind>{ViolationKind::DuplicateBinding});

  auto unknown_ctor = C::apply({"t", "numExp"}, "join", {C::source({"a", "numeral"})});
  CHECK(kinds(validate(unknown_ctor, a.cs, a.ts)) ==
        std::set<ViolationKind>{ViolationKind::UnknownConstructor});

  auto unknown_type = C::source({"t", "nothing"});
  CHECK(kinds(validate(unknown_type, a.cs, a.ts)) ==
        std::set<ViolationKind>{ViolationKind::UnknownType});

  auto many = C::apply({"t", "formula"}, "infixOp",
                       {C::source({"a", "nothing"}), C::reference("zz")});
  auto report = validate(many, a.cs, a.ts);
  CHECK(kinds(report) == std::set<ViolationKind>{ViolationKind::Arity, ViolationKind::Typing,
                                                 ViolationKind::UnresolvedReference,
                                                 ViolationKind::UnknownType});
  CHECK(report.summary().find("zz") != std::string::npos);
}

TEST_CASE("cyclic references validate and terminate") {
  auto doc = testing::load_corpus({"dot_diagrams.oruga"});
  const auto& triangle = doc.construction("triangle")->body;
  const auto& cs = *doc.con_spec("dotDiagrams");
  CHECK(validate(triangle, cs, doc.types_of(cs)).ok());
  // three token boxes, the root occurring twice
  CHECK(ids(tokens_of(triangle)) == std::vector<std::string>{"v", "w", "r"});
  std::size_t occurrences = 0;
  for_each_node(triangle, [&](const Construction&) { ++occurrences; });
  CHECK(occurrences == 4);

  // a token may feed its own constructor; an unbound reference may not
  auto loop = C::apply({"v", "arr"}, "rotate", {C::reference("v")});
  CHECK(validate(loop, cs, doc.types_of(cs)).ok());
  auto dangling = C::apply({"v", "arr"}, "remove", {C::reference("q"), C::reference("q")});
  CHECK_FALSE(validate(dangling, cs, doc.types_of(cs)).ok());
}

TEST_CASE("sub-constructions") {
  Arith a;
  auto t1 = sub_construction_at(a.con, "t1");
  CHECK(t1 == a.con.inputs()[0]);
  CHECK(t1.constructor() == "infixOp");
  CHECK(ids(tokens_of(t1)) == std::vector<std::string>{"t1", "t11", "t12", "t13"});
  CHECK(sub_construction_at(a.con, "t") == a.con);
  CHECK(sub_construction_at(a.con, "t12") == C::source({"t12", "plus"}));
  CHECK(kind_of([&] { sub_construction_at(a.con, "nope"); }) == ErrorKind::UnboundToken);

  // the binding site of a referenced token is its Apply node
  auto doc = testing::load_corpus({"dot_diagrams.oruga"});
  const auto& triangle = doc.construction("triangle")->body;
  CHECK(sub_construction_at(triangle, "v") == triangle);
  CHECK(binding_site(triangle, "w")->constructor() == "remove");
  CHECK(binding_site(triangle, "nope") == nullptr);
}

TEST_CASE("renaming") {
  Arith a;
  std::map<std::string, std::string> identity;
  for (const auto& t : tokens_of(a.con)) identity[t.id] = t.id;
  CHECK(rename_tokens(a.con, identity) == a.con);

  auto swap = identity;
  swap["t11"] = "t13";
  swap["t13"] = "t11";
  auto swapped = rename_tokens(a.con, swap);
  CHECK(validate(swapped, a.cs, a.ts).ok());
  CHECK(swapped != a.con);

  auto collapse = identity;
  collapse["t13"] = "t11";
  CHECK(kind_of([&] { rename_tokens(a.con, collapse); }) == ErrorKind::NonInjectiveRename);

  auto partial = identity;
  partial.erase("t2");
  CHECK(kind_of([&] { rename_tokens(a.con, partial); }) == ErrorKind::UnboundToken);
}

TEST_CASE("renaming maps the token set") {
  Arith a;
  std::map<std::string, std::string> m;
  for (const auto& t : tokens_of(a.con)) m[t.id] = "r_" + t.id;
  auto renamed = rename_tokens(a.con, m);
  std::vector<Token> expected;
  for (const auto& t : tokens_of(a.con)) expected.push_back({m[t.id], t.type});
  CHECK(tokens_of(renamed) == expected);
  CHECK(validate(renamed, a.cs, a.ts).ok());
}

TEST_CASE("equality up to renaming") {
  Arith a;
  std::map<std::string, std::string> m;
  for (const auto& t : tokens_of(a.con)) m[t.id] = "f" + t.id;
  auto renamed = rename_tokens(a.con, m);
  auto found = equal_up_to_renaming(a.con, renamed);
  REQUIRE(found);
  CHECK(*found == m);

  // argument order matters: no bijection of the seven tokens works
  auto mirror = mirror_of_con(a.con);
  CHECK(validate(mirror, a.cs, a.ts).ok());
  CHECK_FALSE(equal_up_to_renaming(a.con, mirror));
  CHECK_FALSE(oracle::bijection(a.con, mirror));
  CHECK(oracle::bijection(a.con, renamed));

  CHECK_FALSE(equal_up_to_renaming(C::source({"a", "plus"}), C::source({"b", "minus"})));
  CHECK(equal_up_to_renaming(C::source({"a", "plus"}), C::source({"b", "plus"})));
  CHECK_FALSE(equal_up_to_renaming(C::reference("a"), C::source({"a", "plus"})));
}

TEST_CASE("equality up to renaming agrees with brute force on random constructions") {
  Arith a;
  auto ts = a.ts.register_dynamic_type("x", "var");
  oracle::ArithGenerator gen(7);
  for (int round = 0; round < 60; ++round) {
    auto c = gen.make(7);
    REQUIRE(validate(c, a.cs, ts).ok());
    auto d = gen.make(7);
    bool same = equal_up_to_renaming(c, d).has_value();
    CHECK(same == oracle::bijection(c, d).has_value());

    std::map<std::string, std::string> m;
    auto toks = tokens_of(c);
    for (std::size_t i = 0; i < toks.size(); ++i) {
      m[toks[i].id] = "q" + std::to_string(toks.size() - 1 - i);
    }
    auto r = rename_tokens(c, m);
    auto w = equal_up_to_renaming(c, r);
    REQUIRE(w);
    CHECK(rename_tokens(c, *w) == r);
  }
}

TEST_CASE("equality up to renaming is an equivalence over the corpus") {
  auto arith = testing::arith_document();
  auto gauss = testing::gauss_document();
  std::vector<Construction> all;
  for (const auto* doc : {&arith, &gauss}) {
    for (const auto& d : doc->declarations()) {
      if (const auto* c = std::get_if<ConstructionDecl>(&d)) all.push_back(c->body);
      if (const auto* s = std::get_if<TransferSchema>(&d)) {
        all.push_back(s->source_pattern);
        all.push_back(s->target_pattern);
      }
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(equal_up_to_renaming(all[i], all[i]));
    for (std::size_t j = 0; j < all.size(); ++j) {
      bool ij = equal_up_to_renaming(all[i], all[j]).has_value();
      CHECK(ij == equal_up_to_renaming(all[j], all[i]).has_value());
      for (std::size_t k = 0; ij && k < all.size(); ++k) {
        if (equal_up_to_renaming(all[j], all[k])) CHECK(equal_up_to_renaming(all[i], all[k]));
      }
    }
  }
}

TEST_CASE("every apply node in validated corpus constructions has its declared arity") {
  for (const auto& doc : {testing::arith_document(), testing::gauss_document()}) {
    for (const auto& d : doc.declarations()) {
      const auto* c = std::get_if<ConstructionDecl>(&d);
      if (!c) continue;
      const auto& cs = *doc.con_spec(c->con_spec);
      CHECK(validate(c->body, cs, doc.types_of(cs)).ok());
      for_each_node(c->body, [&](const Construction& n) {
        if (n.is_apply()) CHECK(n.inputs().size() == cs.signature_of(n.constructor()).arity());
      });
    }
  }
}
