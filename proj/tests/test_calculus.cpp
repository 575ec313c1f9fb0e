#include <doctest.h>

#include "fuzz.hpp"

using namespace avon;

namespace {

Interpretation sets() {
  return parse_model(
      "const A = {#1,#2}\n"
      "const B = {#2}\n"
      "const C = {#2}\n"
      "const E = {}\n"
      "const a = #3\n");
}

ExprPtr P(std::string_view s, const Interpretation& I) {
  SymbolTable t = I.symbols();
  t.variables = {"x", "y", "z", "u"};
  return parse(s, t);
}

Context ctx(std::initializer_list<std::pair<const char*, const char*>> bs, const Interpretation& I) {
  Context k;
  for (auto [v, d] : bs) k.push_back({v, P(d, I)});
  return k;
}

Instantiation inst(Schema s, Context k, std::map<std::string, MetaValue> m) {
  return Instantiation{s, std::move(k), std::move(m)};
}

}  // namespace

TEST_CASE("gamma nests universal closures") {
  auto I = sets();
  auto k = ctx({{"x", "A"}, {"y", "B"}}, I);
  auto phi = P("(=)(x,y)", I);
  CHECK(render(gamma(k, phi)) == "(∀)({}(x:A,(∀)({}(y:B,(=)(x,y)))))");
  CHECK(render(gamma({}, phi)) == "(=)(x,y)");
  // Splitting off the last binder.
  auto h = prefix(k, 1);
  CHECK(equal(gamma(k, phi), gamma(h, gamma(ctx({{"y", "B"}}, I), phi))));
  CHECK_THROWS_AS(gamma_checked(k, P("x", I), I), SemanticError);
  CHECK_NOTHROW(gamma_checked(k, phi, I));
}

TEST_CASE("schema table") {
  CHECK(all_schemas().size() == 23);
  for (Schema s : all_schemas()) CHECK(schema_from_name(schema_name(s)) == s);
  CHECK(schema_from_name("semantic") == Schema::Semantic);
  CHECK(!schema_from_name("R5.2"));
  CHECK(premise_count(Schema::R5_3) == 2);
  CHECK(premise_count(Schema::A5_16) == 0);
}

TEST_CASE("transitivity accepts the right order only") {
  auto I = sets();
  auto k = ctx({{"x", "A"}}, I);
  auto i = inst(Schema::R5_3, k, {{"phi", P("(∈)(x,C)", I)}, {"psi", P("(∈)(x,B)", I)},
                                  {"chi", P("(∈)(x,A)", I)}});
  auto p1 = P("(∀)({}(x:A,(→)((∈)(x,C),(∈)(x,B))))", I);
  auto p2 = P("(∀)({}(x:A,(→)((∈)(x,B),(∈)(x,A))))", I);
  auto c = P("(∀)({}(x:A,(→)((∈)(x,C),(∈)(x,A))))", I);
  CHECK(check_instance(i, {p1, p2}, c, I));
  auto swapped = check_instance(i, {p2, p1}, c, I);
  CHECK(swapped.code == "ShapeMismatch");
  CHECK(check_instance(i, {p1}, c, I).code == "ShapeMismatch");
  CHECK(check_instance(i, {p1, p2}, p1, I).code == "ShapeMismatch");
}

TEST_CASE("metavariables must match the schema") {
  auto I = sets();
  auto k = ctx({{"x", "A"}}, I);
  auto phi = P("(∈)(x,B)", I);
  auto missing = expand_instance(inst(Schema::A5_2, k, {{"phi", phi}}), I);
  CHECK(missing.verdict.code == "BadInstantiation");
  auto extra = expand_instance(inst(Schema::A5_2, k, {{"phi", phi}, {"psi", phi}, {"chi", phi}}), I);
  CHECK(extra.verdict.code == "BadInstantiation");
  auto no_binder = expand_instance(inst(Schema::A5_2, {}, {{"phi", phi}, {"psi", phi}}), I);
  CHECK(no_binder.verdict.code == "BadInstantiation");
  auto ok = expand_instance(inst(Schema::A5_2, k, {{"phi", phi}, {"psi", phi}}), I);
  CHECK(ok.verdict);
  CHECK(ok.forms.size() == 2);
  // Wrong sort of metavariable value.
  auto bad_i = expand_instance(inst(Schema::A5_16, k, {{"i", phi}}), I);
  CHECK(bad_i.verdict.code == "BadInstantiation");
  CHECK(expand_instance(inst(Schema::A5_16, k, {{"i", 2L}}), I).verdict.code == "BadInstantiation");
  // Metavariables must be sentences over the binders.
  auto not_sentence = expand_instance(inst(Schema::A5_2, k, {{"phi", P("x", I)}, {"psi", phi}}), I);
  CHECK(!not_sentence.verdict);
}

TEST_CASE("domain membership needs the later variables unbound in the domain") {
  auto I = sets();
  auto good = expand_instance(inst(Schema::A5_16, ctx({{"x", "A"}, {"y", "B"}}, I), {{"i", 2L}}), I);
  REQUIRE(good.verdict);
  CHECK(render(good.forms[0].conclusion) == "(∀)({}(x:A,(∀)({}(y:B,(∈)(y,B)))))");
  auto self = expand_instance(inst(Schema::A5_16, ctx({{"x", "{}(x:A,x)"}}, I), {{"i", 1L}}), I);
  CHECK(self.verdict.code == "SideConditionViolated");
  auto later = expand_instance(
      inst(Schema::A5_16, ctx({{"x", "{}(y:A,y)"}, {"y", "B"}}, I), {{"i", 1L}}), I);
  CHECK(later.verdict.code == "SideConditionViolated");
}

TEST_CASE("split schemas") {
  auto I = sets();
  auto k = ctx({{"x", "A"}, {"y", "A"}}, I);
  // R5.15 wants a set-valued phi.
  auto r15 = expand_instance(
      inst(Schema::R5_15, k, {{"chi", P("(∈)(x,A)", I)}, {"phi", P("a", I)}, {"t", P("x", I)}}), I);
  CHECK(r15.verdict.code == "SideConditionViolated");
  // R5.4 wants t in the domain of the last binder.
  auto k2 = ctx({{"x", "A"}, {"y", "B"}}, I);
  auto r4 = expand_instance(inst(Schema::R5_4, k2, {{"chi", P("(∈)(x,A)", I)}, {"phi", P("(=)(y,y)", I)},
                                                    {"t", P("x", I)}, {"tprime", P("x", I)}}),
                            I);
  CHECK(r4.verdict.code == "SideConditionViolated");
  REQUIRE(r4.verdict.witness);
  CHECK(render_state(*r4.verdict.witness) == "[x=#1]");
  // Split schemas need at least two binders; R5.20 exactly one.
  CHECK(expand_instance(inst(Schema::R5_19, ctx({{"x", "A"}}, I), {{"phi", P("(∈)(x,B)", I)}}), I)
            .verdict.code == "BadInstantiation");
  CHECK(expand_instance(inst(Schema::R5_20, k, {{"psi", P("(∈)(x,B)", I)}, {"phi", P("(∈)(a,A)", I)}}), I)
            .verdict.code == "BadInstantiation");
  // R5.20 wants phi closed.
  CHECK(expand_instance(inst(Schema::R5_20, ctx({{"x", "A"}}, I),
                             {{"psi", P("(∈)(x,B)", I)}, {"phi", P("(∈)(x,A)", I)}}),
                        I)
            .verdict.code != "ok");
  // R5.14 instantiates the universal at t.
  auto r14 = inst(Schema::R5_14, k, {{"chi", P("(∈)(x,B)", I)}, {"phi", P("(∈)(y,A)", I)}, {"t", P("x", I)}});
  CHECK(check_instance(r14, {P("(∀)({}(x:A,(→)((∈)(x,B),(∀)({}(y:A,(∈)(y,A))))))", I)},
                       P("(∀)({}(x:A,(→)((∈)(x,B),(∈)(x,A))))", I), I));
}

TEST_CASE("semantic admission") {
  auto I = sets();
  CHECK(admit_semantic_axiom(P("(=)(a,a)", I), I));
  CHECK(admit_semantic_axiom(P("(∈)(a,A)", I), I).code == "EvaluatesFalse");
  CHECK(admit_semantic_axiom(P("a", I), I).code == "NotASentence");
  CHECK(admit_semantic_axiom(P("(∈)(x,A)", I), I).code == "NotASentence");
  Instantiation s;
  CHECK(check_instance(s, {}, P("(∀)({}(x:B,(∈)(x,C)))", I), I));
  CHECK(check_instance(s, {P("(=)(a,a)", I)}, P("(=)(a,a)", I), I).code == "BadInstantiation");
}

TEST_CASE("closure means truth at every state") {
  auto I = sets();
  CHECK(theorem_3_5_check(ctx({{"x", "A"}, {"y", "B"}}, I), P("(=)(x,y)", I), I));
  CHECK(theorem_3_5_check(ctx({{"x", "E"}, {"y", "B"}}, I), P("(=)(x,y)", I), I));
  CHECK(meaning(gamma(ctx({{"x", "E"}, {"y", "B"}}, I), P("(=)(x,y)", I)), I).is_true());
  Generator g(41);
  int n = 0;
  for (int r = 0; r < 300; ++r) {
    auto J = g.model(g.uniform(1, 4));
    auto k = g.context({"x", "y", "z"}, g.uniform(1, 3));
    auto phi = g.sentence(k, 3);
    if (!check_context(k, J) || !is_sentence(k, phi, J)) continue;
    ++n;
    CHECK_MESSAGE(theorem_3_5_check(k, phi, J), render(phi));
  }
  CHECK(n >= 100);
}

TEST_CASE("pulling a universal out of an implication") {
  // gamma[h, psi -> forall(x_{m+1}, phi)] and gamma[k, psi -> phi] agree when
  // psi lives over h.
  Generator g(43);
  int n = 0;
  for (int r = 0; r < 400; ++r) {
    auto I = g.model(g.uniform(1, 3));
    auto k = g.context({"x", "y", "z"}, g.uniform(2, 3));
    if (!check_context(k, I)) continue;
    auto h = prefix(k, k.size() - 1);
    auto psi = g.sentence(h, 2), phi = g.sentence(k, 2);
    if (!is_sentence(h, psi, I) || !is_sentence(k, phi, I)) continue;
    if (bound_vars(psi).count(k.back().var)) continue;
    ++n;
    Binder last = k.back();
    auto inner = mk_op(Op::Forall, {mk_set({last}, phi)});
    auto lhs = meaning(gamma(h, mk_op(Op::Implies, {psi, inner})), I);
    auto rhs = meaning(gamma(k, mk_op(Op::Implies, {psi, phi})), I);
    CHECK_MESSAGE(lhs == rhs, render(psi) << " / " << render(phi));
  }
  CHECK(n >= 100);
}

TEST_CASE("axiom instances are always true") {
  Generator g(44);
  int n = 0;
  for (int r = 0; r < 300; ++r) {
    auto I = g.model(g.uniform(1, 3));
    auto k = g.context({"x", "y", "z"}, g.uniform(1, 3));
    if (!check_context(k, I)) continue;
    auto i2 = inst(Schema::A5_2, k, {{"phi", g.sentence(k, 2)}, {"psi", g.sentence(k, 2)}});
    auto i16 = inst(Schema::A5_16, k, {{"i", static_cast<long>(g.uniform(1, static_cast<int>(k.size())))}});
    for (const auto& in : {i2, i16}) {
      auto e = expand_instance(in, I);
      if (!e.verdict) continue;
      ++n;
      for (const auto& f : e.forms) CHECK_MESSAGE(meaning(f.conclusion, I).is_true(), render(f.conclusion));
    }
  }
  CHECK(n >= 200);
}

TEST_CASE("rules preserve truth on random derivations") {
  Generator g(45);
  fuzz::SoundnessStats st;
  for (int r = 0; r < 300; ++r) fuzz::Deriver(g, st).run();
  for (const auto& f : st.failures) FAIL_CHECK(f);
  CHECK(st.derivations >= 200);
  CHECK(st.chained_premises >= 100);
  // Every schema got exercised at least once.
  for (Schema s : all_schemas())
    if (s != Schema::Semantic) CHECK_MESSAGE(st.accepted[s] > 0, schema_name(s));
}
