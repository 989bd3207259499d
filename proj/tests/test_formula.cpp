#include <doctest.h>

#include "fixtures.hpp"
#include "pjt/errors.hpp"
#include "pjt/formula.hpp"

using namespace pjt;

namespace {

int error_line(std::string_view text) {
  try {
    static_cast<void>(parse_cnf(text));
  } catch (const ParseError &e) {
    return e.line();
  }
  return -1;
}

} // namespace

TEST_CASE("parse_cnf reads the one-model example") {
  const auto f = testing::one_model_formula();
  CHECK(f.var_count == 5);
  CHECK(f.clause_count() == 6);
  REQUIRE(f.clause(1).literals.size() == 2);
  CHECK(f.clause(1).literals[0] == Literal{1, true});
  CHECK(f.clause(1).literals[1] == Literal{3, true});
  CHECK(f.clause(2).literals[0] == Literal{1, false});
  CHECK(f.clause(6).id == 6);
}

TEST_CASE("parse_cnf accepts an empty clause set") {
  const auto f = parse_cnf("p cnf 1 0\n");
  CHECK(f.var_count == 1);
  CHECK(f.clause_count() == 0);
  CHECK(f.weights[1] == LiteralWeight{1.0, 1.0});
}

TEST_CASE("parse_cnf decodes signed literals") {
  const auto f = parse_cnf("p cnf 2 1\n1 -2 0");
  REQUIRE(f.clause_count() == 1);
  CHECK(f.clause(1).literals == std::vector<Literal>{{1, true}, {2, false}});
}

TEST_CASE("clauses may span lines and repeat literals") {
  const auto f = parse_cnf("p cnf 3 2\n1 2\n-3 0 2\n2 0\n");
  REQUIRE(f.clause_count() == 2);
  CHECK(f.clause(1).literals.size() == 3);
  CHECK(f.clause(2).literals == std::vector<Literal>{{2, true}});
}

TEST_CASE("tautologies are kept as written") {
  const auto f = parse_cnf("p cnf 2 1\n2 -2 0\n");
  CHECK(f.clause(1).tautological());
  CHECK(clause_vars(f.clause(1)) == std::vector<int>{2});
}

TEST_CASE("parse errors name the offending line") {
  CHECK(error_line("1 2 0\n") == 1);
  CHECK_THROWS_AS(static_cast<void>(parse_cnf("c nothing\n")), ParseError);
  CHECK(error_line("p cnf 2 1\np cnf 2 1\n1 0\n") == 2);
  CHECK(error_line("p cnf 2 1\n1 3 0\n") == 2);
  CHECK(error_line("p cnf 2 1\n1 x 0\n") == 2);
  CHECK(error_line("p cnf 2 2\n1 0\n") == 1);
  CHECK(error_line("p cnf 2 1\n1 0\n2 0\n") != -1);
  CHECK(error_line("p cnf 2 1\n1 2\n") != -1);
  CHECK(error_line("p cnf 2 1\nw 3 0.5\n1 0\n") == 2);
  CHECK(error_line("p cnf 2 1\nw 1 abc\n1 0\n") == 2);
}

TEST_CASE("parse_weights reads signed literal weights") {
  const auto w = parse_weights("w 1 0.5\nw -1 1.5", 1);
  CHECK(w[1].pos == 0.5);
  CHECK(w[1].neg == 1.5);

  const auto defaults = parse_weights("p cnf 3 0\n", 3);
  for (int x = 1; x <= 3; ++x)
    CHECK(defaults.is_default(x));

  const auto trailing = parse_weights("w 2 0.3 0", 2);
  CHECK(trailing[2].pos == 0.3);
  CHECK(trailing[2].neg == 1.0);

  const auto later = parse_weights("w 1 0.25\nw 1 0.75\n", 1);
  CHECK(later[1].pos == 0.75);
}

TEST_CASE("weight lines merge into the formula") {
  const auto f = parse_cnf("p cnf 2 1\nw 2 0.5 0\nw -2 1.5 0\n1 2 0\n");
  CHECK(f.weights[2] == LiteralWeight{1.5, 0.5});
  CHECK(f.weights.is_default(1));
}

TEST_CASE("gaifman_graph") {
  SUBCASE("one-model example") {
    const auto g = gaifman_graph(testing::one_model_formula());
    CHECK(g.vertex_count() == 5);
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 3}, {3, 4}});
    CHECK(g.degree(2) == 0);
    CHECK(g.degree(5) == 0);
  }
  SUBCASE("no clauses") {
    const auto g = gaifman_graph(parse_cnf("p cnf 4 0\n"));
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("one clause is a clique") {
    const auto g = gaifman_graph(parse_cnf("p cnf 3 1\n1 2 3 0\n"));
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}});
  }
}

TEST_CASE("clause_vars") {
  CHECK(clause_vars(parse_cnf("p cnf 4 1\n1 -3 4 0\n").clause(1)) == std::vector<int>{1, 3, 4});
  CHECK(clause_vars(parse_cnf("p cnf 1 1\n0\n").clause(1)).empty());
}

TEST_CASE("used and free variables") {
  const auto f = parse_cnf("p cnf 5 2\n1 3 0\n-3 0\n");
  CHECK(f.used_vars() == std::vector<int>{1, 3});
  CHECK(f.free_vars() == std::vector<int>{2, 4, 5});
}

TEST_CASE("write_cnf round trips random formulas") {
  for (const auto &f : testing::random_corpus(200, 11)) {
    const auto again = parse_cnf(write_cnf(f));
    CHECK(again == f);
  }
}

TEST_CASE("Gaifman graph has every clause as a clique and one vertex per variable") {
  for (const auto &f : testing::random_corpus(200, 12)) {
    const auto g = gaifman_graph(f);
    CHECK(g.vertex_count() == f.var_count);
    for (const auto &c : f.clauses) {
      const auto vars = clause_vars(c);
      for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
          CHECK(g.has_edge(vars[i], vars[j]));
    }
  }
}
