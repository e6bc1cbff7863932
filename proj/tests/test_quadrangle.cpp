#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "mippc/quadrangle.hpp"

using namespace mippc;

namespace {

GeneralizedQuadrangle grid3x3() {
  return make_quadrangle(9, 2, 1,
                         {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}});
}

void check_parameters(const GeneralizedQuadrangle& g, int s, int t) {
  CHECK(g.s == s);
  CHECK(g.t == t);
  CHECK(g.v == (1 + s) * (1 + s * t));
  CHECK(g.line_count() == (1 + t) * (1 + s * t));
  long long st = static_cast<long long>(s) + t;
  CHECK(static_cast<long long>(s) * t * (1 + s) * (1 + t) % st == 0);
}

}  // namespace

TEST_CASE("the grid is a GQ(2,1) and loses axiom (1) with a line removed") {
  auto g = grid3x3();
  CHECK(verify_gq(g).ok);
  auto broken = g;
  broken.lines.pop_back();
  auto check = verify_gq(broken);
  CHECK_FALSE(check.ok);
  CHECK(check.violation.find("axiom (1)") != std::string::npos);
}

TEST_CASE("verify_gq reports doubled pairs and bad line sizes") {
  auto two_lines = make_quadrangle(9, 2, 1,
                                   {{0, 1, 2}, {0, 1, 3}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {2, 5, 8}});
  auto check = verify_gq(two_lines);
  CHECK_FALSE(check.ok);
  CHECK(check.violation.find("two common lines") != std::string::npos);

  auto short_line = make_quadrangle(9, 2, 1,
                                    {{0, 1}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}});
  check = verify_gq(short_line);
  CHECK_FALSE(check.ok);
  CHECK(check.violation.find("axiom (2)") != std::string::npos);
}

TEST_CASE("symplectic quadrangles") {
  auto g2 = w3(2);
  check_parameters(g2, 2, 2);
  for (const auto& ln : g2.lines) CHECK(ln.size() == 3);

  auto g3 = w3(3);
  check_parameters(g3, 3, 3);
  for (const auto& ln : g3.lines) CHECK(ln.size() == 4);

  auto g4 = w3(4);
  check_parameters(g4, 4, 4);

  CHECK_THROWS_AS(w3(6), std::invalid_argument);
}

TEST_CASE("hyperoval quadrangles") {
  auto g2 = t2_star(2);
  check_parameters(g2, 1, 3);
  CHECK(g2.v == 8);
  CHECK(g2.line_count() == 16);
  for (const auto& ln : g2.lines) CHECK(ln.size() == 2);

  auto g4 = t2_star(4);
  check_parameters(g4, 3, 5);
  CHECK(g4.v == 64);
  CHECK(g4.line_count() == 96);
  for (const auto& ln : g4.lines) CHECK(ln.size() == 4);

  CHECK_THROWS_AS(t2_star(3), std::invalid_argument);
  CHECK_THROWS_AS(t2_star(6), std::invalid_argument);
}

TEST_CASE("Ahrens-Szekeres quadrangles") {
  auto g3 = as_q(3);
  check_parameters(g3, 2, 4);
  CHECK(g3.v == 27);
  CHECK(g3.line_count() == 45);
  for (const auto& ln : g3.lines) CHECK(ln.size() == 3);

  auto g5 = as_q(5);
  check_parameters(g5, 4, 6);
  CHECK(g5.v == 125);
  CHECK(g5.line_count() == 175);

  CHECK_THROWS_AS(as_q(4), std::invalid_argument);
  CHECK_THROWS_AS(as_q(6), std::invalid_argument);
}

TEST_CASE("duality swaps order and preserves incidence") {
  auto d = dualize(t2_star(2));
  check_parameters(d, 3, 1);
  CHECK(d.v == 16);
  CHECK(d.line_count() == 8);
  for (const auto& ln : d.lines) CHECK(ln.size() == 4);

  auto dw = dualize(w3(2));
  check_parameters(dw, 2, 2);
  CHECK(dw.v == 15);

  // the dual's lines are exactly the pencils of the original, as sets
  auto g = t2_star(2);
  std::vector<std::vector<int>> pencils(g.v);
  for (int li = 0; li < g.line_count(); ++li)
    for (int p : g.lines[li]) pencils[p].push_back(li);
  std::sort(pencils.begin(), pencils.end());
  CHECK(dualize(g).lines == pencils);

  auto dd = dualize(dualize(g));
  check_parameters(dd, g.s, g.t);
  CHECK(dd.v == g.v);
  CHECK(dd.line_count() == g.line_count());
  CHECK(verify_gq(dd).ok);

  CHECK_THROWS_AS(dualize(make_quadrangle(4, 1, 1, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("duals of all constructed families verify") {
  for (int k : {2, 3, 4}) CHECK(verify_gq(dualize(w3(k))).ok);
  for (int k : {2, 4}) CHECK(verify_gq(dualize(t2_star(k))).ok);
  for (int k : {3, 5}) CHECK(verify_gq(dualize(as_q(k))).ok);
}

TEST_CASE("quadrangles give delta-free packings") {
  auto p = gq_to_packing(w3(2));
  CHECK(p.v == 15);
  CHECK(p.block_count() == 15);
  CHECK(block_sizes(p) == std::vector<int>(15, 3));
  CHECK(is_delta_free(p));

  auto p2 = gq_to_packing(t2_star(2));
  CHECK(p2.v == 8);
  CHECK(p2.block_count() == 16);
  CHECK(block_sizes(p2) == std::vector<int>(16, 2));
  CHECK(is_delta_free(p2));

  for (int k : {2, 3, 4}) CHECK(is_delta_free(gq_to_packing(w3(k))));
  CHECK(is_delta_free(gq_to_packing(as_q(3))));
  CHECK(is_delta_free(gq_to_packing(dualize(t2_star(2)))));
}

TEST_CASE("quadrangle text round trip") {
  auto g = t2_star(2);
  std::stringstream ss;
  save_quadrangle(ss, g, {"hyperoval family, k=2"});
  auto back = load_quadrangle(ss);
  CHECK(back == g);
  CHECK(verify_gq(back).ok);

  std::stringstream bad("4 1 1\n0 1\n");
  CHECK_THROWS_AS(load_quadrangle(bad), FormatError);
  std::stringstream bad2("4 1 1 1\n0 9\n");
  CHECK_THROWS_AS(load_quadrangle(bad2), FormatError);
}
