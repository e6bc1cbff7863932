#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "mippc/code.hpp"
#include "test_util.hpp"

using namespace mippc;

namespace {

Code code_from(std::vector<Word> words, int q) {
  int n = static_cast<int>(words.front().size());
  return make_code(n, q, std::move(words));
}

const Code kFourCycle = code_from({{0, 0}, {0, 1}, {1, 0}, {1, 1}}, 2);
const Code kDiagonal = code_from({{0, 0}, {1, 1}, {2, 2}}, 3);
// Two disjoint triples sharing one descendant code.
const Code kTriangle = code_from({{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}}, 3);

}  // namespace

TEST_CASE("make_code validates and canonicalizes") {
  auto c = make_code(2, 3, {{2, 1}, {0, 2}, {1, 0}});
  CHECK(c.words == std::vector<Word>{{0, 2}, {1, 0}, {2, 1}});
  CHECK_THROWS_AS(make_code(1, 2, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_code(2, 1, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_code(2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_code(2, 2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(make_code(2, 2, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_code(2, 2, {{0, 1, 0}}), std::invalid_argument);
}

TEST_CASE("desc examples") {
  auto c = code_from({{0, 0}, {1, 1}}, 2);
  CHECK(desc(c, {0, 1}) == make_descendant_set({{0, 1}, {0, 1}}));

  auto single = code_from({{0, 2}}, 3);
  CHECK(desc(single, {0}) == make_descendant_set({{0}, {2}}));

  auto c3 = code_from({{0, 0}, {0, 1}, {1, 0}}, 2);
  CHECK(desc(c3, {0, 1, 2}) == make_descendant_set({{0, 1}, {0, 1}}));

  CHECK_THROWS_AS(desc(c, {}), std::invalid_argument);
  CHECK_THROWS_AS(desc(c, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(desc(c, {5}), std::invalid_argument);
}

TEST_CASE("desc matches per-coordinate projections on random codes") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto c = testutil::random_code(seed, 2 + seed % 3);
    auto w = testutil::random_coalition(seed, c.size(), 4);
    auto d = desc(c, w);
    for (int i = 0; i < c.n; ++i) {
      std::set<Symbol> expect;
      for (int idx : w) expect.insert(c.words[idx][i]);
      CHECK(d.coord_sets[i] == std::vector<Symbol>(expect.begin(), expect.end()));
    }
  }
}

TEST_CASE("parent_sets examples") {
  auto c = code_from({{0, 0}, {1, 1}}, 2);
  auto ps = parent_sets(c, make_descendant_set({{0, 1}, {0, 1}}), 2);
  REQUIRE(ps == std::vector<std::vector<int>>{{0, 1}});

  auto ps1 = parent_sets(c, make_descendant_set({{0}, {0}}), 2);
  REQUIRE(ps1 == std::vector<std::vector<int>>{{0}});

  // words sorted: (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3; the two diagonal pairs.
  auto ps2 = parent_sets(kFourCycle, make_descendant_set({{0, 1}, {0, 1}}), 2);
  REQUIRE(ps2 == std::vector<std::vector<int>>{{0, 3}, {1, 2}});

  CHECK(parent_sets(c, make_descendant_set({{0}, {1}}), 2).empty());
}

TEST_CASE("separability brute force") {
  CHECK(is_separable(code_from({{0, 0}, {1, 1}}, 2), 2));
  CHECK_FALSE(is_separable(kFourCycle, 2));
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    CHECK(is_separable(testutil::random_code(seed), 1));
}

TEST_CASE("identifiable parent property brute force") {
  CHECK_FALSE(is_mippc(kFourCycle, 2));
  CHECK(is_mippc(kDiagonal, 3));
  CHECK_FALSE(is_mippc(kTriangle, 3));
}

TEST_CASE("2-MIPP coincides with 2-separable on random codes") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto c = testutil::random_code(seed, 2, 2, 4, 8);
    CHECK(is_mippc(c, 2) == is_separable(c, 2));
  }
}

TEST_CASE("separability implies the identifiable parent property") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto c = testutil::random_code(seed, 2, 2, 4, 8);
    for (int t : {2, 3})
      if (is_separable(c, t)) CHECK(is_mippc(c, t));
  }
}

TEST_CASE("worker count does not change verdicts") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto c = testutil::random_code(seed);
    BruteOptions par;
    par.jobs = 4;
    CHECK(is_mippc(c, 3) == is_mippc(c, 3, par));
    CHECK(is_separable(c, 3) == is_separable(c, 3, par));
  }
}

TEST_CASE("enumeration budget") {
  auto c = testutil::random_code(11, 2, 4, 4, 10);
  BruteOptions tiny;
  tiny.max_subsets = 3;
  CHECK_THROWS_AS(is_mippc(c, 3, tiny), BudgetExceeded);
  CHECK(subset_count(10, 3) == 10 + 45 + 120);
  CHECK(subset_count(160, 3) == 160 + 12720 + 669920);
}

TEST_CASE("trace identifies parents") {
  auto c = code_from({{0, 0}, {1, 1}}, 2);
  auto out = trace(c, make_descendant_set({{1}, {1}}), 2);
  CHECK_FALSE(out.overflow);
  CHECK(out.identified == std::vector<int>{1});

  auto both = trace(c, make_descendant_set({{0, 1}, {0, 1}}), 2);
  CHECK(both.identified == std::vector<int>{0, 1});

  CHECK_THROWS_AS(trace(kFourCycle, make_descendant_set({{0}, {0, 1}}), 1), InvalidEvidence);
}

TEST_CASE("trace on verified codes returns a nonempty subset of the coalition") {
  int replayed = 0;
  for (std::uint64_t seed = 0; seed < 400 && replayed < 120; ++seed) {
    auto c = testutil::random_code(seed, 2, 2, 5, 8);
    if (!is_mippc(c, 3)) continue;
    ++replayed;
    auto w = testutil::random_coalition(seed, c.size(), 3);
    auto out = trace(c, desc(c, w), 3);
    REQUIRE_FALSE(out.overflow);
    REQUIRE_FALSE(out.identified.empty());
    for (int id : out.identified)
      CHECK(std::binary_search(w.begin(), w.end(), id));
  }
  CHECK(replayed >= 100);
}

TEST_CASE("binary composition examples") {
  auto c = code_from({{0, 2}, {1, 1}}, 3);
  auto b = to_binary(c);
  CHECK(b.n == 6);
  CHECK(b.q == 2);
  // image of (0,2) is e1|e3
  bool found = false;
  for (const auto& w : b.words) found |= w == Word{1, 0, 0, 0, 0, 1};
  CHECK(found);

  auto c2 = code_from({{1, 0}, {0, 1}}, 2);
  auto b2 = to_binary(c2);
  bool found2 = false;
  for (const auto& w : b2.words) found2 |= w == Word{0, 1, 1, 0};
  CHECK(found2);
}

TEST_CASE("binary composition preserves weight, size and the property") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto c = testutil::random_code(seed, 2, 2, 4, 8);
    auto b = to_binary(c);
    CHECK(b.size() == c.size());
    for (const auto& w : b.words) {
      int weight = 0;
      for (Symbol s : w) weight += s;
      CHECK(weight == c.n);
    }
    if (c.size() <= 8 && is_mippc(c, 3)) CHECK(is_mippc(b, 3));
  }
}

TEST_CASE("a verified 3-MIPPC(2,M,4) composes to a 3-MIPP binary code") {
  auto c = code_from({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, 4);
  REQUIRE(is_mippc(c, 3));
  auto b = to_binary(c);
  CHECK(b.n == 8);
  CHECK(is_mippc(b, 3));
}

TEST_CASE("code text round trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto c = testutil::random_code(seed, 2 + seed % 2);
    std::stringstream ss;
    save_code(ss, c, {"provenance line"});
    auto back = load_code(ss);
    CHECK(back == c);
  }
}

TEST_CASE("code text parsing accepts comments and unsorted input") {
  std::stringstream ss("# header comment\n2 3 3\n2 1\n# interior comment\n0 2\n1 0\n");
  auto c = load_code(ss);
  CHECK(c.words == std::vector<Word>{{0, 2}, {1, 0}, {2, 1}});
}

TEST_CASE("code text parsing rejects malformed input") {
  auto reject = [](const std::string& text) {
    std::stringstream ss(text);
    CHECK_THROWS_AS(load_code(ss), FormatError);
  };
  reject("");
  reject("2 3\n0 0\n");
  reject("2 3 1\n0 3\n");
  reject("2 3 2\n0 0\n");
  reject("2 3 1\n0 0 0\n");
  reject("2 3 1\nx y\n");
  reject("2 3 2\n0 0\n0 0\n");
  reject("1 3 1\n0\n");
}
