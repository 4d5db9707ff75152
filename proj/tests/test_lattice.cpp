#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lowerset/lattice.hpp"
#include "oracles.hpp"

using namespace lowerset;

namespace {

Point P(std::vector<Coord> c) { return Point{std::move(c)}; }

LowerSet make(uint64_t d, std::vector<std::vector<Coord>> cs) {
  std::vector<Point> pts;
  for (auto& c : cs) pts.push_back(P(std::move(c)));
  return LowerSet::from_points(d, std::move(pts));
}

// Staircase of 15 cubes: column heights (4,3,2,1), (3,1), (1) along the
// third axis, indexed by the first two.
LowerSet staircase15() {
  std::vector<Point> pts;
  const std::vector<std::vector<uint64_t>> rows = {{4, 3, 2, 1}, {3, 1}, {1}};
  for (Coord x = 0; x < rows.size(); ++x)
    for (Coord y = 0; y < rows[x].size(); ++y)
      for (Coord z = 0; z < rows[x][y]; ++z) pts.push_back(P({x, y, z}));
  return LowerSet::from_points(3, std::move(pts));
}

// 25 cubes whose residual decomposition with three layers per axis has
// slice sizes 8,6,5 (first axis), 3,1,1 (second), 1 (third), no remainder.
LowerSet block25() {
  std::vector<Point> pts;
  const std::vector<std::vector<std::vector<Coord>>> slabs = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {0, 1}, {1, 1}, {0, 2}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}, {1, 1}},
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {0, 1}}};
  for (Coord x = 0; x < slabs.size(); ++x)
    for (const auto& yz : slabs[x]) pts.push_back(P({x, yz[0], yz[1]}));
  for (auto rest : {P({3, 0, 0}), P({4, 0, 0}), P({5, 0, 0}), P({3, 1, 0}),
                    P({3, 2, 0}), P({3, 3, 0})})
    pts.push_back(rest);
  return LowerSet::from_points(3, std::move(pts));
}

}  // namespace

TEST_CASE("componentwise dominance") {
  CHECK(dominates(P({2, 1}), P({2, 1})));
  CHECK(dominates(P({2, 1}), P({1, 1})));
  CHECK_FALSE(dominates(P({2, 1}), P({1, 2})));
  CHECK(strictly_dominates(P({2, 1}), P({1, 1})));
  CHECK_FALSE(strictly_dominates(P({2, 1}), P({2, 1})));
  CHECK_THROWS_AS(dominates(P({1}), P({1, 2})), std::invalid_argument);
}

TEST_CASE("canonical order sorts by coordinate sum then lexicographically") {
  std::vector<Point> pts = {P({2, 0}), P({0, 0}), P({1, 1}), P({0, 1}), P({1, 0}), P({0, 2})};
  std::sort(pts.begin(), pts.end(), canonical_less);
  std::vector<Point> want = {P({0, 0}), P({0, 1}), P({1, 0}), P({0, 2}), P({1, 1}), P({2, 0})};
  CHECK(pts == want);
}

TEST_CASE("from_points validates closure, duplicates and ambient dimension") {
  CHECK_NOTHROW(make(2, {{0, 0}, {1, 0}, {0, 1}}));
  CHECK_THROWS_AS(make(2, {{1, 0}}), std::invalid_argument);          // missing origin
  CHECK_THROWS_AS(make(2, {{0, 0}, {1, 1}}), std::invalid_argument);  // gap below (1,1)
  CHECK_THROWS_AS(make(2, {{0, 0}, {0, 0}}), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(make(1, {{0, 0}, {0, 1}}), std::invalid_argument);  // second axis used
  CHECK_NOTHROW(make(1000000007ull, {{}, {1}}));  // huge ambient dim, one axis used
}

TEST_CASE("is_lower_set agrees with the oracle on every 3-point configuration") {
  // Every multiset of three distinct points in a 3x3 box, d = 2.
  std::vector<oracle::Vec> box;
  for (Coord x = 0; x < 3; ++x)
    for (Coord y = 0; y < 3; ++y) box.push_back({x, y});
  int lower = 0;
  for (size_t i = 0; i < box.size(); ++i)
    for (size_t j = i + 1; j < box.size(); ++j)
      for (size_t l = j + 1; l < box.size(); ++l) {
        std::set<oracle::Vec> s = {box[i], box[j], box[l]};
        std::vector<Point> pts;
        for (const auto& v : s) pts.push_back(P(oracle::Vec(v)));
        CHECK(is_lower_set(2, pts) == oracle::closed(s));
        lower += oracle::closed(s) ? 1 : 0;
      }
  CHECK(lower == 3);  // row, column and L: all three 2-dimensional lower sets of size 3
}

TEST_CASE("canonical prefixes of a lower set are lower sets") {
  for (uint64_t n = 1; n <= 6; ++n) {
    for (const auto& s : oracle::all_lower_sets(3, n)) {
      LowerSet L = oracle::to_lower_set(3, s);
      std::vector<Point> prefix;
      for (const Point& p : L.points()) {
        prefix.push_back(p);
        CHECK(is_lower_set(3, prefix));
      }
    }
  }
}

TEST_CASE("canonical_key is construction-order independent") {
  LowerSet a = make(3, {{0, 0}, {1, 0}, {0, 1}, {0, 0, 1}});
  LowerSet b = make(3, {{0, 0, 1}, {0, 1}, {1, 0}, {0, 0}});
  CHECK(a == b);
  CHECK(a.canonical_key() == b.canonical_key());
  CHECK(a.width() == 3);
  CHECK(a.contains(P({0, 0, 1})));
  CHECK_FALSE(a.contains(P({1, 1, 0})));
}

TEST_CASE("maximal available subset matches the all-pairs oracle") {
  for (uint64_t d = 2; d <= 3; ++d) {
    for (uint64_t n = 1; n <= 7; ++n) {
      for (const auto& s : oracle::all_lower_sets(d, n)) {
        LowerSet L = oracle::to_lower_set(d, s);
        auto got = maximal_available_subset(L);
        auto want = oracle::maximal_points(s);
        CHECK(got.size() == want.size());
        std::set<oracle::Vec> wset(want.begin(), want.end());
        for (const Point& p : got) {
          oracle::Vec v(d, 0);
          for (size_t a = 0; a < d; ++a) v[a] = p.at(a);
          CHECK(wset.count(v) == 1);
        }
      }
    }
  }
  CHECK_THROWS_AS(maximal_available_subset(LowerSet(2)), std::invalid_argument);
}

TEST_CASE("staircase of 15 cubes slices into layers of 10, 4 and 1") {
  LowerSet S = staircase15();
  REQUIRE(S.size() == 15);
  auto sl = slices(S, 1);
  REQUIRE(sl.size() == 3);
  CHECK(sl[0].size() == 10);
  CHECK(sl[1].size() == 4);
  CHECK(sl[2].size() == 1);
  for (const auto& s : sl) CHECK(s.dim() == 2);
  // Each slice contains the next one (heights are nonincreasing in x).
  for (size_t i = 0; i + 1 < sl.size(); ++i)
    for (const Point& p : sl[i + 1].points()) CHECK(sl[i].contains(p));
  // Along the third axis the layer sizes count columns of height > layer.
  auto sz = slices(S, 3);
  REQUIRE(sz.size() == 4);
  CHECK(sz[0].size() == 7);
  CHECK(sz[1].size() == 4);
  CHECK(sz[2].size() == 3);
  CHECK(sz[3].size() == 1);
  CHECK_THROWS_AS(slices(S, 0), std::invalid_argument);
  CHECK_THROWS_AS(slices(S, 4), std::invalid_argument);
}

TEST_CASE("residual decomposition of the 25-cube example") {
  LowerSet S = block25();
  REQUIRE(S.size() == 25);
  auto dec = multi_slice_decomposition(S, {3, 3, 3});
  CHECK(dec.covered);
  CHECK(dec.remainder.empty());
  REQUIRE(dec.slices.size() == 9);
  std::vector<uint64_t> sizes;
  for (const auto& sl : dec.slices) sizes.push_back(sl.cubes.size());
  CHECK(sizes == std::vector<uint64_t>{8, 6, 5, 3, 1, 1, 1, 0, 0});
  // Residual slices partition the set.
  std::set<std::vector<Coord>> seen;
  for (const auto& sl : dec.slices)
    for (const Point& p : sl.cubes) CHECK(seen.insert(p.coords).second);
  CHECK(seen.size() == 25);
  // Axis-major, layer-minor ordering.
  CHECK(dec.slices[0].axis == 1);
  CHECK(dec.slices[0].layer == 0);
  CHECK(dec.slices[3].axis == 2);
  CHECK(dec.slices[8].axis == 3);
  CHECK(dec.slices[8].layer == 2);
}

TEST_CASE("residual decomposition reports uncovered cubes") {
  LowerSet S = staircase15();
  auto dec = multi_slice_decomposition(S, {1});  // only the x = 0 slab claimed
  CHECK_FALSE(dec.covered);
  CHECK(dec.slices.size() == 1);
  CHECK(dec.slices[0].cubes.size() == 10);
  CHECK(dec.remainder.size() == 5);
  CHECK_THROWS_AS(multi_slice_decomposition(S, {1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("height-array form roundtrips the staircase") {
  LowerSet S = staircase15();
  PartitionArray A = to_partition_array(S);
  CHECK(A.dim == 2);
  CHECK(A.heights.size() == 7);
  uint64_t total = 0;
  for (const auto& [k, h] : A.heights) total += h;
  CHECK(total == 15);
  CHECK(from_partition_array(A) == S);
}

TEST_CASE("height arrays roundtrip every small lower set") {
  for (uint64_t d = 2; d <= 3; ++d)
    for (uint64_t n = 1; n <= 6; ++n)
      for (const auto& s : oracle::all_lower_sets(d, n)) {
        LowerSet L = oracle::to_lower_set(d, s);
        CHECK(from_partition_array(to_partition_array(L)) == L);
      }
}

TEST_CASE("height arrays reject non-monotone and malformed input") {
  PartitionArray A;
  A.dim = 1;
  A.heights[{0}] = 1;
  A.heights[{1}] = 2;  // taller than its predecessor
  CHECK_THROWS_AS(from_partition_array(A), std::invalid_argument);
  PartitionArray B;
  B.dim = 1;
  B.heights[{1}] = 1;  // no column at index 0
  CHECK_THROWS_AS(from_partition_array(B), std::invalid_argument);
  PartitionArray C;
  C.dim = 1;
  C.heights[{0}] = 0;  // zero height
  CHECK_THROWS_AS(from_partition_array(C), std::invalid_argument);
  PartitionArray D;
  D.dim = 0;
  D.heights[{}] = 3;  // a bare column: the unique 1-dimensional lower set of size 3
  LowerSet L = from_partition_array(D);
  CHECK(L.dim() == 1);
  CHECK(L.size() == 3);
}

TEST_CASE("text form roundtrips and rejects garbage") {
  LowerSet S = staircase15();
  std::string t = to_text(S);
  CHECK(lower_set_from_text(3, t) == S);
  CHECK(to_text(lower_set_from_text(3, t)) == t);

  LowerSet empty(2);
  CHECK(to_text(empty) == "");
  CHECK(lower_set_from_text(2, "") == empty);

  LowerSet origin = make(2, {{0, 0}});
  CHECK(to_text(origin) == "0\n");

  CHECK_THROWS_AS(lower_set_from_text(2, "0 x\n"), std::invalid_argument);
  CHECK_THROWS_AS(lower_set_from_text(2, "1\n"), std::invalid_argument);
  CHECK_THROWS_AS(lower_set_from_text(2, "0\n99999999999999999999\n"), std::invalid_argument);
}

TEST_CASE("lower subsets of the 2x2 square") {
  LowerSet sq = make(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  std::vector<uint64_t> sizes;
  enumerate_lower_subsets(sq, 2, [&](const LowerSet& Q) { sizes.push_back(Q.size()); });
  std::sort(sizes.rbegin(), sizes.rend());
  // Drop up to two cubes: the square, two L-shapes minus a corner, and the
  // two-cube columns; the 3-point L is unique up to which corner survives.
  CHECK(sizes == std::vector<uint64_t>{4, 3, 2, 2});
  // Oracle agreement on the same instance.
  oracle::SetRep s = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK(sizes == oracle::lower_subset_sizes(s, 2));
}

TEST_CASE("lower subsets match the bitmask oracle on every small instance") {
  for (uint64_t d = 2; d <= 3; ++d) {
    for (uint64_t n = 1; n <= 6; ++n) {
      for (const auto& s : oracle::all_lower_sets(d, n)) {
        LowerSet L = oracle::to_lower_set(d, s);
        for (uint64_t k = 0; k <= n; ++k) {
          std::vector<uint64_t> sizes;
          enumerate_lower_subsets(L, k, [&](const LowerSet& Q) { sizes.push_back(Q.size()); });
          std::sort(sizes.rbegin(), sizes.rend());
          CHECK(sizes == oracle::lower_subset_sizes(s, k));
        }
      }
    }
  }
}
