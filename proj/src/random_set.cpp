#include "lowerset/random_set.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace lowerset {

namespace {

std::vector<Coord> key_of(const std::vector<Coord>& coords, uint32_t width) {
  std::vector<Coord> k(coords.begin(), coords.begin() + width);
  while (!k.empty() && k.back() == 0) k.pop_back();
  return k;
}

struct KeyHash {
  size_t operator()(const std::vector<Coord>& v) const {
    size_t h = 1469598103934665603ull;
    for (Coord c : v) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

LowerSet random_lower_set(uint64_t d, uint64_t n, uint64_t seed) {
  if (d == 0) throw std::invalid_argument("random_lower_set: d must be positive");
  if (n == 0) return LowerSet(d);

  std::mt19937_64 rng(seed);
  uint32_t width = 0;                        // axes in use (always the leading ones)
  std::vector<std::vector<Coord>> members;   // fixed-capacity rows, n columns
  std::unordered_set<std::vector<Coord>, KeyHash> present;
  uint32_t cap = static_cast<uint32_t>(std::min<uint64_t>(d, n));  // width never exceeds n - 1 for n > 1

  members.emplace_back(cap, 0);  // origin
  present.insert({});

  auto addable = [&](const std::vector<Coord>& q) {
    if (present.count(key_of(q, width))) return false;
    for (uint32_t a = 0; a < width; ++a) {
      if (q[a] == 0) continue;
      std::vector<Coord> pred(q);
      --pred[a];
      if (!present.count(key_of(pred, width))) return false;
    }
    return true;
  };

  std::vector<std::vector<Coord>> cands;
  for (uint64_t step = 1; step < n; ++step) {
    cands.clear();
    std::unordered_set<std::vector<Coord>, KeyHash> seen;
    for (const auto& p : members) {
      for (uint32_t a = 0; a < width; ++a) {
        std::vector<Coord> q(p);
        ++q[a];
        auto key = key_of(q, width);
        if (seen.count(key)) continue;
        if (addable(q)) {
          seen.insert(key);
          cands.push_back(std::move(q));
        }
      }
    }
    std::sort(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
      uint64_t sa = 0, sb = 0;
      for (uint32_t i = 0; i < width; ++i) {
        sa += a[i];
        sb += b[i];
      }
      if (sa != sb) return sa < sb;
      return a < b;
    });
    uint64_t fresh = width < cap ? d - width : 0;
    uint64_t total = cands.size() + fresh;
    uint64_t pick = rng() % total;
    if (pick < cands.size()) {
      present.insert(key_of(cands[pick], width));
      members.push_back(std::move(cands[pick]));
    } else {
      std::vector<Coord> q(cap, 0);
      q[width] = 1;
      ++width;
      present.insert(key_of(q, width));
      members.push_back(std::move(q));
    }
  }

  std::vector<Point> pts;
  pts.reserve(members.size());
  for (const auto& m : members) {
    std::vector<Coord> c(m.begin(), m.begin() + std::max<uint32_t>(width, 1));
    pts.push_back(Point{std::move(c)});
  }
  return LowerSet::from_valid_points(d, pts);
}

}  // namespace lowerset
