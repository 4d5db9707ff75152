#include "lowerset/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace lowerset {

uint64_t Point::coordinate_sum() const {
  uint64_t s = 0;
  for (Coord c : coords) s += c;
  return s;
}

bool dominates(const Point& q, const Point& r) {
  if (q.stored_dim() != r.stored_dim())
    throw std::invalid_argument("dominates: dimension mismatch");
  for (size_t i = 0; i < q.coords.size(); ++i)
    if (q.coords[i] < r.coords[i]) return false;
  return true;
}

bool strictly_dominates(const Point& q, const Point& r) {
  return dominates(q, r) && q != r;
}

bool canonical_less(const Point& a, const Point& b) {
  uint64_t sa = a.coordinate_sum(), sb = b.coordinate_sum();
  if (sa != sb) return sa < sb;
  size_t n = std::max(a.coords.size(), b.coords.size());
  for (size_t i = 0; i < n; ++i) {
    Coord ca = a.at(i), cb = b.at(i);
    if (ca != cb) return ca < cb;
  }
  return false;
}

size_t PointHash::operator()(const Point& p) const {
  // FNV-1a over the coordinate words.
  uint64_t h = 1469598103934665603ull;
  for (Coord c : p.coords) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

/* ------------------------------------------------------------------ */
/* LowerSet                                                            */
/* ------------------------------------------------------------------ */

namespace {

void trim_trailing_zeros(std::vector<Coord>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Common width + canonical sort; returns width.
uint32_t normalize_points(std::vector<Point>& pts) {
  uint32_t width = 0;
  for (auto& p : pts) {
    trim_trailing_zeros(p.coords);
    width = std::max<uint32_t>(width, static_cast<uint32_t>(p.coords.size()));
  }
  for (auto& p : pts) p.coords.resize(width, 0);
  std::sort(pts.begin(), pts.end(), canonical_less);
  return width;
}

}  // namespace

LowerSet LowerSet::from_valid_points(uint64_t dim, std::vector<Point> pts) {
  LowerSet s(dim);
  s.width_ = normalize_points(pts);
  s.points_ = std::move(pts);
  return s;
}

LowerSet LowerSet::from_points(uint64_t dim, std::vector<Point> pts) {
  uint32_t width = normalize_points(pts);
  if (width > dim)
    throw std::invalid_argument("from_points: coordinate beyond ambient dimension");
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i] == pts[i - 1])
      throw std::invalid_argument("from_points: duplicate point");
  std::unordered_set<Point, PointHash> members(pts.begin(), pts.end());
  for (const auto& p : pts) {
    for (uint32_t a = 0; a < width; ++a) {
      if (p.coords[a] == 0) continue;
      Point pred = p;
      --pred.coords[a];
      if (!members.count(pred))
        throw std::invalid_argument("from_points: not downward closed");
    }
  }
  LowerSet s(dim);
  s.width_ = width;
  s.points_ = std::move(pts);
  return s;
}

bool LowerSet::contains(const Point& p) const {
  std::vector<Coord> c = p.coords;
  trim_trailing_zeros(c);
  if (c.size() > width_) return false;
  c.resize(width_, 0);
  Point probe(std::move(c));
  auto it = std::lower_bound(points_.begin(), points_.end(), probe, canonical_less);
  return it != points_.end() && *it == probe;
}

std::string LowerSet::canonical_key() const {
  // Unsigned LEB128 of width, count, then every coordinate in canonical order.
  std::string out;
  auto put = [&out](uint64_t v) {
    do {
      uint8_t b = v & 0x7f;
      v >>= 7;
      if (v) b |= 0x80;
      out.push_back(static_cast<char>(b));
    } while (v);
  };
  put(width_);
  put(points_.size());
  for (const auto& p : points_)
    for (Coord c : p.coords) put(c);
  return out;
}

bool is_lower_set(uint64_t dim, const std::vector<Point>& pts) {
  try {
    LowerSet::from_points(dim, pts);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

/* ------------------------------------------------------------------ */
/* Structural operations                                               */
/* ------------------------------------------------------------------ */

std::vector<Point> maximal_available_subset(const LowerSet& S) {
  if (S.empty())
    throw std::invalid_argument("maximal_available_subset: empty set");
  // In a lower set, p is dominated by some other member iff p + e_a is a
  // member for some axis a (axes beyond the width cannot contribute).
  std::unordered_set<Point, PointHash> members(S.points().begin(), S.points().end());
  std::vector<Point> out;
  for (const auto& p : S.points()) {
    bool maximal = true;
    Point succ = p;
    for (uint32_t a = 0; a < S.width() && maximal; ++a) {
      ++succ.coords[a];
      if (members.count(succ)) maximal = false;
      --succ.coords[a];
    }
    if (maximal) out.push_back(p);
  }
  return out;
}

std::vector<LowerSet> slices(const LowerSet& S, uint32_t axis) {
  if (axis < 1 || axis > S.dim())
    throw std::invalid_argument("slices: axis out of range");
  if (S.empty()) return {};
  size_t a = axis - 1;
  Coord max_layer = 0;
  for (const auto& p : S.points()) max_layer = std::max(max_layer, p.at(a));
  std::vector<std::vector<Point>> buckets(max_layer + 1);
  for (const auto& p : S.points()) {
    std::vector<Coord> c = p.coords;
    if (a < c.size()) c.erase(c.begin() + static_cast<ptrdiff_t>(a));
    buckets[p.at(a)].emplace_back(std::move(c));
  }
  std::vector<LowerSet> out;
  out.reserve(buckets.size());
  for (auto& b : buckets)
    out.push_back(LowerSet::from_valid_points(S.dim() - 1, std::move(b)));
  return out;
}

MultiSliceDecomposition multi_slice_decomposition(const LowerSet& S,
                                                  const std::vector<uint64_t>& layer_counts) {
  if (layer_counts.size() > S.dim())
    throw std::invalid_argument("multi_slice_decomposition: more axes than dimensions");
  MultiSliceDecomposition out;
  std::unordered_set<Point, PointHash> claimed;
  for (uint32_t p = 1; p <= layer_counts.size(); ++p) {
    for (uint64_t i = 0; i < layer_counts[p - 1]; ++i) {
      ResidualSlice rs;
      rs.axis = p;
      rs.layer = static_cast<Coord>(i);
      for (const auto& q : S.points()) {
        if (q.at(p - 1) != i || claimed.count(q)) continue;
        rs.cubes.push_back(q);
      }
      for (const auto& q : rs.cubes) claimed.insert(q);
      out.slices.push_back(std::move(rs));
    }
  }
  for (const auto& q : S.points())
    if (!claimed.count(q)) out.remainder.push_back(q);
  out.covered = out.remainder.empty();
  return out;
}

PartitionArray to_partition_array(const LowerSet& S) {
  if (S.dim() < 1)
    throw std::invalid_argument("to_partition_array: dimension must be >= 1");
  PartitionArray A;
  A.dim = S.dim() - 1;
  for (const auto& p : S.points()) {
    std::vector<Coord> base(p.coords.begin(),
                            p.coords.begin() + std::min<size_t>(p.coords.size(), A.dim));
    trim_trailing_zeros(base);
    ++A.heights[base];
  }
  return A;
}

LowerSet from_partition_array(const PartitionArray& A) {
  std::map<std::vector<Coord>, uint64_t> H;  // trimmed keys
  uint64_t total = 0;
  for (const auto& [key0, h] : A.heights) {
    std::vector<Coord> key = key0;
    trim_trailing_zeros(key);
    if (key.size() > A.dim)
      throw std::invalid_argument("from_partition_array: index beyond array dimension");
    if (h == 0) throw std::invalid_argument("from_partition_array: zero height");
    if (!H.emplace(std::move(key), h).second)
      throw std::invalid_argument("from_partition_array: duplicate index");
    total += h;
  }
  bool tall = false;
  for (const auto& [key, h] : H) {
    if (h > 1) tall = true;
    // Immediate-predecessor monotonicity; chains give the general case.
    for (size_t a = 0; a < key.size(); ++a) {
      if (key[a] == 0) continue;
      std::vector<Coord> pred = key;
      --pred[a];
      trim_trailing_zeros(pred);
      auto it = H.find(pred);
      uint64_t hp = it == H.end() ? 0 : it->second;
      if (hp < h)
        throw std::invalid_argument("from_partition_array: heights not nonincreasing");
    }
  }
  if (tall && A.dim + 1 > 1000000)
    throw std::invalid_argument("from_partition_array: dimension too large to materialize");
  std::vector<Point> pts;
  pts.reserve(total);
  for (const auto& [key, h] : H) {
    for (uint64_t z = 0; z < h; ++z) {
      std::vector<Coord> c = key;
      if (z > 0) {
        c.resize(A.dim, 0);
        c.push_back(static_cast<Coord>(z));
      }
      pts.emplace_back(std::move(c));
    }
  }
  return LowerSet::from_points(A.dim + 1, std::move(pts));
}

/* ------------------------------------------------------------------ */
/* Lower-subset enumeration (peel maximal points)                      */
/* ------------------------------------------------------------------ */

namespace {

struct SubsetWalker {
  const LowerSet& S;
  uint64_t k;
  const std::function<void(const LowerSet&)>& visit;
  std::vector<std::vector<int>> succ;  // indices of p + e_a within S
  std::vector<char> removed;

  void emit() {
    std::vector<Point> kept;
    kept.reserve(S.size());
    for (size_t i = 0; i < S.size(); ++i)
      if (!removed[i]) kept.push_back(S.points()[i]);
    visit(LowerSet::from_valid_points(S.dim(), std::move(kept)));
  }

  // Decide points in descending canonical order; a point may be removed only
  // once everything that dominates it inside S is already removed, so every
  // intermediate state stays downward closed.
  void walk(ptrdiff_t idx, uint64_t removed_count) {
    if (idx < 0) {
      emit();
      return;
    }
    walk(idx - 1, removed_count);  // keep
    if (removed_count < k) {
      bool can_remove = true;
      for (int s : succ[static_cast<size_t>(idx)])
        if (!removed[static_cast<size_t>(s)]) {
          can_remove = false;
          break;
        }
      if (can_remove) {
        removed[static_cast<size_t>(idx)] = 1;
        walk(idx - 1, removed_count + 1);
        removed[static_cast<size_t>(idx)] = 0;
      }
    }
  }
};

}  // namespace

void enumerate_lower_subsets(const LowerSet& S, uint64_t k,
                             const std::function<void(const LowerSet&)>& visit) {
  SubsetWalker w{S, k, visit, {}, {}};
  w.succ.resize(S.size());
  w.removed.assign(S.size(), 0);
  std::map<std::string, int> index;  // canonical point bytes -> index
  auto key_of = [](const Point& p) {
    return std::string(reinterpret_cast<const char*>(p.coords.data()),
                       p.coords.size() * sizeof(Coord));
  };
  for (size_t i = 0; i < S.size(); ++i) index[key_of(S.points()[i])] = static_cast<int>(i);
  for (size_t i = 0; i < S.size(); ++i) {
    Point succ = S.points()[i];
    for (uint32_t a = 0; a < S.width(); ++a) {
      ++succ.coords[a];
      auto it = index.find(key_of(succ));
      if (it != index.end()) w.succ[i].push_back(it->second);
      --succ.coords[a];
    }
  }
  w.walk(static_cast<ptrdiff_t>(S.size()) - 1, 0);
}

/* ------------------------------------------------------------------ */
/* Text form                                                           */
/* ------------------------------------------------------------------ */

std::string to_text(const LowerSet& S) {
  uint32_t w = std::max<uint32_t>(S.width(), S.dim() >= 1 ? 1 : 0);
  std::ostringstream os;
  for (const auto& p : S.points()) {
    for (uint32_t a = 0; a < w; ++a) {
      if (a) os << ' ';
      os << p.at(a);
    }
    os << '\n';
  }
  return os.str();
}

LowerSet lower_set_from_text(uint64_t dim, const std::string& text) {
  std::vector<Point> pts;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<Coord> c;
    uint64_t v;
    while (ls >> v) {
      if (v > std::numeric_limits<Coord>::max())
        throw std::invalid_argument("lower_set_from_text: coordinate too large");
      c.push_back(static_cast<Coord>(v));
    }
    if (!ls.eof())
      throw std::invalid_argument("lower_set_from_text: malformed line");
    pts.emplace_back(std::move(c));
  }
  return LowerSet::from_points(dim, std::move(pts));
}

}  // namespace lowerset
