#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lowerset {

using Coord = uint32_t;

// A lattice point with explicit coordinates.  Points are stored sparsely:
// trailing zero coordinates may be omitted, so a point living in a large
// ambient dimension only keeps the prefix up to its last nonzero entry.
struct Point {
  std::vector<Coord> coords;

  Point() = default;
  explicit Point(std::vector<Coord> c) : coords(std::move(c)) {}

  size_t stored_dim() const { return coords.size(); }
  uint64_t coordinate_sum() const;
  Coord at(size_t axis) const { return axis < coords.size() ? coords[axis] : 0; }

  bool operator==(const Point& o) const { return coords == o.coords; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

// Componentwise order.  Requires equal stored dimensions.
bool dominates(const Point& q, const Point& r);          // q >= r everywhere
bool strictly_dominates(const Point& q, const Point& r); // q >= r and q != r

// Canonical order: ascending coordinate sum, ties broken lexicographically.
// Every prefix of a lower set listed in this order is itself a lower set.
bool canonical_less(const Point& a, const Point& b);

struct PointHash {
  size_t operator()(const Point& p) const;
};

// Downward-closed finite subset of Z_+^d.  The ambient dimension is explicit
// metadata and may vastly exceed the number of axes the points actually use;
// all stored points share a common width (the bounding-box dimension).
class LowerSet {
 public:
  LowerSet() : dim_(0), width_(0) {}
  explicit LowerSet(uint64_t dim) : dim_(dim), width_(0) {}

  // Validates closure, rejects duplicates and out-of-dimension coordinates.
  static LowerSet from_points(uint64_t dim, std::vector<Point> pts);
  // Trusted constructor for internally generated point lists (already closed,
  // duplicate-free; will be renormalized to canonical order and width).
  static LowerSet from_valid_points(uint64_t dim, std::vector<Point> pts);

  uint64_t dim() const { return dim_; }
  size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  uint32_t width() const { return width_; }
  const std::vector<Point>& points() const { return points_; }

  bool contains(const Point& p) const;

  // Byte encoding of (width, canonical point list); stable memo/microcache key.
  std::string canonical_key() const;

  bool operator==(const LowerSet& o) const {
    return dim_ == o.dim_ && points_ == o.points_;
  }

 private:
  uint64_t dim_;
  uint32_t width_;
  std::vector<Point> points_;  // canonical order, every point width_ wide
};

// Closure test on a raw point list (duplicates rejected).
bool is_lower_set(uint64_t dim, const std::vector<Point>& pts);

// Maximal available subset M(S): points of S not strictly dominated by
// another point of S.  Error on empty S.
std::vector<Point> maximal_available_subset(const LowerSet& S);

// Plain slices along a 1-based axis: S cap {q_axis = i} for i = 0.., each
// re-embedded as a (d-1)-dimensional lower set by dropping that coordinate.
// Sizes are nonincreasing and each slice contains its successor.
std::vector<LowerSet> slices(const LowerSet& S, uint32_t axis);

// Residual multi-slice decomposition.  For per-axis layer counts k_1..k_m,
// slice p (1-based axis), layer i in [0, k_p):
//   Q_i^p = (S cap {q_p = i}) \ union of all Q_j^t with t < p,
// i.e. earlier axes claim their layers first and later axes only keep what is
// left.  Cubes claimed by no slice are returned as the remainder (empty iff
// the layer counts cover S).
struct ResidualSlice {
  uint32_t axis;   // 1-based
  Coord layer;
  std::vector<Point> cubes;  // canonical order, ambient coordinates
};
struct MultiSliceDecomposition {
  std::vector<ResidualSlice> slices;   // axis-major, layer-minor order
  std::vector<Point> remainder;
  bool covered;  // remainder empty
};
MultiSliceDecomposition multi_slice_decomposition(const LowerSet& S,
                                                  const std::vector<uint64_t>& layer_counts);

// Height-array form: a d-dimensional lower set is a (d-1)-indexed array of
// column heights along the last axis, nonincreasing in every index.
struct PartitionArray {
  uint64_t dim = 0;  // number of indices (= lower-set dimension - 1)
  std::map<std::vector<Coord>, uint64_t> heights;  // 0-based index -> height >= 1

  bool operator==(const PartitionArray& o) const {
    return dim == o.dim && heights == o.heights;
  }
};

PartitionArray to_partition_array(const LowerSet& S);   // requires dim >= 1
LowerSet from_partition_array(const PartitionArray& A); // rejects non-monotone

// Enumerate the lower subsets Q' of S with |Q'| >= |S| - k, each exactly once.
// Implemented by peeling maximal points: every intermediate state is itself a
// lower set.  The visitor receives subsets in no particular order.
void enumerate_lower_subsets(const LowerSet& S, uint64_t k,
                             const std::function<void(const LowerSet&)>& visit);

// Text form: one point per line, coordinates space-separated, canonical order.
std::string to_text(const LowerSet& S);
LowerSet lower_set_from_text(uint64_t dim, const std::string& text);

}  // namespace lowerset
