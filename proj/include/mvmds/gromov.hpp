#pragma once

#include <utility>
#include <vector>

#include "mvmds/mmspace.hpp"
#include "mvmds/types.hpp"

namespace mvmds {

// f: X -> Y as target indices into an m-point space.
struct FiniteMap {
  std::vector<Index> targets;

  bool operator==(const FiniteMap&) const = default;
};

using Relation = std::vector<std::pair<Index, Index>>;

// 1/2 max_{i,k} |dX(i,k) - dY(f(i),f(k))|
double function_distortion(const FiniteMap& f, const Matrix& dx, const Matrix& dy);

// 1/2 max over pairs of related pairs. Throws DomainError if `r` is empty.
double relation_distortion(const Relation& r, const Matrix& dx, const Matrix& dy);

// Enumeration guard: n log2(m) <= 30, i.e. at most 2^30 maps.
inline constexpr double kEnumerationBits = 30.0;

// Throws CapacityError when m^n maps exceed the guard.
void check_enumeration_guard(Index n, Index m);

struct MapSearchResult {
  double value = 0.0;
  FiniteMap minimizer;  // lexicographically smallest among minimizers
};

// Semi-relaxed Gromov-Hausdorff distance: min over all maps X -> Y of the
// function distortion. `threads` partitions the enumeration; the result does
// not depend on it.
MapSearchResult srgh(const Matrix& dx, const Matrix& dy, unsigned threads = 1);

// Modified Gromov-Hausdorff distance max(srgh(X,Y), srgh(Y,X)).
double mgh(const Matrix& dx, const Matrix& dy, unsigned threads = 1);

// srGW at p = infinity by enumerating Monge couplings and scoring each with
// distortion_inf. Justified by the existence of Monge optima; requires a fully
// supported source measure.
MapSearchResult srgw_inf_bruteforce(const MetricMeasureSpace& x, const Matrix& dy,
                                    unsigned threads = 1);

// Exhaustive srGH over all semi-correspondences (relations whose projection
// onto X is surjective). Used as an oracle; limited to n*m <= 9.
inline constexpr Index kMaxRelationCells = 9;
double srgh_by_relations(const Matrix& dx, const Matrix& dy);

// Directed Hausdorff distance sup_{a in A} inf_{b in B} dZ(a, b); equals the
// semi-relaxed Hausdorff distance. Throws DomainError on empty sets.
double asymmetric_hausdorff(const std::vector<Index>& a, const std::vector<Index>& b,
                            const Matrix& dz);

double hausdorff(const std::vector<Index>& a, const std::vector<Index>& b,
                 const Matrix& dz);

// Ambient metric on X disjoint-union Y built from a semi-correspondence R with
// dis(R) <= eps: d(x, y) = min_{(x',y') in R} dX(x,x') + dY(y',y) + eps.
// Points of X come first, then Y.
Matrix glued_metric(const Matrix& dx, const Matrix& dy, const Relation& r, double eps);

}  // namespace mvmds
