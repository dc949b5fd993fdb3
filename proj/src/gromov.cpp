#include "mvmds/gromov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "mvmds/errors.hpp"
#include "mvmds/parallel.hpp"
#include "mvmds/srgw.hpp"

namespace mvmds {
namespace {

void check_square(const Matrix& d, const char* name) {
  if (d.rows() != d.cols()) {
    throw StructuralError(std::string(name) + " must be square");
  }
}

// Decodes map number `code` with targets[0] as the most significant digit,
// so increasing codes enumerate maps in lexicographic order.
void decode(std::uint64_t code, Index m, std::vector<Index>& targets) {
  for (std::size_t i = targets.size(); i-- > 0;) {
    targets[i] = static_cast<Index>(code % static_cast<std::uint64_t>(m));
    code /= static_cast<std::uint64_t>(m);
  }
}

template <typename Score>
MapSearchResult enumerate_maps(Index n, Index m, unsigned threads, Score score) {
  check_enumeration_guard(n, m);
  std::uint64_t total = 1;
  for (Index i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(m);

  const std::size_t blocks = std::max(1u, threads);
  std::vector<MapSearchResult> best(blocks);
  const std::uint64_t chunk = (total + blocks - 1) / blocks;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::uint64_t begin = b * chunk;
    const std::uint64_t end = std::min(total, begin + chunk);
    MapSearchResult local{kInfinity, FiniteMap{std::vector<Index>(n, 0)}};
    FiniteMap f{std::vector<Index>(n, 0)};
    for (std::uint64_t code = begin; code < end; ++code) {
      decode(code, m, f.targets);
      const double value = score(f);
      if (value < local.value) local = {value, f};
    }
    best[b] = std::move(local);
  });
  // Blocks are in code order, so the first strict minimum is lexicographically
  // smallest.
  MapSearchResult result = best.front();
  for (std::size_t b = 1; b < blocks; ++b) {
    if (best[b].value < result.value) result = best[b];
  }
  return result;
}

}  // namespace

double function_distortion(const FiniteMap& f, const Matrix& dx, const Matrix& dy) {
  check_square(dx, "dX");
  check_square(dy, "dY");
  const Index n = dx.rows();
  if (static_cast<Index>(f.targets.size()) != n) {
    throw StructuralError("map length does not match source size");
  }
  double worst = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      worst = std::max(worst, std::abs(dx(i, k) - dy(f.targets[i], f.targets[k])));
    }
  }
  return 0.5 * worst;
}

double relation_distortion(const Relation& r, const Matrix& dx, const Matrix& dy) {
  if (r.empty()) throw DomainError("relation is empty");
  double worst = 0.0;
  for (const auto& [x1, y1] : r) {
    for (const auto& [x2, y2] : r) {
      worst = std::max(worst, std::abs(dx(x1, x2) - dy(y1, y2)));
    }
  }
  return 0.5 * worst;
}

void check_enumeration_guard(Index n, Index m) {
  if (n < 1 || m < 1) throw StructuralError("spaces must be nonempty");
  const double bits = static_cast<double>(n) * std::log2(static_cast<double>(m));
  if (bits > kEnumerationBits) {
    throw CapacityError("enumerating " + std::to_string(m) + "^" +
                        std::to_string(n) + " maps exceeds the 2^30 guard");
  }
}

MapSearchResult srgh(const Matrix& dx, const Matrix& dy, unsigned threads) {
  check_square(dx, "dX");
  check_square(dy, "dY");
  return enumerate_maps(dx.rows(), dy.rows(), threads, [&](const FiniteMap& f) {
    return function_distortion(f, dx, dy);
  });
}

double mgh(const Matrix& dx, const Matrix& dy, unsigned threads) {
  check_enumeration_guard(dx.rows(), dy.rows());
  check_enumeration_guard(dy.rows(), dx.rows());
  return std::max(srgh(dx, dy, threads).value, srgh(dy, dx, threads).value);
}

MapSearchResult srgw_inf_bruteforce(const MetricMeasureSpace& x, const Matrix& dy,
                                    unsigned threads) {
  check_square(dy, "dY");
  const Vector& mu = x.weights();
  const Index m = dy.rows();
  return enumerate_maps(x.size(), m, threads, [&](const FiniteMap& f) {
    return distortion_inf(SemiCoupling::from_map(mu, f.targets, m), x.distances(), dy);
  });
}

double srgh_by_relations(const Matrix& dx, const Matrix& dy) {
  check_square(dx, "dX");
  check_square(dy, "dY");
  const Index n = dx.rows();
  const Index m = dy.rows();
  if (n * m > kMaxRelationCells) {
    throw CapacityError("relation enumeration limited to n*m <= 9");
  }
  const std::uint32_t cells = static_cast<std::uint32_t>(n * m);
  double best = kInfinity;
  Relation r;
  for (std::uint32_t mask = 1; mask < (1u << cells); ++mask) {
    r.clear();
    std::vector<bool> covered(n, false);
    for (std::uint32_t c = 0; c < cells; ++c) {
      if (mask & (1u << c)) {
        const Index i = static_cast<Index>(c) / m;
        r.emplace_back(i, static_cast<Index>(c) % m);
        covered[i] = true;
      }
    }
    if (std::all_of(covered.begin(), covered.end(), [](bool v) { return v; })) {
      best = std::min(best, relation_distortion(r, dx, dy));
    }
  }
  return best;
}

double asymmetric_hausdorff(const std::vector<Index>& a, const std::vector<Index>& b,
                            const Matrix& dz) {
  if (a.empty() || b.empty()) throw DomainError("Hausdorff sets must be nonempty");
  double worst = 0.0;
  for (Index p : a) {
    double nearest = kInfinity;
    for (Index q : b) nearest = std::min(nearest, dz(p, q));
    worst = std::max(worst, nearest);
  }
  return worst;
}

double hausdorff(const std::vector<Index>& a, const std::vector<Index>& b,
                 const Matrix& dz) {
  return std::max(asymmetric_hausdorff(a, b, dz), asymmetric_hausdorff(b, a, dz));
}

Matrix glued_metric(const Matrix& dx, const Matrix& dy, const Relation& r, double eps) {
  if (r.empty()) throw DomainError("relation is empty");
  const Index n = dx.rows();
  const Index m = dy.rows();
  Matrix dz = Matrix::Zero(n + m, n + m);
  dz.topLeftCorner(n, n) = dx;
  dz.bottomRightCorner(m, m) = dy;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < m; ++y) {
      double d = kInfinity;
      for (const auto& [rx, ry] : r) d = std::min(d, dx(x, rx) + dy(ry, y) + eps);
      dz(x, n + y) = d;
      dz(n + y, x) = d;
    }
  }
  return dz;
}

}  // namespace mvmds
