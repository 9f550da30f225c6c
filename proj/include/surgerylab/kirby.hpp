#pragma once

#include "surgerylab/integer.hpp"
#include "surgerylab/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace surgerylab {

/// Linking matrix of a framed link: framings on the diagonal, pairwise
/// linking numbers off it. The 0x0 matrix is the empty link.
class FramedLinkMatrix : public SymmetricMatrix {
 public:
  using SymmetricMatrix::SymmetricMatrix;
  FramedLinkMatrix() = default;
  explicit FramedLinkMatrix(const SymmetricMatrix& s) : SymmetricMatrix(s) {}
};

/// Removes a (+1)- or (-1)-framed component k (0-based):
/// l'_ij = l_ij - e * l_ik * l_jk with e = l_kk.
inline FramedLinkMatrix blow_down(const FramedLinkMatrix& m, std::size_t k) {
  const std::size_t n = m.dim();
  if (k >= n) throw DomainError("blow_down: index out of range");
  const Integer& eps = m(k, k);
  if (eps != 1 && eps != -1) {
    throw DomainError("blow_down: component " + std::to_string(k + 1) + " has framing " +
                      eps.str() + ", not +-1");
  }
  FramedLinkMatrix out(n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == k) continue;
    for (std::size_t j = i, oj = oi; j < n; ++j) {
      if (j == k) continue;
      out.set(oi, oj, m(i, j) - eps * m(i, k) * m(j, k));
      ++oj;
    }
    ++oi;
  }
  return out;
}

/// Appends a component of framing sign (+1 or -1) linking component i
/// links[i] times, twisting the rest so that blowing the new component back
/// down recovers m.
inline FramedLinkMatrix blow_up(const FramedLinkMatrix& m, int sign, std::span<const Integer> links) {
  if (sign != 1 && sign != -1) throw DomainError("blow_up: sign must be +1 or -1");
  const std::size_t n = m.dim();
  if (links.size() != n) throw DomainError("blow_up: need one linking number per component");
  FramedLinkMatrix out(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, m(i, j) + sign * links[i] * links[j]);
    out.set(i, n, links[i]);
  }
  out.set(n, n, sign);
  return out;
}

/// Appends a new component with the given framing and linking numbers,
/// leaving the existing components untouched.
inline FramedLinkMatrix add_component(const FramedLinkMatrix& m, const Integer& framing,
                                      std::span<const Integer> links) {
  const std::size_t n = m.dim();
  if (links.size() != n) throw DomainError("add_component: need one linking number per component");
  FramedLinkMatrix out(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out.set(i, j, m(i, j));
    out.set(i, n, links[i]);
  }
  out.set(n, n, framing);
  return out;
}

/// Linear chain: diagonal = weights, unit linking between neighbours.
inline FramedLinkMatrix chain_matrix(std::span<const Integer> weights) {
  if (weights.empty()) throw DomainError("chain_matrix: empty weight sequence");
  FramedLinkMatrix out(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.set(i, i, weights[i]);
    if (i + 1 < weights.size()) out.set(i, i + 1, 1);
  }
  return out;
}

inline FramedLinkMatrix chain_matrix(std::initializer_list<Integer> weights) {
  return chain_matrix(std::span<const Integer>(weights.begin(), weights.size()));
}

struct BlowDownOptions {
  bool allow_positive = true;
  bool allow_negative = true;
  /// Components that may be blown down; empty means all of them.
  std::vector<bool> allowed;
  /// Longest blow-down sequence explored; 0 means the matrix dimension.
  std::size_t max_depth = 0;
  /// Upper bound on search nodes before giving up without a verdict.
  std::size_t node_limit = 200000;
};

struct Reduction {
  bool success = false;
  /// Indices (0-based) into the matrix current at each step, so the
  /// sequence replays with repeated blow_down calls.
  std::vector<std::size_t> steps;
  /// On success the final matrix; on failure the first dead end reached.
  FramedLinkMatrix residue;
  /// True when every branch was explored (failure is then certain).
  bool exhausted = false;
  std::size_t nodes = 0;
};

/// Depth-first search for a blow-down sequence reaching a matrix accepted by
/// `target`. Candidates are the +-1 diagonal entries ordered by (degree,
/// index); already-failed matrices are memoised.
inline Reduction reduce_by_blowdowns(const FramedLinkMatrix& start,
                                     const std::function<bool(const FramedLinkMatrix&)>& target,
                                     BlowDownOptions options = {}) {
  Reduction result;
  const std::size_t depth_cap = options.max_depth ? options.max_depth : start.dim();
  std::vector<bool> allowed = options.allowed;
  if (allowed.empty()) allowed.assign(start.dim(), true);
  if (allowed.size() != start.dim()) throw DomainError("reduce: allowed mask has wrong size");

  std::unordered_set<std::string> dead;
  bool budget_hit = false;
  bool residue_set = false;
  std::vector<std::size_t> path;

  auto key = [](const FramedLinkMatrix& m, const std::vector<bool>& mask) {
    std::string k = m.str();
    for (bool b : mask) k += b ? '1' : '0';
    return k;
  };

  std::function<bool(const FramedLinkMatrix&, const std::vector<bool>&)> dfs =
      [&](const FramedLinkMatrix& m, const std::vector<bool>& mask) -> bool {
    if (target(m)) {
      result.residue = m;
      return true;
    }
    if (++result.nodes > options.node_limit) {
      budget_hit = true;
      return false;
    }
    std::vector<std::size_t> candidates;
    if (path.size() < depth_cap) {
      for (std::size_t i = 0; i < m.dim(); ++i) {
        if (!mask[i]) continue;
        if ((m(i, i) == 1 && options.allow_positive) || (m(i, i) == -1 && options.allow_negative))
          candidates.push_back(i);
      }
    }
    if (candidates.empty()) {
      if (!residue_set) {
        result.residue = m;
        residue_set = true;
      }
      return false;
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return m.degree(a) < m.degree(b);
    });
    const std::string here = key(m, mask);
    if (dead.count(here)) return false;
    for (std::size_t k : candidates) {
      FramedLinkMatrix next = blow_down(m, k);
      std::vector<bool> next_mask = mask;
      next_mask.erase(next_mask.begin() + static_cast<std::ptrdiff_t>(k));
      path.push_back(k);
      if (dfs(next, next_mask)) return true;
      path.pop_back();
      if (budget_hit) return false;
    }
    dead.insert(here);
    return false;
  };

  result.success = dfs(start, allowed);
  if (result.success) {
    result.steps = path;
  } else {
    result.exhausted = !budget_hit;
  }
  return result;
}

/// Searches for blow-downs of +-1 components reducing m to the 1x1 matrix [0].
inline Reduction reduce_to_zero(const FramedLinkMatrix& m, BlowDownOptions options = {}) {
  return reduce_by_blowdowns(
      m, [](const FramedLinkMatrix& x) { return x.dim() == 1 && x(0, 0) == 0; },
      std::move(options));
}

/// Applies a recorded sequence of blow-downs.
inline FramedLinkMatrix replay_blowdowns(FramedLinkMatrix m, std::span<const std::size_t> steps) {
  for (std::size_t k : steps) m = blow_down(m, k);
  return m;
}

}  // namespace surgerylab
