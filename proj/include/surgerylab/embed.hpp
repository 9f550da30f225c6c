#pragma once

#include "surgerylab/forms.hpp"
#include "surgerylab/integer.hpp"
#include "surgerylab/matrix.hpp"
#include "surgerylab/rational.hpp"
#include "surgerylab/surgery.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace surgerylab {

/// Rows are the images of the lattice generators in the standard diagonal
/// lattice Z^k; rows * rows^T reproduces the source Gram matrix.
struct Embedding {
  IntMatrix rows;

  std::size_t target_rank() const { return rows.cols(); }
  GramMatrix gram() const { return GramMatrix(rows * rows.transpose()); }

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

struct EmbeddingReport {
  bool found = false;
  std::vector<Embedding> witnesses;
  /// The whole canonical search space was visited. Together with found =
  /// false this certifies that no embedding into Z^k_max exists.
  bool exhausted = false;
  std::size_t k_max = 0;
  std::uint64_t nodes = 0;
};

struct EmbeddingOptions {
  /// Ambient rank bound; defaults to the trace of the Gram matrix, which
  /// never excludes an embedding (a vector of norm w has at most w nonzero
  /// coordinates).
  std::optional<std::size_t> k_max;
  /// Give up (exhausted = false) after this many search nodes; 0 = no limit.
  std::uint64_t node_limit = 0;
};

namespace detail {

using SmallVector = std::vector<int>;

/// Signed column permutations act on an N x k embedding; representative:
/// drop zero columns, make the first nonzero entry of each column positive,
/// sort columns in decreasing lexicographic order (read top to bottom).
inline std::vector<SmallVector> canonical_columns(const std::vector<SmallVector>& rows) {
  if (rows.empty()) return {};
  const std::size_t n = rows.size(), k = rows.front().size();
  std::vector<SmallVector> cols;
  for (std::size_t c = 0; c < k; ++c) {
    SmallVector col(n);
    int first = 0;
    for (std::size_t i = 0; i < n; ++i) {
      col[i] = rows[i][c];
      if (first == 0) first = col[i];
    }
    if (first == 0) continue;
    if (first < 0)
      for (auto& x : col) x = -x;
    cols.push_back(std::move(col));
  }
  std::sort(cols.begin(), cols.end(), std::greater<>());
  return cols;
}

inline Embedding embedding_from_columns(const std::vector<SmallVector>& cols, std::size_t n) {
  Embedding e{IntMatrix(n, cols.size())};
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < n; ++i) e.rows(i, c) = cols[c][i];
  return e;
}

/// Breadth-first order over the graph of nonzero off-diagonal entries,
/// starting at vertex 0 and restarting at the least unvisited vertex.
inline std::vector<std::size_t> bfs_order(const std::vector<std::vector<long long>>& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::size_t head = order.size();
    order.push_back(root);
    while (head < order.size()) {
      const std::size_t v = order[head++];
      for (std::size_t u = 0; u < n; ++u)
        if (!seen[u] && u != v && g[v][u] != 0) {
          seen[u] = true;
          order.push_back(u);
        }
    }
  }
  return order;
}

/// Depth-first assignment of integer vectors with prescribed norms and inner
/// products, vertex by vertex. Canonical pruning keeps one representative
/// per signed coordinate permutation:
///  * coordinates are introduced in increasing index order, each with a
///    positive first value, fresh values nonincreasing within one vector;
///  * among columns identical on all earlier rows, entries are nonincreasing.
class EmbeddingSearch {
 public:
  EmbeddingSearch(const SymmetricMatrix& g, std::size_t k_max, bool enumerate,
                  std::uint64_t node_limit)
      : n_(g.dim()), k_max_(k_max), enumerate_(enumerate), node_limit_(node_limit) {
    gram_.assign(n_, std::vector<long long>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) gram_[i][j] = narrow<long long>(g(i, j));
    order_ = bfs_order(gram_);
    rows_.assign(n_, SmallVector(k_max_, 0));
  }

  void run() {
    aborted_ = false;
    done_ = false;
    place(0, 0);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::set<std::vector<SmallVector>>& found() const { return found_; }
  std::size_t vertex_count() const { return n_; }

 private:
  void place(std::size_t pos, std::size_t used) {
    if (done_ || aborted_) return;
    if (pos == n_) {
      record();
      return;
    }
    if (node_limit_ && ++nodes_ > node_limit_) {
      aborted_ = true;
      return;
    } else if (!node_limit_) {
      ++nodes_;
    }
    const std::size_t v = order_[pos];
    Frame f;
    f.pos = pos;
    f.used = used;
    f.target.resize(pos);
    f.partial.assign(pos, 0);
    for (std::size_t j = 0; j < pos; ++j) f.target[j] = gram_[v][order_[j]];
    // Suffix norms of earlier rows over the used coordinates.
    f.suffix.assign(pos, std::vector<long long>(used + 1, 0));
    for (std::size_t j = 0; j < pos; ++j)
      for (std::size_t c = used; c-- > 0;)
        f.suffix[j][c] = f.suffix[j][c + 1] +
                         static_cast<long long>(rows_[j][c]) * rows_[j][c];
    // Previous member of each column's equivalence class (identical columns
    // on rows 0..pos-1), or -1.
    f.twin.assign(used, -1);
    for (std::size_t c = 1; c < used; ++c)
      for (std::size_t d = c; d-- > 0;) {
        bool same = true;
        for (std::size_t j = 0; j < pos && same; ++j) same = rows_[j][c] == rows_[j][d];
        if (same) {
          f.twin[c] = static_cast<int>(d);
          break;
        }
      }
    coordinate(f, 0, gram_[v][v]);
  }

  struct Frame {
    std::size_t pos = 0;
    std::size_t used = 0;
    std::vector<long long> target;
    std::vector<long long> partial;
    std::vector<std::vector<long long>> suffix;
    std::vector<int> twin;
  };

  bool feasible(const Frame& f, std::size_t next_coord, long long remaining) const {
    for (std::size_t j = 0; j < f.pos; ++j) {
      const long long gap = f.target[j] - f.partial[j];
      const long long cap = f.suffix[j][next_coord];
      if (gap == 0) continue;
      if (cap == 0 || remaining == 0) return false;
      if (gap * gap > remaining * cap) return false;
    }
    return true;
  }

  void coordinate(Frame& f, std::size_t c, long long remaining) {
    if (done_ || aborted_) return;
    SmallVector& row = rows_[f.pos];
    if (c == f.used || remaining == 0) {
      for (std::size_t j = 0; j < f.pos; ++j)
        if (f.partial[j] != f.target[j]) return;
      // Zero the untouched used coordinates (and respect twin ordering).
      for (std::size_t d = c; d < f.used; ++d) row[d] = 0;
      for (std::size_t d = c; d < f.used; ++d)
        if (f.twin[d] >= 0 && row[d] > row[static_cast<std::size_t>(f.twin[d])]) return;
      fresh(f, remaining);
      return;
    }
    long long bound = 0;
    while ((bound + 1) * (bound + 1) <= remaining) ++bound;
    const long long upper =
        f.twin[c] >= 0 ? std::min<long long>(bound, row[static_cast<std::size_t>(f.twin[c])])
                       : bound;
    // Try 0 first, then increasing magnitude, positive before negative.
    std::vector<long long> values;
    if (upper >= 0 && -bound <= 0) values.push_back(0);
    for (long long m = 1; m <= bound; ++m) {
      if (m <= upper) values.push_back(m);
      values.push_back(-m);
    }
    for (long long x : values) {
      if (x > upper) continue;
      row[c] = static_cast<int>(x);
      if (x != 0)
        for (std::size_t j = 0; j < f.pos; ++j) f.partial[j] += x * rows_[j][c];
      const long long rem = remaining - x * x;
      if (feasible(f, c + 1, rem)) coordinate(f, c + 1, rem);
      if (x != 0)
        for (std::size_t j = 0; j < f.pos; ++j) f.partial[j] -= x * rows_[j][c];
      if (done_ || aborted_) break;
    }
    row[c] = 0;
  }

  /// Spends the remaining norm on fresh coordinates as a nonincreasing
  /// sequence of positive integers whose squares sum to `remaining`.
  void fresh(Frame& f, long long remaining) {
    std::vector<int> parts;
    split(f, remaining, remaining, parts);
  }

  void split(Frame& f, long long remaining, long long max_part_sq, std::vector<int>& parts) {
    if (done_ || aborted_) return;
    if (remaining == 0) {
      SmallVector& row = rows_[f.pos];
      for (std::size_t i = 0; i < parts.size(); ++i) row[f.used + i] = parts[i];
      place(f.pos + 1, f.used + parts.size());
      for (std::size_t i = 0; i < parts.size(); ++i) row[f.used + i] = 0;
      return;
    }
    if (f.used + parts.size() >= k_max_) return;
    long long m = 1;
    while ((m + 1) * (m + 1) <= std::min(remaining, max_part_sq)) ++m;
    for (; m >= 1; --m) {
      parts.push_back(static_cast<int>(m));
      split(f, remaining - m * m, m * m, parts);
      parts.pop_back();
      if (done_ || aborted_) return;
    }
  }

  void record() {
    std::vector<SmallVector> by_vertex(n_);
    std::size_t width = 0;
    for (std::size_t pos = 0; pos < n_; ++pos) {
      by_vertex[order_[pos]] = rows_[pos];
      for (std::size_t c = 0; c < k_max_; ++c)
        if (rows_[pos][c] != 0) width = std::max(width, c + 1);
    }
    for (auto& r : by_vertex) r.resize(width);
    found_.insert(canonical_columns(by_vertex));
    if (!enumerate_) done_ = true;
  }

  std::size_t n_;
  std::size_t k_max_;
  bool enumerate_;
  std::uint64_t node_limit_;
  std::vector<std::vector<long long>> gram_;
  std::vector<std::size_t> order_;
  std::vector<SmallVector> rows_;  // indexed by position in order_
  std::set<std::vector<SmallVector>> found_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool done_ = false;
};

inline EmbeddingReport run_embedding_search(const SymmetricMatrix& g, EmbeddingOptions options,
                                            bool enumerate) {
  if (!signature(g).positive_definite()) {
    throw DomainError("embedding search needs a positive-definite Gram matrix");
  }
  const std::size_t k_max = options.k_max ? *options.k_max : narrow<std::size_t>(g.trace());
  EmbeddingSearch search(g, k_max, enumerate, options.node_limit);
  search.run();
  EmbeddingReport report;
  report.k_max = k_max;
  report.nodes = search.nodes();
  report.found = !search.found().empty();
  report.exhausted = !search.aborted() && (enumerate || !report.found);
  for (const auto& cols : search.found())
    report.witnesses.push_back(embedding_from_columns(cols, g.dim()));
  return report;
}

}  // namespace detail

/// Looks for one embedding of the lattice with Gram matrix g into Z^k,
/// k <= k_max. found = false with exhausted = true is a nonexistence proof.
inline EmbeddingReport find_embedding(const SymmetricMatrix& g, EmbeddingOptions options = {}) {
  return detail::run_embedding_search(g, options, false);
}

/// All embeddings into Z^k (k <= k_max) up to signed coordinate permutation,
/// each in canonical column form, sorted.
inline std::vector<Embedding> enumerate_embeddings(const SymmetricMatrix& g,
                                                   EmbeddingOptions options = {}) {
  EmbeddingReport report = detail::run_embedding_search(g, options, true);
  if (!report.exhausted) throw DomainError("enumerate_embeddings: node limit reached");
  return std::move(report.witnesses);
}

/// Enumeration with the search statistics; exhausted = false when the node
/// limit cut the search short, so the list may be incomplete.
inline EmbeddingReport enumeration_report(const SymmetricMatrix& g, EmbeddingOptions options = {}) {
  return detail::run_embedding_search(g, options, true);
}

/// Canonical representative of an embedding's signed-permutation class.
inline Embedding canonical_form(const Embedding& e) {
  std::vector<detail::SmallVector> rows(e.rows.rows(), detail::SmallVector(e.rows.cols()));
  for (std::size_t i = 0; i < e.rows.rows(); ++i)
    for (std::size_t c = 0; c < e.rows.cols(); ++c) rows[i][c] = narrow<int>(e.rows(i, c));
  return detail::embedding_from_columns(detail::canonical_columns(rows), e.rows.rows());
}

/// True iff Z^k / image is torsion-free, i.e. every nonzero invariant
/// factor of the row matrix is 1.
inline bool is_primitive(const Embedding& e) {
  return smith_invariants(e.rows).all_units();
}

enum class BlowupSide { Left, Right };

/// Vectors in Z^s + Z f1 realising a centre plus two chains.
struct TwoLegSequence {
  /// One vector per row; columns are e_1..e_s followed by f_1.
  IntMatrix vectors;
  /// Row of the central vector e_s + f_1.
  std::size_t center = 0;

  std::size_t basis_size() const { return vectors.cols() - 1; }
  GramMatrix gram() const { return GramMatrix(vectors * vectors.transpose()); }
};

/// Starting from (-e1-e2, e2, e1-e2), each step rewrites around the lone
/// basis vector e_s with a fresh e_{s+1}:
///   Left:  ..., v, e_s, w, ...  ->  ..., v - e', e', e_s - e', w, ...
///   Right: ..., v, e_s, w, ...  ->  ..., v, e_s - e', e', w - e', ...
/// and finally e_s becomes e_s + f_1.
inline TwoLegSequence two_leg_recursion(const std::vector<BlowupSide>& steps) {
  using Vec = std::vector<Integer>;
  std::size_t s = 2;
  std::vector<Vec> seq = {{-1, -1}, {0, 1}, {1, -1}};
  std::size_t mid = 1;
  for (BlowupSide side : steps) {
    for (auto& v : seq) v.push_back(0);
    ++s;
    const std::size_t e = s - 1;
    Vec fresh(s, 0);
    fresh[e] = 1;
    if (side == BlowupSide::Left) {
      seq[mid - 1][e] -= 1;
      seq[mid][e] -= 1;
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(mid), fresh);
    } else {
      seq[mid][e] -= 1;
      seq[mid + 1][e] -= 1;
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(mid + 1), fresh);
      ++mid;
    }
  }
  TwoLegSequence out{IntMatrix(seq.size(), s + 1), mid};
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t c = 0; c < s; ++c) out.vectors(i, c) = seq[i][c];
  out.vectors(mid, s) = 1;
  return out;
}

struct ThresholdResult {
  Rational value;
  /// Candidates below `value`, each certified non-embeddable by an
  /// exhausted search.
  std::vector<Rational> certified_failures;
  Embedding witness;
};

/// Scans r = a/b (b <= denom_bound) upward through [r_min, r_max] and returns
/// the least r whose plumbing lattice embeds in a diagonal lattice.
inline ThresholdResult mu_threshold_oracle(const Integer& p, const Integer& q,
                                           const Integer& denom_bound, const Rational& r_min,
                                           const Rational& r_max, EmbeddingOptions options = {}) {
  validate_torus_knot(p, q);
  if (q < 2) throw DomainError("mu_threshold_oracle needs q >= 2");
  if (denom_bound < 1) throw DomainError("mu_threshold_oracle needs a positive denominator bound");
  const Rational upper_limit = Rational(p * q) - Rational(1);
  std::set<Rational> candidates;
  for (Integer b = 1; b <= denom_bound; ++b) {
    for (Integer a = (r_min * Rational(b)).ceil(); Rational(a, b) <= r_max; ++a) {
      Rational r(a, b);
      if (r.sign() > 0 && r < upper_limit) candidates.insert(r);
    }
  }
  ThresholdResult result;
  for (const Rational& r : candidates) {
    const GramMatrix g = surgery_plumbing({p, q, r}).gram();
    EmbeddingReport report = find_embedding(g, options);
    if (report.found) {
      result.value = r;
      result.witness = report.witnesses.front();
      return result;
    }
    if (!report.exhausted) {
      throw DomainError("mu_threshold_oracle: search for r = " + r.str() +
                        " stopped before exhausting the search space");
    }
    result.certified_failures.push_back(r);
  }
  throw DomainError("mu_threshold_oracle: no embeddable r in [" + r_min.str() + ", " +
                    r_max.str() + "]");
}

}  // namespace surgerylab
