#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <unordered_map>

#include "chyp/word.hpp"

namespace chyp {

struct ExplorerOptions {
  std::size_t max_states = 1'000'000;
  /// Worker threads for frontier expansion; 0 means hardware concurrency.
  unsigned threads = 0;
  int k_max = 200;
  /// Chordal tolerance for comparing boundary points.
  double point_tol = 1e-6;
  /// Orbit points with |w|^2 > 1 - radial_cut are kept as limit-set samples.
  double radial_cut = 1e-3;
};

/// Nontrivial PU classes reached by reduced words of length <= max_len, each
/// with its shortlex-least witness, in shortlex order of the witnesses.
class Enumeration {
 public:
  struct Node {
    std::int64_t parent;  // -1 for the identity root
    Letter last;
    std::uint32_t length;
    Isometry element;
  };

  std::size_t size() const { return nodes_.size() - 1; }
  /// i-th nontrivial class, 0-based.
  const Isometry& element(std::size_t i) const { return nodes_[i + 1].element; }
  std::size_t length(std::size_t i) const { return nodes_[i + 1].length; }

  Word word(std::size_t i) const {
    std::vector<Letter> rev;
    for (std::int64_t at = std::int64_t(i + 1); nodes_[std::size_t(at)].parent >= 0;
         at = nodes_[std::size_t(at)].parent)
      rev.push_back(nodes_[std::size_t(at)].last);
    return Word(std::vector<Letter>(rev.rbegin(), rev.rend()));
  }

  std::size_t words_examined() const { return words_examined_; }
  bool budget_exceeded() const { return budget_exceeded_; }
  int max_len() const { return max_len_; }

 private:
  friend Enumeration explore(const GroupInput&, int, const ExplorerOptions&, const ToleranceConfig&);
  std::vector<Node> nodes_;
  std::size_t words_examined_ = 0;
  bool budget_exceeded_ = false;
  int max_len_ = 0;
};

struct EnumeratedClass {
  Word word;
  Isometry element;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t budget, std::vector<EnumeratedClass> partial)
      : Error("enumeration budget of " + std::to_string(budget) + " states exceeded"),
        partial_(std::move(partial)) {}
  const std::vector<EnumeratedClass>& partial() const noexcept { return partial_; }

 private:
  std::vector<EnumeratedClass> partial_;
};

namespace detail {

/// Phase-invariant fingerprint of a matrix: (u.M) conj(v.M) / ||M||_F^2 for
/// fixed weight matrices u, v of unit Frobenius norm. Matrices that are
/// PU-equal within tol_identity land within a few tol_identity of each other.
class PhaseInvariantKey {
 public:
  explicit PhaseInvariantKey(int k, double tol_identity) : cell_(8.0 * tol_identity) {
    u_.resize(k, k);
    v_.resize(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        u_(i, j) = Complexd(std::cos(1.3 + 0.7 * i + 1.9 * j), std::sin(0.4 + 2.3 * i - 1.1 * j));
        v_(i, j) = Complexd(std::sin(2.1 + 1.7 * i + 0.3 * j), std::cos(0.9 - 1.4 * i + 2.6 * j));
      }
    u_ /= u_.norm();
    v_ /= v_.norm();
  }

  std::pair<std::int64_t, std::int64_t> cell(const CMatrix& m) const {
    const double n2 = m.squaredNorm();
    const Complexd s = (u_.cwiseProduct(m).sum()) * std::conj(v_.cwiseProduct(m).sum()) / n2;
    return {std::int64_t(std::floor(s.real() / cell_)), std::int64_t(std::floor(s.imag() / cell_))};
  }

 private:
  double cell_;
  CMatrix u_, v_;
};

struct CellHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const noexcept {
    return std::hash<std::int64_t>{}(c.first * 0x9E3779B97F4A7C15LL ^ c.second);
  }
};

}  // namespace detail

/// Breadth-first enumeration of reduced words with PU-deduplication. The
/// fingerprint only selects candidate cells (the 3x3 neighbourhood of the
/// new key); pu_equal decides. Products are computed in parallel chunks and
/// inserted sequentially in shortlex order, so the result does not depend on
/// the thread count. Stops early, flagging budget_exceeded, once max_states
/// classes are stored.
inline Enumeration explore(const GroupInput& group, int max_len, const ExplorerOptions& opts = {},
                           const ToleranceConfig& cfg = {}) {
  if (max_len < 1) throw PreconditionError("enumeration depth must be >= 1");
  group.validate();
  Enumeration out;
  out.max_len_ = max_len;
  const int k = group.dim_n + 1;
  out.nodes_.push_back({-1, {}, 0, identity(group.dim_n)});
  if (group.generators.empty()) return out;

  std::vector<Letter> alphabet;
  std::vector<CMatrix> letter_matrix;
  for (int g = 0; g < int(group.generators.size()); ++g)
    for (int e : {1, -1}) {
      alphabet.push_back({g, e});
      const Isometry& m = group.generators[std::size_t(g)].element;
      letter_matrix.push_back(e > 0 ? m.matrix() : inverse(m).matrix());
    }

  const detail::PhaseInvariantKey key(k, cfg.tol_identity);
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::uint32_t>, detail::CellHash> cells;
  const auto insert_if_new = [&](std::size_t node_index) {
    const CMatrix& m = out.nodes_[node_index].element.matrix();
    const auto c = key.cell(m);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        const auto it = cells.find({c.first + dx, c.second + dy});
        if (it == cells.end()) continue;
        for (auto j : it->second)
          if (pu_equal(out.nodes_[node_index].element, out.nodes_[j].element, cfg)) return false;
      }
    cells[c].push_back(std::uint32_t(node_index));
    return true;
  };
  insert_if_new(0);

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  constexpr std::size_t kChunk = 1 << 14;

  struct Candidate {
    std::size_t parent;
    int letter;
  };

  std::vector<std::size_t> frontier{0};
  for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Candidate> candidates;
    for (auto p : frontier)
      for (int a = 0; a < int(alphabet.size()); ++a) {
        const auto& node = out.nodes_[p];
        if (node.parent >= 0 && alphabet[std::size_t(a)] == node.last.inverse()) continue;
        candidates.push_back({p, a});
      }

    std::vector<std::size_t> next;
    std::vector<CMatrix> products;
    for (std::size_t start = 0; start < candidates.size(); start += kChunk) {
      const std::size_t stop = std::min(candidates.size(), start + kChunk);
      products.assign(stop - start, CMatrix());
      const auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
          const auto& c = candidates[start + i];
          products[i] = out.nodes_[c.parent].element.matrix() * letter_matrix[std::size_t(c.letter)];
        }
      };
      const std::size_t count = stop - start;
      const unsigned used = unsigned(std::min<std::size_t>(threads, (count + 255) / 256));
      if (used <= 1) {
        work(0, count);
      } else {
        std::vector<std::thread> pool;
        const std::size_t per = (count + used - 1) / used;
        for (unsigned t = 0; t < used; ++t) {
          const std::size_t lo = t * per, hi = std::min(count, lo + per);
          if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
      }

      for (std::size_t i = 0; i < count; ++i) {
        const auto& c = candidates[start + i];
        ++out.words_examined_;
        out.nodes_.push_back({std::int64_t(c.parent), alphabet[std::size_t(c.letter)], std::uint32_t(len),
                              Isometry::trusted(std::move(products[i]))});
        if (insert_if_new(out.nodes_.size() - 1)) {
          next.push_back(out.nodes_.size() - 1);
          if (out.size() >= opts.max_states) {
            out.budget_exceeded_ = true;
            return out;
          }
        } else {
          out.nodes_.pop_back();
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

/// Materialized enumeration; throws BudgetExceeded carrying the classes
/// found so far when the state budget runs out.
inline std::vector<EnumeratedClass> enumerate_words(const GroupInput& group, int max_len,
                                                    const ExplorerOptions& opts = {},
                                                    const ToleranceConfig& cfg = {}) {
  const Enumeration e = explore(group, max_len, opts, cfg);
  std::vector<EnumeratedClass> out;
  out.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out.push_back({e.word(i), e.element(i)});
  if (e.budget_exceeded()) throw BudgetExceeded(opts.max_states, std::move(out));
  return out;
}

}  // namespace chyp
