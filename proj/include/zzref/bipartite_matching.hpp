#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace zzref {

/// Maximum bipartite matching (Hopcroft-Karp). Left vertices 0..L-1, right
/// vertices 0..R-1, adjacency given per left vertex.
class BipartiteMatcher {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  BipartiteMatcher(std::size_t left, std::size_t right) : adj_(left), match_l_(left, kNone), match_r_(right, kNone) {}

  void add_edge(std::size_t l, std::size_t r) { adj_[l].push_back(r); }

  /// Runs to completion and returns the matching size.
  std::size_t solve() {
    std::size_t size = 0;
    while (bfs())
      for (std::size_t l = 0; l < adj_.size(); ++l)
        if (match_l_[l] == kNone && dfs(l)) ++size;
    return size;
  }

  /// Partner of left vertex l, or kNone.
  [[nodiscard]] std::size_t partner_of_left(std::size_t l) const { return match_l_[l]; }

 private:
  bool bfs() {
    std::queue<std::size_t> q;
    dist_.assign(adj_.size(), kNone);
    for (std::size_t l = 0; l < adj_.size(); ++l)
      if (match_l_[l] == kNone) {
        dist_[l] = 0;
        q.push(l);
      }
    bool found = false;
    while (!q.empty()) {
      const std::size_t l = q.front();
      q.pop();
      for (std::size_t r : adj_[l]) {
        const std::size_t next = match_r_[r];
        if (next == kNone) {
          found = true;
        } else if (dist_[next] == kNone) {
          dist_[next] = dist_[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t l) {
    for (std::size_t r : adj_[l]) {
      const std::size_t next = match_r_[r];
      if (next == kNone || (dist_[next] == dist_[l] + 1 && dfs(next))) {
        match_l_[l] = r;
        match_r_[r] = l;
        return true;
      }
    }
    dist_[l] = kNone;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_l_;
  std::vector<std::size_t> match_r_;
  std::vector<std::size_t> dist_;
};

}  // namespace zzref
