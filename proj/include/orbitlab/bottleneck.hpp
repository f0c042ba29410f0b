#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "orbitlab/matrix.hpp"

namespace orbitlab {

/// Hopcroft-Karp maximum matching on a bipartite graph with n left and n
/// right vertices.  Returns the matching size; pairing of left vertices comes
/// back through match_left (-1 for unmatched).
class BipartiteMatcher {
public:
    BipartiteMatcher(int n_left, int n_right) : nl_(n_left), nr_(n_right), adj_(n_left) {}

    void add_edge(int l, int r) { adj_[l].push_back(r); }

    int solve(std::vector<int>& match_left) {
        match_left.assign(nl_, -1);
        match_right_.assign(nr_, -1);
        int matched = 0;
        while (bfs(match_left)) {
            for (int l = 0; l < nl_; ++l)
                if (match_left[l] == -1 && dfs(l, match_left)) ++matched;
        }
        return matched;
    }

private:
    bool bfs(const std::vector<int>& match_left) {
        dist_.assign(nl_, -1);
        std::queue<int> q;
        for (int l = 0; l < nl_; ++l)
            if (match_left[l] == -1) {
                dist_[l] = 0;
                q.push(l);
            }
        bool found = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[l]) {
                int l2 = match_right_[r];
                if (l2 == -1) {
                    found = true;
                } else if (dist_[l2] == -1) {
                    dist_[l2] = dist_[l] + 1;
                    q.push(l2);
                }
            }
        }
        return found;
    }

    bool dfs(int l, std::vector<int>& match_left) {
        for (int r : adj_[l]) {
            int l2 = match_right_[r];
            if (l2 == -1 || (dist_[l2] == dist_[l] + 1 && dfs(l2, match_left))) {
                match_left[l] = r;
                match_right_[r] = l;
                return true;
            }
        }
        dist_[l] = -2;  // dead end for this phase
        return false;
    }

    int nl_, nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_right_;
    std::vector<int> dist_;
};

/// Bottleneck value of two eigenvalue lists: the smallest threshold t such
/// that the bipartite graph {|lambda_i - mu_j| <= t} has a perfect matching.
/// Binary search over the n^2 candidate distances.
inline double bottleneck_match(const std::vector<Complex>& lam, const std::vector<Complex>& mu,
                               std::vector<int>* matching_out = nullptr) {
    const int n = (int)lam.size();
    if (n == 0) return 0.0;
    std::vector<double> cand;
    cand.reserve((size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cand.push_back(std::abs(lam[i] - mu[j]));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    auto feasible = [&](double t, std::vector<int>& match) {
        BipartiteMatcher m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(lam[i] - mu[j]) <= t) m.add_edge(i, j);
        return m.solve(match) == n;
    };

    int lo = 0, hi = (int)cand.size() - 1;
    std::vector<int> match;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible(cand[mid], match)) hi = mid;
        else lo = mid + 1;
    }
    std::vector<int> final_match;
    feasible(cand[lo], final_match);
    if (matching_out) *matching_out = final_match;
    return cand[lo];
}

/// Spectral distance between two normal matrices: the minimax eigenvalue
/// matching over all pairings.
inline double delta_matrix(const NormalMatrix& h, const NormalMatrix& k,
                           std::vector<int>* matching_out = nullptr) {
    if (h.dim() != k.dim())
        throw DimensionMismatchError("matrices of different dimension");
    CVec lh = eigen_normal(h).eigenvalues;
    CVec lk = eigen_normal(k).eigenvalues;
    std::vector<Complex> a(lh.data(), lh.data() + lh.size());
    std::vector<Complex> b(lk.data(), lk.data() + lk.size());
    return bottleneck_match(a, b, matching_out);
}

}  // namespace orbitlab
