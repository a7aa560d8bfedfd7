#pragma once

#include <numeric>
#include <utility>
#include <vector>

namespace itr {

// Disjoint sets with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns false if x and y were already in the same set.
    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (size_[x] < size_[y]) std::swap(x, y);
        parent_[y] = x;
        size_[x] += size_[y];
        return true;
    }

    bool connected(int x, int y) { return find(x) == find(y); }

    // Label every element by the smallest element of its set.
    std::vector<int> min_labels() {
        const int n = static_cast<int>(parent_.size());
        std::vector<int> smallest(n, n);
        for (int v = 0; v < n; ++v) {
            int r = find(v);
            if (v < smallest[r]) smallest[r] = v;
        }
        std::vector<int> label(n);
        for (int v = 0; v < n; ++v) label[v] = smallest[find(v)];
        return label;
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

}  // namespace itr
