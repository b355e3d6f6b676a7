#pragma once

#include <algorithm>
#include <map>
#include <vector>

namespace llg {

/// All strictly increasing k-tuples with entries in 0..n-1, lexicographic.
inline std::vector<std::vector<int>> k_tuples(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int u = k - 1;
        while (u >= 0 && cur[u] == n - k + u) --u;
        if (u < 0) break;
        ++cur[u];
        for (int v = u + 1; v < k; ++v) cur[v] = cur[v - 1] + 1;
    }
    return out;
}

inline size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    size_t r = 1;
    for (int i = 0; i < k; ++i) r = r * static_cast<size_t>(n - i) / static_cast<size_t>(i + 1);
    return r;
}

inline std::map<std::vector<int>, size_t> tuple_index_map(const std::vector<std::vector<int>>& ts) {
    std::map<std::vector<int>, size_t> m;
    for (size_t i = 0; i < ts.size(); ++i) m[ts[i]] = i;
    return m;
}

/// Sorts an index tuple, returning the permutation sign, or 0 on a repeat.
inline int sign_sort(std::vector<int>& idx) {
    int sign = 1;
    for (size_t i = 1; i < idx.size(); ++i)
        for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

/// Inserts a into a sorted tuple; returns (-1)^position, or 0 if present.
inline int sorted_insert_sign(std::vector<int>& sorted, int a) {
    size_t pos = 0;
    while (pos < sorted.size() && sorted[pos] < a) ++pos;
    if (pos < sorted.size() && sorted[pos] == a) return 0;
    sorted.insert(sorted.begin() + static_cast<long>(pos), a);
    return pos % 2 == 0 ? 1 : -1;
}

inline std::vector<int> tuple_without(const std::vector<int>& t, size_t p) {
    std::vector<int> out;
    out.reserve(t.size() - 1);
    for (size_t i = 0; i < t.size(); ++i)
        if (i != p) out.push_back(t[i]);
    return out;
}

}  // namespace llg
