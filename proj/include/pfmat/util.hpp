#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfm {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline int popcount(u32 x) { return std::popcount(x); }
inline int ctz(u32 x) { return std::countr_zero(x); }

// Visit all k-subsets of the bits set in `mask`, in lexicographic order of the
// chosen bit positions.
template <typename F>
void for_each_subset_of_size(u32 mask, int k, F&& f) {
    std::vector<int> bits;
    for (u32 m = mask; m; m &= m - 1) bits.push_back(ctz(m));
    int n = static_cast<int>(bits.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        u32 s = 0;
        for (int i : idx) s |= u32(1) << bits[i];
        f(s);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// All submasks of `mask` (including 0 and mask itself).
template <typename F>
void for_each_submask(u32 mask, F&& f) {
    u32 s = mask;
    while (true) {
        f(s);
        if (s == 0) break;
        s = (s - 1) & mask;
    }
}

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic 64-bit mix, used where tests need reproducible pseudo-random
// draws without dragging in <random> state.
inline u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace pfm
