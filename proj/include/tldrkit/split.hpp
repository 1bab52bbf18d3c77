#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tldrkit/rng.hpp"

namespace tldrkit {

struct RatioMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SplitSpec {
    std::array<double, 3> ratios = {0.6, 0.2, 0.2};  // train, val, test
    std::uint64_t seed = 0;

    void validate() const {
        double sum = 0.0;
        for (double r : ratios) {
            if (r < 0.0) throw RatioMismatch("split ratios must be non-negative");
            sum += r;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw RatioMismatch("split ratios must sum to 1");
    }
};

struct SplitSizes {
    std::size_t train = 0;
    std::size_t val = 0;
    std::size_t test = 0;
};

/// floor(r0*n) to train, floor(r1*n) to val, remainder to test.
inline SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
    spec.validate();
    SplitSizes sz;
    sz.train = static_cast<std::size_t>(std::floor(spec.ratios[0] * static_cast<double>(n)));
    sz.val = static_cast<std::size_t>(std::floor(spec.ratios[1] * static_cast<double>(n)));
    sz.test = n - sz.train - sz.val;
    return sz;
}

struct SplitAssignment {
    SplitSizes sizes;
    // Permuted index order per split: train holds the first floor(r0*n)
    // entries of the Fisher-Yates permutation, and so on.
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

inline SplitAssignment assign_splits(std::size_t n, const SplitSpec& spec) {
    SplitAssignment a;
    a.sizes = split_sizes(n, spec);
    const std::vector<std::size_t> perm = shuffled_indices(n, spec.seed);
    a.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(a.sizes.train));
    a.val.assign(perm.begin() + static_cast<std::ptrdiff_t>(a.sizes.train),
                 perm.begin() + static_cast<std::ptrdiff_t>(a.sizes.train + a.sizes.val));
    a.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(a.sizes.train + a.sizes.val),
                  perm.end());
    return a;
}

/// In-memory split of a materialized sequence; outputs are in permuted order.
template <typename T>
std::array<std::vector<T>, 3> split_dataset(const std::vector<T>& items, const SplitSpec& spec) {
    const SplitAssignment a = assign_splits(items.size(), spec);
    std::array<std::vector<T>, 3> out;
    auto gather = [&items](const std::vector<std::size_t>& idx, std::vector<T>& dst) {
        dst.reserve(idx.size());
        for (std::size_t i : idx) dst.push_back(items[i]);
    };
    gather(a.train, out[0]);
    gather(a.val, out[1]);
    gather(a.test, out[2]);
    return out;
}

}  // namespace tldrkit
