/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#ifndef DNSCPM_CMS_HPP
#define DNSCPM_CMS_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "dnscpm/errors.hpp"
#include "dnscpm/rng.hpp"

namespace dnscpm {

/**
 * Count-min sketch over string keys with saturating 32-bit counters.
 *
 * Estimates never undercount: each row adds the full amount to one cell, and
 * the reported value is the minimum across rows, so for any key
 * estimate >= true count, with overshoot bounded by row collisions
 * (expected additive error e/width at confidence 1 - e^-depth).
 *
 * Row hash parameters derive from (seed, row) alone, so a deeper sketch with
 * the same seed shares its first rows with a shallower one. Taking the min
 * over a superset of rows can only lower an estimate, which makes
 * false-positive behaviour monotone in depth run-for-run, not just on
 * average.
 */
class CmsSketch {
public:
    CmsSketch(std::uint32_t depth, std::uint32_t width, std::uint64_t seed)
        : depth_(depth), width_(width), seed_(seed) {
        if (depth == 0 || width == 0)
            throw Error(ErrorKind::IoError, "sketch dimensions must be positive");
        rows_.reserve(depth);
        for (std::uint32_t i = 0; i < depth; ++i) {
            std::uint64_t a = derive_seed(seed, 2 * i);
            std::uint64_t b = derive_seed(seed, 2 * i + 1);
            rows_.push_back(Row{a | 1, b});
        }
        cells_.assign(static_cast<std::size_t>(depth) * width, 0);
    }

    std::uint32_t depth() const { return depth_; }
    std::uint32_t width() const { return width_; }
    std::uint64_t seed() const { return seed_; }

    void add(std::string_view key, std::uint32_t amount = 1) {
        std::uint64_t fp = fnv1a64(key);
        for (std::uint32_t i = 0; i < depth_; ++i) {
            std::uint32_t& cell = cells_[static_cast<std::size_t>(i) * width_ + index(i, fp)];
            std::uint64_t next = static_cast<std::uint64_t>(cell) + amount;
            cell = next > std::numeric_limits<std::uint32_t>::max()
                       ? std::numeric_limits<std::uint32_t>::max()
                       : static_cast<std::uint32_t>(next);
        }
    }

    std::uint64_t estimate(std::string_view key) const {
        std::uint64_t fp = fnv1a64(key);
        std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
        for (std::uint32_t i = 0; i < depth_; ++i)
            best = std::min(best, cells_[static_cast<std::size_t>(i) * width_ + index(i, fp)]);
        return best;
    }

    void reset() { std::fill(cells_.begin(), cells_.end(), 0); }

    /// Expected additive overestimate per query for this geometry.
    double error_bound_per_item() const { return 2.718281828459045 / width_; }

private:
    struct Row {
        std::uint64_t a, b;
    };

    std::uint32_t index(std::uint32_t row, std::uint64_t fp) const {
        std::uint64_t h = rows_[row].a * fp + rows_[row].b;
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(h) * width_) >> 64);
    }

    std::uint32_t depth_;
    std::uint32_t width_;
    std::uint64_t seed_;
    std::vector<Row> rows_;
    std::vector<std::uint32_t> cells_;
};

} // namespace dnscpm

#endif // DNSCPM_CMS_HPP
