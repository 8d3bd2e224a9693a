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
#ifndef DNSCPM_SAMPLERS_HPP
#define DNSCPM_SAMPLERS_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dnscpm/errors.hpp"

namespace dnscpm {

/**
 * Fixed-capacity heavy-hitter tracker (space-saving eviction). Keeps the k
 * heaviest keys approximately: a new key replaces the lightest tracked entry
 * and inherits its weight, so tracked weights never undercount.
 */
class DwsHeavyHitters {
public:
    explicit DwsHeavyHitters(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) throw Error(ErrorKind::IoError, "capacity must be positive");
    }

    void add(std::string_view key, double weight = 1.0) {
        ++seq_;
        auto it = entries_.find(std::string(key));
        if (it != entries_.end()) {
            it->second.weight += weight;
            it->second.last_seen = seq_;
            return;
        }
        if (entries_.size() < capacity_) {
            entries_.emplace(std::string(key), Entry{weight, seq_});
            return;
        }
        auto victim = entries_.begin();
        for (auto jt = entries_.begin(); jt != entries_.end(); ++jt) {
            if (jt->second.weight < victim->second.weight ||
                (jt->second.weight == victim->second.weight &&
                 jt->second.last_seen < victim->second.last_seen))
                victim = jt;
        }
        double inherited = victim->second.weight;
        entries_.erase(victim);
        entries_.emplace(std::string(key), Entry{inherited + weight, seq_});
    }

    /// Tracked weight for a key, or 0 when the key is not resident.
    double estimate(std::string_view key) const {
        auto it = entries_.find(std::string(key));
        return it == entries_.end() ? 0.0 : it->second.weight;
    }

    bool contains(std::string_view key) const {
        return entries_.find(std::string(key)) != entries_.end();
    }

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }

    /// Tracked keys ordered heaviest first (ties broken most-recent first).
    std::vector<std::pair<std::string, double>> top() const {
        std::vector<std::pair<std::string, double>> out;
        out.reserve(entries_.size());
        std::vector<const std::pair<const std::string, Entry>*> refs;
        refs.reserve(entries_.size());
        for (const auto& kv : entries_) refs.push_back(&kv);
        std::sort(refs.begin(), refs.end(), [](const auto* a, const auto* b) {
            if (a->second.weight != b->second.weight) return a->second.weight > b->second.weight;
            if (a->second.last_seen != b->second.last_seen)
                return a->second.last_seen > b->second.last_seen;
            return a->first < b->first;
        });
        for (const auto* kv : refs) out.emplace_back(kv->first, kv->second.weight);
        return out;
    }

private:
    struct Entry {
        double weight = 0.0;
        std::uint64_t last_seen = 0;
    };

    std::size_t capacity_;
    std::uint64_t seq_ = 0;
    std::unordered_map<std::string, Entry> entries_;
};

/**
 * Weight-threshold sampler: accumulates per-key weight and reports the keys
 * whose share of the total stream weight exceeds a fixed fraction. Exact (it
 * keeps every key), so it serves as the accuracy reference the compact
 * structures are compared against.
 */
class ThresholdSampler {
public:
    explicit ThresholdSampler(double threshold_fraction) : threshold_(threshold_fraction) {
        if (threshold_fraction <= 0.0 || threshold_fraction >= 1.0)
            throw Error(ErrorKind::IoError, "threshold must be in (0, 1)");
    }

    void add(std::string_view key, double weight = 1.0) {
        weights_[std::string(key)] += weight;
        total_ += weight;
    }

    double total_weight() const { return total_; }
    double threshold_fraction() const { return threshold_; }
    std::size_t distinct() const { return weights_.size(); }

    double weight_of(std::string_view key) const {
        auto it = weights_.find(std::string(key));
        return it == weights_.end() ? 0.0 : it->second;
    }

    std::vector<std::pair<std::string, double>> sample() const {
        std::vector<std::pair<std::string, double>> out;
        double cut = threshold_ * total_;
        for (const auto& [key, w] : weights_)
            if (w > cut) out.emplace_back(key, w);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        return out;
    }

private:
    double threshold_;
    double total_ = 0.0;
    std::unordered_map<std::string, double> weights_;
};

} // namespace dnscpm

#endif // DNSCPM_SAMPLERS_HPP
