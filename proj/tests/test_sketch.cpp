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
#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "dnscpm/cms.hpp"
#include "dnscpm/rng.hpp"
#include "dnscpm/samplers.hpp"

using namespace dnscpm;

namespace {

// Exact ground truth the sketch's claims are judged against.
struct ExactCounter {
    std::unordered_map<std::string, std::uint64_t> counts;
    void add(const std::string& k, std::uint64_t n = 1) { counts[k] += n; }
    std::uint64_t get(const std::string& k) const {
        auto it = counts.find(k);
        return it == counts.end() ? 0 : it->second;
    }
};

} // namespace

TEST_CASE("estimates never undercount") {
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        CmsSketch cms(3, 64, seed);
        ExactCounter exact;
        Rng rng(seed * 77 + 1);
        for (int i = 0; i < 5000; ++i) {
            std::string key = "k" + std::to_string(rng.below(300));
            cms.add(key);
            exact.add(key);
        }
        for (const auto& [key, n] : exact.counts) {
            INFO("seed " << seed << " key " << key);
            CHECK(cms.estimate(key) >= n);
        }
    }
}

TEST_CASE("single key with no collisions is exact") {
    CmsSketch cms(4, 128, 9);
    for (int i = 0; i < 42; ++i) cms.add("lonely.example");
    CHECK(cms.estimate("lonely.example") == 42);
}

TEST_CASE("absent keys can only be overcounted, never negative") {
    CmsSketch cms(2, 32, 5);
    for (int i = 0; i < 100; ++i) cms.add("present" + std::to_string(i % 7));
    CHECK(cms.estimate("absent.example") <= 100);
}

TEST_CASE("deeper sketches with the same seed only tighten estimates") {
    // Row parameters derive from (seed, row index), so a (d+1)-row sketch
    // shares its first d rows with the d-row sketch and its min can only
    // move down.
    Rng rng(31337);
    std::vector<std::string> keys;
    for (int i = 0; i < 200; ++i) keys.push_back("dom" + std::to_string(i) + ".test");
    CmsSketch shallow(2, 50, 7);
    CmsSketch deep(5, 50, 7);
    for (int i = 0; i < 4000; ++i) {
        const std::string& k = keys[rng.below(keys.size())];
        shallow.add(k);
        deep.add(k);
    }
    for (const auto& k : keys) CHECK(deep.estimate(k) <= shallow.estimate(k));
}

TEST_CASE("reset clears every cell") {
    CmsSketch cms(3, 16, 1);
    for (int i = 0; i < 50; ++i) cms.add("x" + std::to_string(i));
    cms.reset();
    for (int i = 0; i < 50; ++i) CHECK(cms.estimate("x" + std::to_string(i)) == 0);
}

TEST_CASE("counters saturate instead of wrapping") {
    CmsSketch cms(2, 8, 3);
    std::uint32_t big = std::numeric_limits<std::uint32_t>::max() - 1;
    cms.add("hot", big);
    cms.add("hot", 10);
    CHECK(cms.estimate("hot") == std::numeric_limits<std::uint32_t>::max());
}

TEST_CASE("degenerate geometries are rejected") {
    CHECK_THROWS_AS(CmsSketch(0, 10, 1), Error);
    CHECK_THROWS_AS(CmsSketch(3, 0, 1), Error);
}

TEST_CASE("per-item error bound tracks width") {
    CmsSketch cms(5, 200, 1);
    CHECK(cms.error_bound_per_item() == Catch::Approx(2.718281828459045 / 200.0));
    CHECK(CmsSketch(2, 100, 1).error_bound_per_item() ==
          Catch::Approx(2.718281828459045 / 100.0));
}

TEST_CASE("different seeds give different collision patterns") {
    // Not a correctness requirement per se, but seeds must actually matter.
    CmsSketch a(1, 16, 1);
    CmsSketch b(1, 16, 2);
    int differing = 0;
    for (int i = 0; i < 64; ++i) {
        std::string k = "s" + std::to_string(i);
        a.reset();
        b.reset();
        a.add(k);
        b.add(k);
        bool same = true;
        for (int j = 0; j < 64 && same; ++j) {
            std::string probe = "s" + std::to_string(j);
            same = (a.estimate(probe) == b.estimate(probe));
        }
        if (!same) ++differing;
    }
    CHECK(differing > 0);
}

TEST_CASE("heavy-hitter table never undercounts resident keys") {
    DwsHeavyHitters hh(8);
    ExactCounter exact;
    Rng rng(11);
    for (int i = 0; i < 3000; ++i) {
        // Skewed stream: low ids dominate.
        std::uint64_t id = rng.below(rng.below(40) + 1);
        std::string key = "h" + std::to_string(id);
        hh.add(key);
        exact.add(key);
    }
    CHECK(hh.size() <= 8);
    for (const auto& [key, w] : hh.top()) {
        INFO(key);
        CHECK(w >= static_cast<double>(exact.get(key)));
    }
}

TEST_CASE("heavy-hitter table is exact below capacity") {
    DwsHeavyHitters hh(16);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j <= i; ++j) hh.add("k" + std::to_string(i));
    CHECK(hh.size() == 10);
    for (int i = 0; i < 10; ++i)
        CHECK(hh.estimate("k" + std::to_string(i)) == static_cast<double>(i + 1));
    auto top = hh.top();
    REQUIRE_FALSE(top.empty());
    CHECK(top.front().first == "k9");
    for (std::size_t i = 1; i < top.size(); ++i)
        CHECK(top[i - 1].second >= top[i].second);
}

TEST_CASE("eviction transfers the displaced weight") {
    DwsHeavyHitters hh(2);
    hh.add("a", 5.0);
    hh.add("b", 3.0);
    hh.add("c", 1.0); // evicts the lightest (b, weight 3); c inherits that weight
    CHECK(hh.size() == 2);
    CHECK(hh.contains("a"));
    CHECK(hh.contains("c"));
    CHECK_FALSE(hh.contains("b"));
    CHECK(hh.estimate("c") == 4.0);
    CHECK_THROWS_AS(DwsHeavyHitters(0), Error);
}

TEST_CASE("threshold sampler keeps exactly the above-threshold keys") {
    ThresholdSampler ws(0.1);
    for (int i = 0; i < 50; ++i) ws.add("small" + std::to_string(i)); // 1 each
    for (int i = 0; i < 30; ++i) ws.add("big");                       // 30
    // total 80, cutoff 8: only "big" (30) exceeds it
    auto sample = ws.sample();
    REQUIRE(sample.size() == 1);
    CHECK(sample[0].first == "big");
    CHECK(sample[0].second == 30.0);
    CHECK(ws.total_weight() == 80.0);

    SECTION("cutoff is strict") {
        ThresholdSampler s2(0.5);
        s2.add("x", 1.0);
        s2.add("y", 1.0);
        CHECK(s2.sample().empty()); // 1.0 is not > 0.5*2.0
    }
    SECTION("threshold domain is validated") {
        CHECK_THROWS_AS(ThresholdSampler(0.0), Error);
        CHECK_THROWS_AS(ThresholdSampler(1.0), Error);
        CHECK_THROWS_AS(ThresholdSampler(-2.0), Error);
    }
}
