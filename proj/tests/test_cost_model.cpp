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

#include <cmath>
#include <string>
#include <vector>

#include "dnscpm/cost_model.hpp"
#include "dnscpm/format.hpp"

using namespace dnscpm;

TEST_CASE("count-min column is flat in the population") {
    for (std::uint64_t n : {10ULL, 100ULL, 1000ULL, 10000ULL}) {
        CostReport r = cost_report(SketchMethod::CountMin, n);
        CHECK(r.memory == 4000.0);
        CHECK(r.memory_text == "4000");
        CHECK(r.memory_unit == "bits");
        CHECK(r.error == Catch::Approx(2.718281828459045 / 200.0).epsilon(1e-12));
        CHECK(r.inference == 5.0);
    }
}

TEST_CASE("heavy-hitter column grows with the population's magnitude") {
    const std::vector<std::uint64_t> ns = {10, 100, 1000, 10000};
    const std::vector<std::string> mem = {"3.2K", "3.2K", "6.4K", "9.6K"};
    const std::vector<double> err = {1.223, 1.071, 1.022, 1.007};
    const std::vector<double> inf = {1.0, 2.0, 3.0, 4.0};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CostReport r = cost_report(SketchMethod::DwsHeavyHitters, ns[i]);
        CHECK(r.memory_text == mem[i]);
        CHECK(r.memory_unit == "bits");
        CHECK(std::fabs(r.error - err[i]) <= 0.001);
        CHECK(r.error == Catch::Approx(1.0 + 1.0 / std::sqrt(2.0 * ns[i])).epsilon(1e-12));
        CHECK(r.inference == Catch::Approx(inf[i]).epsilon(1e-12));
    }
}

TEST_CASE("threshold-sampling column grows linearly") {
    const std::vector<std::uint64_t> ns = {10, 100, 1000, 10000};
    const std::vector<std::string> mem = {"3.2", "32", "640", "9.6K"};
    const std::vector<double> inf = {0.1, 1.0, 10.0, 100.0};
    for (std::size_t i = 0; i < ns.size(); ++i) {
        CostReport r = cost_report(SketchMethod::ThresholdSampling, ns[i]);
        CHECK(r.memory_text == mem[i]);
        CHECK(r.memory_unit == "bytes");
        CHECK(r.error == Catch::Approx(100.125).epsilon(1e-12));
        CHECK(r.inference == Catch::Approx(inf[i]).epsilon(1e-12));
    }
}

TEST_CASE("full table is method-major with ascending populations") {
    std::vector<CostReport> rows = cost_model_table();
    REQUIRE(rows.size() == 12);
    CHECK(rows[0].method == SketchMethod::CountMin);
    CHECK(rows[4].method == SketchMethod::DwsHeavyHitters);
    CHECK(rows[8].method == SketchMethod::ThresholdSampling);
    for (int block = 0; block < 3; ++block) {
        CHECK(rows[block * 4 + 0].domains == 10);
        CHECK(rows[block * 4 + 1].domains == 100);
        CHECK(rows[block * 4 + 2].domains == 1000);
        CHECK(rows[block * 4 + 3].domains == 10000);
    }
    CHECK(std::string(sketch_method_name(rows[0].method)) == "cms");
    CHECK(std::string(sketch_method_name(rows[4].method)) == "dws-hh");
    CHECK(std::string(sketch_method_name(rows[8].method)) == "ws");
}

TEST_CASE("identifier scale never drops below one slot") {
    // At N=10 the magnitude term log10(0.1*N) is zero; memory must floor at
    // one identifier per slot rather than vanish.
    CostReport r10 = cost_report(SketchMethod::DwsHeavyHitters, 10);
    CostReport r100 = cost_report(SketchMethod::DwsHeavyHitters, 100);
    CHECK(r10.memory == r100.memory);
    CHECK(r10.memory == 3200.0);
}

TEST_CASE("empty populations are rejected") {
    CHECK_THROWS_AS(cost_report(SketchMethod::CountMin, 0), Error);
}

TEST_CASE("kilo notation applies from one thousand upward") {
    SketchCostParams p;
    CHECK(cost_report(SketchMethod::ThresholdSampling, 10, p).memory_text == "3.2");
    CHECK(cost_report(SketchMethod::ThresholdSampling, 1000, p).memory_text == "640");
    CHECK(cost_report(SketchMethod::ThresholdSampling, 10000, p).memory_text == "9.6K");
    // The count-min cell keeps plain digits even at four figures.
    CHECK(cost_report(SketchMethod::CountMin, 10, p).memory_text == "4000");
}

TEST_CASE("compact float formatting matches table conventions") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(100.125) == "100.125");
    CHECK(format_double(4000.0) == "4000");
    CHECK(format_double(3.2) == "3.2");
}
