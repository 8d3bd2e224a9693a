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
#ifndef DNSCPM_SWEEP_HPP
#define DNSCPM_SWEEP_HPP

#include <cstdint>
#include <future>
#include <vector>

#include "dnscpm/engine.hpp"
#include "dnscpm/report.hpp"
#include "dnscpm/trafficgen.hpp"

namespace dnscpm {

/**
 * Grid sweep over sketch geometry. Every (width, depth) cell sees the very
 * same `repeats` traffic instances — run r always uses scenario seed
 * base_seed + r — so the cells differ only in the sketch, never in the
 * traffic.
 */
struct SweepConfig {
    std::vector<std::uint32_t> widths = {100, 200, 500};
    std::vector<std::uint32_t> depths = {2, 3, 4, 5};
    std::uint32_t repeats = 10;
    std::uint64_t base_seed = 1;
    ScenarioSpec scenario;   // template; seed is overwritten per repeat
    EngineConfig engine;     // template; cms geometry is overwritten per cell
};

inline SweepCell run_sweep_cell(const SweepConfig& cfg, std::uint32_t width,
                                std::uint32_t depth) {
    SweepCell cell;
    cell.width = width;
    cell.depth = depth;
    cell.repeats = cfg.repeats;
    double fp_sum = 0.0, asr_sum = 0.0;
    for (std::uint32_t r = 0; r < cfg.repeats; ++r) {
        ScenarioSpec spec = cfg.scenario;
        spec.seed = cfg.base_seed + r;
        GeneratedTraffic traffic = generate(spec);
        EngineConfig ec = cfg.engine;
        ec.cms_width = width;
        ec.cms_depth = depth;
        ProcessResult res =
            process(ec, traffic.stream, &traffic.labels, traffic.intended_attack_total);
        fp_sum += res.metrics.fp_rate;
        asr_sum += res.metrics.asr;
    }
    if (cfg.repeats > 0) {
        cell.mean_fp = fp_sum / cfg.repeats;
        cell.mean_asr = asr_sum / cfg.repeats;
    }
    return cell;
}

/// Run the whole grid, one task per cell, rows ordered width-major.
inline std::vector<SweepCell> run_sweep(const SweepConfig& cfg) {
    std::vector<std::future<SweepCell>> futures;
    futures.reserve(cfg.widths.size() * cfg.depths.size());
    for (std::uint32_t w : cfg.widths)
        for (std::uint32_t d : cfg.depths)
            futures.push_back(std::async(std::launch::async,
                                         [&cfg, w, d] { return run_sweep_cell(cfg, w, d); }));
    std::vector<SweepCell> cells;
    cells.reserve(futures.size());
    for (auto& f : futures) cells.push_back(f.get());
    return cells;
}

} // namespace dnscpm

#endif // DNSCPM_SWEEP_HPP
