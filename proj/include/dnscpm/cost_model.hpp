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
#ifndef DNSCPM_COST_MODEL_HPP
#define DNSCPM_COST_MODEL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dnscpm/errors.hpp"
#include "dnscpm/format.hpp"

namespace dnscpm {

enum class SketchMethod { CountMin, DwsHeavyHitters, ThresholdSampling };

inline const char* sketch_method_name(SketchMethod m) {
    switch (m) {
        case SketchMethod::CountMin:          return "cms";
        case SketchMethod::DwsHeavyHitters:   return "dws-hh";
        case SketchMethod::ThresholdSampling: return "ws";
    }
    return "?";
}

/**
 * Knobs for the closed-form resource comparison of the three candidate
 * per-flow structures, at the operating point the detector ships with.
 */
struct SketchCostParams {
    std::uint32_t k = 100;            // heavy-hitter slots
    std::uint32_t ell = 32;           // bits per stored identifier
    double tau_ws = 0.01;             // sampling threshold fraction
    std::uint32_t cms_depth = 5;
    std::uint32_t cms_width = 200;
    std::uint32_t cms_counter_bits = 4;
};

struct CostReport {
    SketchMethod method = SketchMethod::CountMin;
    std::uint64_t domains = 0;     // distinct tracked names N
    double memory = 0.0;
    std::string memory_text;       // table cell form ("4000", "3.2K", "640")
    std::string memory_unit;       // "bits" or "bytes"
    double error = 0.0;            // method's own accuracy figure of merit
    double inference = 0.0;        // lookups per query
};

namespace detail {

/// Identifier cost grows with the population's order of magnitude; a slot
/// never stores less than one identifier's worth of state.
inline double id_scale(double domains) {
    return std::max(1.0, std::log10(0.1 * domains));
}

inline std::string memory_cell(double v, bool kilo_notation) {
    if (kilo_notation && v >= 1000.0) return format_double(v / 1000.0) + "K";
    return format_double(v);
}

} // namespace detail

inline CostReport cost_report(SketchMethod method, std::uint64_t domains,
                              const SketchCostParams& p = {}) {
    if (domains == 0) throw Error(ErrorKind::IoError, "domain count must be positive");
    CostReport r;
    r.method = method;
    r.domains = domains;
    double n = static_cast<double>(domains);
    switch (method) {
        case SketchMethod::CountMin:
            // Geometry is fixed, so every column is flat in N.
            r.memory = static_cast<double>(p.cms_width) * p.cms_depth * p.cms_counter_bits;
            r.memory_unit = "bits";
            r.memory_text = detail::memory_cell(r.memory, false);
            r.error = 2.718281828459045 / p.cms_width; // additive overcount per item
            r.inference = p.cms_depth;                 // one cell per row per lookup
            break;
        case SketchMethod::DwsHeavyHitters:
            r.memory = static_cast<double>(p.k) * p.ell * detail::id_scale(n);
            r.memory_unit = "bits";
            r.memory_text = detail::memory_cell(r.memory, true);
            r.error = 1.0 + 1.0 / std::sqrt(2.0 * n);
            r.inference = std::log10(n); // binary-search over magnitude buckets
            break;
        case SketchMethod::ThresholdSampling:
            r.memory = p.tau_ws * n * p.ell * detail::id_scale(n);
            r.memory_unit = "bytes";
            r.memory_text = detail::memory_cell(r.memory, true);
            r.error = 0.125 + 1.0 / p.tau_ws; // sub-threshold mass hides from queries
            r.inference = p.tau_ws * n;       // expected resident sample size
            break;
    }
    return r;
}

/// Full comparison grid in table order: method-major, N ascending.
inline std::vector<CostReport> cost_model_table(
    const SketchCostParams& p = {},
    const std::vector<std::uint64_t>& domain_counts = {10, 100, 1000, 10000}) {
    std::vector<CostReport> out;
    out.reserve(3 * domain_counts.size());
    for (SketchMethod m : {SketchMethod::CountMin, SketchMethod::DwsHeavyHitters,
                           SketchMethod::ThresholdSampling})
        for (std::uint64_t n : domain_counts) out.push_back(cost_report(m, n, p));
    return out;
}

} // namespace dnscpm

#endif // DNSCPM_COST_MODEL_HPP
