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
#ifndef DNSCPM_ENGINE_HPP
#define DNSCPM_ENGINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dnscpm/errors.hpp"
#include "dnscpm/mitigate.hpp"
#include "dnscpm/packet.hpp"
#include "dnscpm/rules.hpp"

namespace dnscpm {

constexpr std::uint64_t kDefaultSeed = 0x646E732D63706DULL;

struct EngineConfig {
    std::uint64_t tau = 5;             // frequency threshold (responses per window)
    std::uint64_t check_interval = 1;  // frequency test cadence within a window
    double window_seconds = 1.0;       // tumbling window length
    std::uint32_t cms_depth = 5;
    std::uint32_t cms_width = 200;
    std::uint64_t seed = kDefaultSeed; // sketch hash seed
    IpAddr resolver_ip = IpAddr::v4(192, 0, 2, 53); // ingest filter target
    bool enable_rule1 = true;
    bool enable_rule2 = true;
    bool enable_rule3 = true;
    bool collect_output = false;       // keep the packets that leave the engine
};

struct RunMetrics {
    std::uint64_t total = 0;      // packets judged
    std::uint64_t forwarded = 0;
    std::uint64_t truncated = 0;
    std::uint64_t dropped = 0;
    std::uint64_t malformed = 0;  // rejected before the engine (ingest-level)
    std::array<std::uint64_t, 3> per_rule{}; // flags attributed to R1/R2/R3
    std::optional<std::uint64_t> first_flag_index;
    std::uint64_t question_lost = 0; // flagged but unable to rebuild a truncated reply

    // Populated only when ground-truth labels accompany the stream.
    std::uint64_t attack_total = 0;
    std::uint64_t benign_total = 0;
    std::uint64_t attack_forwarded = 0;
    std::uint64_t benign_flagged = 0;
    std::uint64_t intended_attack_total = 0;
    double asr = 0.0;     // attack packets that got through / attack packets sent
    double fp_rate = 0.0; // benign packets withheld / benign packets seen
};

struct ProcessResult {
    std::vector<Verdict> verdicts;
    RunMetrics metrics;
    std::vector<DnsResponsePacket> output; // forwarded + truncated, when collected
};

/// Attack success: what fraction of the attacker's transmissions reached the
/// resolver. The denominator is what was sent, not what the engine saw —
/// packets lost before ingestion still count against the attacker.
inline double compute_asr(std::uint64_t attack_forwarded, std::uint64_t intended_attack_total) {
    if (intended_attack_total == 0) return 0.0;
    return static_cast<double>(attack_forwarded) / static_cast<double>(intended_attack_total);
}

/// False positives: benign responses withheld (truncated or dropped).
inline double compute_fp(std::uint64_t benign_flagged, std::uint64_t benign_total) {
    if (benign_total == 0) return 0.0;
    return static_cast<double>(benign_flagged) / static_cast<double>(benign_total);
}

inline double compute_asr(const std::vector<Label>& labels,
                          const std::vector<Verdict>& verdicts,
                          std::uint64_t intended_total) {
    std::uint64_t through = 0;
    for (std::size_t i = 0; i < verdicts.size() && i < labels.size(); ++i)
        if (labels[i] == Label::Attack && verdicts[i].action == Action::Forward) ++through;
    return compute_asr(through, intended_total);
}

inline double compute_fp(const std::vector<Label>& labels,
                         const std::vector<Verdict>& verdicts) {
    std::uint64_t benign = 0, withheld = 0;
    for (std::size_t i = 0; i < verdicts.size() && i < labels.size(); ++i) {
        if (labels[i] != Label::Benign) continue;
        ++benign;
        if (verdicts[i].action != Action::Forward) ++withheld;
    }
    return compute_fp(withheld, benign);
}

/**
 * Run the match-action pipeline over a time-ordered response stream.
 *
 * Per packet the rules fire in fixed order and the first hit wins:
 *   1. frequency (needs a recovered question name),
 *   2. fragmentation,
 *   3. bailiwick (whole packets only — a fragment's sections are incomplete).
 * A clean packet is forwarded. A flagged packet is truncated; when no
 * question survived to rebuild from, it is dropped instead, as is every
 * trailing fragment.
 *
 * `labels`, when given, must parallel `stream`; `intended_attack_total` is
 * the attacker's send count for the ASR denominator (0 = use the labeled
 * attack count). `malformed_at_ingest` carries the reader's reject tally
 * into the metrics.
 */
inline ProcessResult process(const EngineConfig& cfg,
                             std::span<const DnsResponsePacket> stream,
                             const std::vector<Label>* labels = nullptr,
                             std::uint64_t intended_attack_total = 0,
                             std::uint64_t malformed_at_ingest = 0) {
    if (labels && labels->size() != stream.size())
        throw Error(ErrorKind::IoError, "label count does not match packet count");

    DetectorState st(cfg.cms_depth, cfg.cms_width, cfg.seed);
    st.tau = cfg.tau;
    st.check_interval = cfg.check_interval;
    st.window = cfg.window_seconds;

    ProcessResult res;
    res.verdicts.reserve(stream.size());
    RunMetrics& m = res.metrics;
    m.malformed = malformed_at_ingest;

    double prev_ts = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        const DnsResponsePacket& pkt = stream[i];
        if (have_prev && pkt.timestamp < prev_ts)
            throw Error(ErrorKind::UnsortedStream, "timestamps regress at packet " +
                                                       std::to_string(i));
        prev_ts = pkt.timestamp;
        have_prev = true;

        Verdict v;
        v.packet_index = i;

        if (cfg.enable_rule1 && pkt.has_question && rule1_frequency(st, pkt))
            v.fired_rule = RuleId::R1;

        bool nullified = false;
        if (!v.fired_rule && cfg.enable_rule2) {
            Rule2Result fr = rule2_fragmentation(pkt);
            if (fr.flag || fr.drop) {
                v.fired_rule = RuleId::R2;
                nullified = fr.drop;
            }
        }

        if (!v.fired_rule && cfg.enable_rule3 && !pkt.fragment && rule3_bailiwick(pkt))
            v.fired_rule = RuleId::R3;

        if (!v.fired_rule) {
            v.action = Action::Forward;
            if (cfg.collect_output) res.output.push_back(pkt);
        } else if (nullified) {
            v.action = Action::Drop;
        } else if (!pkt.has_question) {
            v.action = Action::Drop;
            ++m.question_lost;
        } else {
            v.action = Action::Truncate;
            if (cfg.collect_output) {
                DnsResponsePacket out = pkt;
                truncate_response(out);
                res.output.push_back(std::move(out));
            }
        }

        ++m.total;
        switch (v.action) {
            case Action::Forward:  ++m.forwarded; break;
            case Action::Truncate: ++m.truncated; break;
            case Action::Drop:     ++m.dropped; break;
        }
        if (v.fired_rule) {
            ++m.per_rule[static_cast<int>(*v.fired_rule) - 1];
            // Without ground truth this is the first flagged packet; with it,
            // the first flagged packet the attacker actually sent.
            if (!labels && !m.first_flag_index) m.first_flag_index = i;
        }
        if (labels) {
            Label lab = (*labels)[i];
            if (lab == Label::Attack) {
                ++m.attack_total;
                if (v.action == Action::Forward) ++m.attack_forwarded;
                else if (!m.first_flag_index) m.first_flag_index = i;
            } else {
                ++m.benign_total;
                if (v.action != Action::Forward) ++m.benign_flagged;
            }
        }
        res.verdicts.push_back(v);
    }

    m.intended_attack_total = intended_attack_total ? intended_attack_total : m.attack_total;
    m.asr = compute_asr(m.attack_forwarded, m.intended_attack_total);
    m.fp_rate = compute_fp(m.benign_flagged, m.benign_total);
    return res;
}

} // namespace dnscpm

#endif // DNSCPM_ENGINE_HPP
