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
#ifndef DNSCPM_RULES_HPP
#define DNSCPM_RULES_HPP

#include <cstdint>
#include <string>
#include <unordered_set>

#include "dnscpm/cms.hpp"
#include "dnscpm/domain_name.hpp"
#include "dnscpm/packet.hpp"

namespace dnscpm {

/**
 * Per-window state of the frequency rule. The sketch, the packet counter and
 * the set of already-flagged names all describe the current tumbling window
 * only; rolling the window resets all three, so no information crosses a
 * window boundary.
 */
struct DetectorState {
    CmsSketch cms;
    std::uint64_t tau = 5;            // response-frequency threshold
    std::uint64_t check_interval = 1; // evaluate every Nth packet of the window
    double window = 1.0;              // tumbling window length, seconds
    std::uint64_t count = 0;          // packets admitted to the sketch this window
    double window_start = 0.0;
    bool clock_set = false;
    std::unordered_set<std::string> domain_map; // names already flagged this window

    DetectorState(std::uint32_t cms_depth, std::uint32_t cms_width, std::uint64_t seed)
        : cms(cms_depth, cms_width, seed) {}
};

/**
 * Frequency rule: flag a name once the sketch says it has repeated more than
 * tau times inside the current window.
 *
 * The window rolls before the packet is examined — a packet past the
 * boundary is judged against a fresh window anchored at its own timestamp,
 * so two windows never influence each other. A name that was already flagged
 * this window stays flagged without touching sketch or counter; otherwise
 * the packet feeds the sketch and, on every check_interval-th unflagged
 * packet, the threshold test runs. The counter does not advance on a flagged
 * packet, which keeps the test cadence phased to admitted traffic.
 */
inline bool rule1_frequency(DetectorState& st, const DnsResponsePacket& pkt) {
    if (!st.clock_set) {
        st.window_start = pkt.timestamp;
        st.clock_set = true;
    } else if (pkt.timestamp - st.window_start >= st.window) {
        st.window_start = pkt.timestamp;
        st.cms.reset();
        st.domain_map.clear();
        st.count = 0;
    }

    const std::string& key = pkt.qname.text();
    if (st.domain_map.count(key)) return true;
    st.cms.add(key);
    if (st.count % st.check_interval == 0 && st.cms.estimate(key) > st.tau) {
        st.domain_map.insert(key);
        return true;
    }
    ++st.count;
    return false;
}

/// Outcome of the fragmentation rule: `flag` marks a first fragment for
/// truncation; `drop` nullifies a non-first fragment outright. Never both.
struct Rule2Result {
    bool flag = false;
    bool drop = false;
};

/**
 * Fragmentation rule. A first fragment (offset 0 with more-fragments set)
 * announces a response that will partly arrive outside transport-level
 * validation, so it is flagged for truncation; any later fragment (offset
 * > 0) carries no UDP header at all and is dropped outright.
 */
inline Rule2Result rule2_fragmentation(const DnsResponsePacket& pkt) {
    if (!pkt.fragment) return {};
    if (pkt.fragment->offset > 0) return {false, true};
    if (pkt.fragment->more_fragments) return {true, false};
    return {};
}

/**
 * Bailiwick rule: every record must stay inside the zone the question was
 * asked about. Answer and additional records must carry names at or below
 * the question name's zone; an authority record delegates, so the direction
 * reverses — the question name must fall under the zone the record names.
 * Sections are checked in answer, authority, additional order and the first
 * offender flags the packet.
 */
inline bool rule3_bailiwick(const DnsResponsePacket& pkt) {
    if (!pkt.has_question) return false;
    for (const auto& rec : pkt.answers)
        if (!is_within_bailiwick(rec.name, pkt.qname)) return true;
    for (const auto& rec : pkt.authority)
        if (!is_within_bailiwick(pkt.qname, rec.name)) return true;
    for (const auto& rec : pkt.additional) {
        if (rec.rtype == kTypeOPT) continue; // transport metadata, names no zone
        if (!is_within_bailiwick(rec.name, pkt.qname)) return true;
    }
    return false;
}

} // namespace dnscpm

#endif // DNSCPM_RULES_HPP
