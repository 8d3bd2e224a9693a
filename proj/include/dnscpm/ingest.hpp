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
#ifndef DNSCPM_INGEST_HPP
#define DNSCPM_INGEST_HPP

#include <optional>
#include <span>

#include "dnscpm/packet.hpp"
#include "dnscpm/wire.hpp"

namespace dnscpm {

enum class IngestOutcome { Accepted, Filtered, Malformed };

struct IngestResult {
    IngestOutcome outcome = IngestOutcome::Filtered;
    std::optional<DnsResponsePacket> packet; // present iff Accepted
};

/**
 * Classify one captured frame against the pipeline's admission policy: DNS
 * responses sourced from port 53 and destined to the resolver, plus every
 * non-first IP fragment headed to the resolver (those carry no UDP header to
 * test, and the fragmentation rule wants to see them raw).
 *
 * Queries and other hosts' traffic are Filtered; undecodable frames are
 * Malformed. Exactly this predicate is used by both the capture reader and
 * the traffic synthesizer, so labels stay aligned with what the engine sees.
 */
inline IngestResult ingest_frame(std::span<const std::uint8_t> frame, double timestamp,
                                 const IpAddr& resolver_ip) {
    IngestResult res;
    DnsResponsePacket pkt;
    try {
        pkt = decode_response(frame, timestamp);
    } catch (const Error& e) {
        res.outcome = e.kind() == ErrorKind::NotAResponse ? IngestOutcome::Filtered
                                                          : IngestOutcome::Malformed;
        return res;
    }
    if (pkt.dst_ip != resolver_ip || !(pkt.is_trailing_fragment() || pkt.src_port == 53)) {
        res.outcome = IngestOutcome::Filtered;
        return res;
    }
    res.outcome = IngestOutcome::Accepted;
    res.packet = std::move(pkt);
    return res;
}

} // namespace dnscpm

#endif // DNSCPM_INGEST_HPP
