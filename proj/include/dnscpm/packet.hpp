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
#ifndef DNSCPM_PACKET_HPP
#define DNSCPM_PACKET_HPP

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dnscpm/domain_name.hpp"
#include "dnscpm/errors.hpp"

namespace dnscpm {

// Record types the pipeline cares about. Anything else is carried opaquely.
constexpr std::uint16_t kTypeA     = 1;
constexpr std::uint16_t kTypeNS    = 2;
constexpr std::uint16_t kTypeCNAME = 5;
constexpr std::uint16_t kTypeSOA   = 6;
constexpr std::uint16_t kTypePTR   = 12;
constexpr std::uint16_t kTypeTXT   = 16;
constexpr std::uint16_t kTypeAAAA  = 28;
constexpr std::uint16_t kTypeOPT   = 41; // EDNS0 presence marker
constexpr std::uint16_t kClassIN   = 1;

/// IPv4 or IPv6 address. IPv4 occupies the first four bytes.
struct IpAddr {
    std::array<std::uint8_t, 16> bytes{};
    bool v6 = false;

    static IpAddr v4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d) {
        IpAddr ip;
        ip.bytes[0] = a; ip.bytes[1] = b; ip.bytes[2] = c; ip.bytes[3] = d;
        return ip;
    }

    static IpAddr parse(std::string_view text) {
        IpAddr ip;
        if (text.find(':') != std::string_view::npos) {
            ip.v6 = true;
            // Minimal v6 parser: hex groups with at most one "::" gap.
            std::vector<std::uint16_t> head, tail;
            bool seen_gap = false;
            std::size_t i = 0;
            if (text.substr(0, 2) == "::") { seen_gap = true; i = 2; }
            while (i < text.size()) {
                std::size_t j = text.find(':', i);
                std::string_view group = text.substr(i, j == std::string_view::npos ? j : j - i);
                if (group.empty() || group.size() > 4)
                    throw Error(ErrorKind::InvalidName, "bad IPv6 literal");
                std::uint16_t v = 0;
                for (char c : group) {
                    v = static_cast<std::uint16_t>(v << 4);
                    if (c >= '0' && c <= '9') v |= static_cast<std::uint16_t>(c - '0');
                    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint16_t>(c - 'a' + 10);
                    else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint16_t>(c - 'A' + 10);
                    else throw Error(ErrorKind::InvalidName, "bad IPv6 literal");
                }
                (seen_gap ? tail : head).push_back(v);
                if (j == std::string_view::npos) break;
                i = j + 1;
                if (i < text.size() && text[i] == ':') {
                    if (seen_gap) throw Error(ErrorKind::InvalidName, "bad IPv6 literal");
                    seen_gap = true;
                    ++i;
                }
            }
            if (head.size() + tail.size() > 8 || (!seen_gap && head.size() != 8))
                throw Error(ErrorKind::InvalidName, "bad IPv6 literal");
            for (std::size_t g = 0; g < head.size(); ++g) {
                ip.bytes[g * 2] = static_cast<std::uint8_t>(head[g] >> 8);
                ip.bytes[g * 2 + 1] = static_cast<std::uint8_t>(head[g]);
            }
            for (std::size_t g = 0; g < tail.size(); ++g) {
                std::size_t slot = 8 - tail.size() + g;
                ip.bytes[slot * 2] = static_cast<std::uint8_t>(tail[g] >> 8);
                ip.bytes[slot * 2 + 1] = static_cast<std::uint8_t>(tail[g]);
            }
            return ip;
        }
        unsigned parts[4];
        int consumed = 0;
        if (std::sscanf(std::string(text).c_str(), "%u.%u.%u.%u%n",
                        &parts[0], &parts[1], &parts[2], &parts[3], &consumed) != 4 ||
            static_cast<std::size_t>(consumed) != text.size() ||
            parts[0] > 255 || parts[1] > 255 || parts[2] > 255 || parts[3] > 255)
            throw Error(ErrorKind::InvalidName, "bad IPv4 literal");
        return v4(static_cast<std::uint8_t>(parts[0]), static_cast<std::uint8_t>(parts[1]),
                  static_cast<std::uint8_t>(parts[2]), static_cast<std::uint8_t>(parts[3]));
    }

    std::string text() const {
        char buf[64];
        if (!v6) {
            std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", bytes[0], bytes[1], bytes[2], bytes[3]);
            return buf;
        }
        std::string out;
        for (int g = 0; g < 8; ++g) {
            std::snprintf(buf, sizeof buf, "%x", (bytes[g * 2] << 8) | bytes[g * 2 + 1]);
            if (g) out += ':';
            out += buf;
        }
        return out;
    }

    bool operator==(const IpAddr& o) const { return v6 == o.v6 && bytes == o.bytes; }
    bool operator!=(const IpAddr& o) const { return !(*this == o); }
};

/// IPv4 fragmentation state of the datagram that carried a packet.
struct FragmentInfo {
    std::uint16_t ipid = 0;
    std::uint16_t offset = 0;      // in 8-byte units, as on the wire
    bool more_fragments = false;   // MF flag

    bool operator==(const FragmentInfo&) const = default;
};

struct ResourceRecord {
    DomainName name;
    std::uint16_t rtype = kTypeA;
    std::uint16_t rclass = kClassIN;
    std::uint32_t ttl = 0;
    std::vector<std::uint8_t> rdata; // NS/CNAME/PTR targets stored as uncompressed wire names

    IpAddr a_addr() const {
        if (rtype != kTypeA || rdata.size() != 4)
            throw Error(ErrorKind::MalformedPacket, "not a 4-byte A record");
        return IpAddr::v4(rdata[0], rdata[1], rdata[2], rdata[3]);
    }

    IpAddr aaaa_addr() const {
        if (rtype != kTypeAAAA || rdata.size() != 16)
            throw Error(ErrorKind::MalformedPacket, "not a 16-byte AAAA record");
        IpAddr ip;
        ip.v6 = true;
        for (std::size_t i = 0; i < 16; ++i) ip.bytes[i] = rdata[i];
        return ip;
    }

    bool operator==(const ResourceRecord&) const = default;
};

/**
 * One decoded DNS-over-UDP response as seen in front of the resolver.
 *
 * Trailing IPv4 fragments (offset > 0) carry no UDP or DNS layer, so their
 * transport fields are zero and all sections are empty; `fragment` is the
 * only meaningful payload state for them. First fragments (offset = 0 with
 * MF set) are decoded best-effort: the header and question are recovered
 * when present, sections only as far as the fragment reaches.
 */
struct DnsResponsePacket {
    double timestamp = 0.0; // capture time, seconds
    IpAddr src_ip;
    IpAddr dst_ip;
    std::uint16_t src_port = 0;
    std::uint16_t dst_port = 0;

    std::uint16_t txid = 0;
    bool qr_flag = true; // responses only past ingestion; queries are filtered there
    std::uint8_t opcode = 0;
    bool aa = false;
    bool tc_flag = false;
    bool rd = true;
    bool ra = true;
    std::uint8_t rcode = 0;

    bool has_question = true;
    DomainName qname;
    std::uint16_t qtype = kTypeA;
    std::uint16_t qclass = kClassIN;

    std::vector<ResourceRecord> answers;
    std::vector<ResourceRecord> authority;
    std::vector<ResourceRecord> additional;

    std::optional<FragmentInfo> fragment;
    std::uint32_t raw_len = 0; // size of the datagram as captured

    bool is_fragment() const { return fragment.has_value(); }
    bool is_first_fragment() const {
        return fragment && fragment->offset == 0 && fragment->more_fragments;
    }
    bool is_trailing_fragment() const { return fragment && fragment->offset > 0; }

    bool operator==(const DnsResponsePacket&) const = default;
};

enum class Action { Forward, Truncate, Drop };
enum class RuleId { R1 = 1, R2 = 2, R3 = 3 };

/// Per-packet decision. A Truncate always names the rule that fired; a Drop
/// happens only on the trailing-fragment path (or when a flagged first
/// fragment cannot be rebuilt) and is attributed the same way.
struct Verdict {
    std::uint64_t packet_index = 0;
    Action action = Action::Forward;
    std::optional<RuleId> fired_rule;

    bool flagged() const { return fired_rule.has_value(); }
    bool operator==(const Verdict&) const = default;
};

enum class Label { Benign = 0, Attack = 1 };

inline const char* action_name(Action a) {
    switch (a) {
        case Action::Forward:  return "forward";
        case Action::Truncate: return "truncate";
        case Action::Drop:     return "drop";
    }
    return "?";
}

inline const char* rule_name(RuleId r) {
    switch (r) {
        case RuleId::R1: return "R1";
        case RuleId::R2: return "R2";
        case RuleId::R3: return "R3";
    }
    return "?";
}

inline const char* label_name(Label l) { return l == Label::Attack ? "attack" : "benign"; }

inline Label parse_label(std::string_view s) {
    if (s == "attack") return Label::Attack;
    if (s == "benign") return Label::Benign;
    throw Error(ErrorKind::IoError, "unknown label: " + std::string(s));
}

} // namespace dnscpm

#endif // DNSCPM_PACKET_HPP
