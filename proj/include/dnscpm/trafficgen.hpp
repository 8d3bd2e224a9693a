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
#ifndef DNSCPM_TRAFFICGEN_HPP
#define DNSCPM_TRAFFICGEN_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "dnscpm/domain_name.hpp"
#include "dnscpm/errors.hpp"
#include "dnscpm/ingest.hpp"
#include "dnscpm/packet.hpp"
#include "dnscpm/rng.hpp"
#include "dnscpm/wire.hpp"

namespace dnscpm {

enum class ScenarioKind { SAttack, FragAttack, OobAttack, BenignOnly, Interleaved };

inline const char* scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::SAttack:    return "s";
        case ScenarioKind::FragAttack: return "frag";
        case ScenarioKind::OobAttack:  return "oob";
        case ScenarioKind::BenignOnly: return "benign";
        case ScenarioKind::Interleaved: return "interleaved";
    }
    return "?";
}

inline ScenarioKind parse_scenario(const std::string& s) {
    if (s == "s") return ScenarioKind::SAttack;
    if (s == "frag") return ScenarioKind::FragAttack;
    if (s == "oob") return ScenarioKind::OobAttack;
    if (s == "benign") return ScenarioKind::BenignOnly;
    if (s == "interleaved") return ScenarioKind::Interleaved;
    throw Error(ErrorKind::IoError, "unknown scenario: " + s);
}

/**
 * Everything a scenario needs to be reproduced from scratch. Two specs with
 * equal fields produce byte-identical captures.
 */
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::SAttack;
    std::uint64_t seed = 1;
    DomainName attack_domain = DomainName::parse("victim.com");
    std::uint32_t attack_count = 65535;    // spoofed responses / forged fragments
    std::uint32_t attack_window_ms = 400;  // burst duration
    std::uint32_t noise_count = 1000;      // benign responses
    std::vector<DomainName> noise_domains; // benign qname pool (required when noise_count > 0)
    IpAddr resolver_ip = IpAddr::v4(192, 0, 2, 53);
    IpAddr auth_ip = IpAddr::v4(198, 51, 100, 10);
    IpAddr attacker_ip = IpAddr::v4(203, 0, 113, 66); // address the forged records point at
    std::uint32_t authentic_delay_ms = 1050; // genuine answer lands after the burst
    std::uint32_t benign_rate_pps = 350;     // benign-only arrival rate
    std::uint32_t frag_payload_bytes = 1480; // per-fragment IP payload
    DomainName oob_inject = DomainName::parse("bank.com"); // out-of-zone name to smuggle
};

/// One frame of the synthetic capture, exactly as it would sit in a file.
struct CaptureFrame {
    std::uint64_t ts_usec = 0;
    std::vector<std::uint8_t> bytes;
    Label label = Label::Benign;
};

struct GeneratedTraffic {
    std::vector<CaptureFrame> frames;      // full capture, time-ordered
    std::vector<DnsResponsePacket> stream; // the subset ingestion admits, decoded
    std::vector<Label> labels;             // parallel to stream
    std::vector<std::size_t> frame_index;  // stream[i] came from frames[frame_index[i]]
    std::uint64_t intended_attack_total = 0; // ASR denominator: what the attacker sent
};

/// Deterministic pronounceable domain pool for when no ranked-domain file is
/// supplied: distinct syllable names spread over a handful of TLDs.
inline std::vector<DomainName> synth_domains(std::size_t count, std::uint64_t seed) {
    static const char* const syl[] = {
        "ba", "ce", "di", "fo", "gu", "ha", "ki", "lo", "mu", "ne",
        "pa", "qi", "ro", "su", "ta", "ve", "wi", "xo", "yu", "za",
        "bri", "cla", "dro", "fen", "gor", "hul", "jam", "kip", "lun", "mor",
        "nex", "oli", "pra", "qua", "rin", "sol", "tur", "umi", "vor", "wex"};
    static const char* const tld[] = {"com", "net", "org", "io", "info"};
    Rng rng(derive_seed(seed, 0xD011));
    std::unordered_set<std::string> seen;
    std::vector<DomainName> out;
    out.reserve(count);
    while (out.size() < count) {
        std::string s;
        std::uint64_t n = 2 + rng.below(3);
        for (std::uint64_t i = 0; i < n; ++i) s += syl[rng.below(40)];
        s += '.';
        s += tld[rng.below(5)];
        if (seen.insert(s).second) out.push_back(DomainName::parse(s));
    }
    return out;
}

/// Read a ranked-domain file: one domain per line, optionally prefixed
/// "rank," (Tranco style). '#' lines and blanks are skipped.
inline std::vector<DomainName> load_domain_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open domain list: " + path);
    std::vector<DomainName> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::size_t comma = line.find(',');
        std::string name = comma == std::string::npos ? line : line.substr(comma + 1);
        if (name.empty()) continue;
        out.push_back(DomainName::parse(name));
    }
    return out;
}

namespace gen_detail {

struct Pending {
    std::uint64_t us = 0;
    std::uint64_t seq = 0;
    std::vector<std::uint8_t> bytes;
    Label label = Label::Benign;
};

// Section shapes observed in resolver-side response traffic, dealt out in
// fixed 46/26/22/6 proportions: answer only; answer + authority; no answer
// (negative response with SOA); all three sections.
enum class Shape { AnswerOnly, AnswerAuth, NoAnswer, AllThree };

inline std::vector<Shape> shape_deck(std::size_t n, Rng& rng) {
    std::size_t c0 = n * 46 / 100, c1 = n * 26 / 100, c2 = n * 22 / 100;
    std::vector<Shape> deck;
    deck.reserve(n);
    deck.insert(deck.end(), c0, Shape::AnswerOnly);
    deck.insert(deck.end(), c1, Shape::AnswerAuth);
    deck.insert(deck.end(), c2, Shape::NoAnswer);
    deck.insert(deck.end(), n - c0 - c1 - c2, Shape::AllThree);
    rng.shuffle(deck);
    return deck;
}

inline ResourceRecord a_record(const DomainName& name, const IpAddr& addr, std::uint32_t ttl) {
    ResourceRecord r;
    r.name = name;
    r.rtype = kTypeA;
    r.ttl = ttl;
    r.rdata.assign(addr.bytes.begin(), addr.bytes.begin() + 4);
    return r;
}

inline ResourceRecord ns_record(const DomainName& zone, const DomainName& target,
                                std::uint32_t ttl) {
    ResourceRecord r;
    r.name = zone;
    r.rtype = kTypeNS;
    r.ttl = ttl;
    r.rdata = wire::name_to_wire(target);
    return r;
}

inline ResourceRecord soa_record(const DomainName& zone, std::uint32_t serial,
                                 std::uint32_t ttl) {
    ResourceRecord r;
    r.name = zone;
    r.rtype = kTypeSOA;
    r.ttl = ttl;
    DomainName mname = DomainName::parse("ns1." + zone.text());
    DomainName rname = DomainName::parse("hostmaster." + zone.text());
    wire::ByteWriter w;
    wire::encode_name(w, mname);
    wire::encode_name(w, rname);
    w.u32(serial);
    w.u32(7200);
    w.u32(900);
    w.u32(604800);
    w.u32(300);
    r.rdata = std::move(w.buf());
    return r;
}

inline DomainName host_under(const DomainName& zone) {
    return DomainName::parse("ns1." + zone.text());
}

/// A benign-looking response whose every record name stays inside the
/// question's zone, so only the frequency rule can ever object to it.
inline DnsResponsePacket make_response(const DomainName& qname, std::uint16_t txid,
                                       std::uint16_t client_port, const IpAddr& src,
                                       const IpAddr& dst, Shape shape, const IpAddr& answer_ip,
                                       std::uint32_t ttl, Rng& r_data) {
    DnsResponsePacket p;
    p.src_ip = src;
    p.dst_ip = dst;
    p.src_port = 53;
    p.dst_port = client_port;
    p.txid = txid;
    p.qr_flag = true;
    p.aa = true;
    p.qname = qname;
    p.qtype = kTypeA;
    switch (shape) {
        case Shape::AnswerOnly:
            p.answers.push_back(a_record(qname, answer_ip, ttl));
            break;
        case Shape::AnswerAuth:
            p.answers.push_back(a_record(qname, answer_ip, ttl));
            p.authority.push_back(ns_record(qname, host_under(qname), ttl));
            break;
        case Shape::NoAnswer:
            p.authority.push_back(
                soa_record(qname, static_cast<std::uint32_t>(1 + r_data.below(1000000)), ttl));
            break;
        case Shape::AllThree: {
            p.answers.push_back(a_record(qname, answer_ip, ttl));
            DomainName host = host_under(qname);
            p.authority.push_back(ns_record(qname, host, ttl));
            IpAddr glue = IpAddr::v4(static_cast<std::uint8_t>(10),
                                     static_cast<std::uint8_t>(r_data.below(256)),
                                     static_cast<std::uint8_t>(r_data.below(256)),
                                     static_cast<std::uint8_t>(1 + r_data.below(254)));
            p.additional.push_back(a_record(host, glue, ttl));
            break;
        }
    }
    return p;
}

inline DnsResponsePacket make_query(const DomainName& qname, std::uint16_t txid,
                                    std::uint16_t client_port, const IpAddr& src,
                                    const IpAddr& dst) {
    DnsResponsePacket p;
    p.src_ip = src;
    p.dst_ip = dst;
    p.src_port = client_port;
    p.dst_port = 53;
    p.txid = txid;
    p.qr_flag = false;
    p.aa = false;
    p.ra = false;
    p.qname = qname;
    p.qtype = kTypeA;
    return p;
}

inline IpAddr draw_ip(Rng& r) {
    return IpAddr::v4(static_cast<std::uint8_t>(1 + r.below(223)),
                      static_cast<std::uint8_t>(r.below(256)),
                      static_cast<std::uint8_t>(r.below(256)),
                      static_cast<std::uint8_t>(1 + r.below(254)));
}

inline std::uint32_t draw_ttl(Rng& r) {
    static const std::uint32_t choices[] = {60, 300, 900, 3600};
    return choices[r.below(4)];
}

/// j-th distinct benign qname: the pool itself, then numbered hosts under
/// pool entries once the pool runs out.
inline DomainName nth_name(const std::vector<DomainName>& pool, std::size_t j) {
    if (j < pool.size()) return pool[j];
    return DomainName::parse("n" + std::to_string(j) + "." + pool[j % pool.size()].text());
}

} // namespace gen_detail

/**
 * Synthesize one scenario. The capture holds every frame (queries included);
 * `stream`/`labels` hold what admission control lets through to the engine,
 * in the same order a reader would produce from the written capture.
 *
 * Scenarios:
 *  - SAttack: one resolver query races 65,535 spoofed responses (all TXIDs
 *    but the right one) spread over the burst window; the genuine response
 *    arrives after it.
 *  - Interleaved: SAttack plus `noise_count` benign responses for distinct
 *    domains mixed through the same burst.
 *  - FragAttack: forged non-first fragments sweeping the IPID space, then
 *    the genuine two-fragment response.
 *  - OobAttack: compliant responses, then one response smuggling a record
 *    for an unrelated zone in its additional section.
 *  - BenignOnly: 1–2 responses per distinct domain at a steady rate with a
 *    measured mix of section shapes.
 */
inline GeneratedTraffic generate(const ScenarioSpec& spec) {
    using namespace gen_detail;
    bool wants_noise = (spec.kind == ScenarioKind::Interleaved && spec.noise_count > 0) ||
                       (spec.kind == ScenarioKind::BenignOnly && spec.noise_count > 0) ||
                       spec.kind == ScenarioKind::OobAttack;
    if (wants_noise && spec.noise_domains.empty())
        throw Error(ErrorKind::MissingDomainList, "scenario needs a benign domain pool");
    if ((spec.kind == ScenarioKind::SAttack || spec.kind == ScenarioKind::Interleaved) &&
        spec.attack_count > 65535)
        throw Error(ErrorKind::IoError, "TXID sweep cannot exceed 65,535 distinct IDs");

    Rng r_time(derive_seed(spec.seed, 1));
    Rng r_id(derive_seed(spec.seed, 2));
    Rng r_shape(derive_seed(spec.seed, 3));
    Rng r_data(derive_seed(spec.seed, 4));

    std::vector<Pending> pending;
    std::uint64_t seq = 0;
    auto push = [&](std::uint64_t us, std::vector<std::uint8_t> bytes, Label label) {
        pending.push_back(Pending{us, seq++, std::move(bytes), label});
    };
    auto push_pkt = [&](std::uint64_t us, const DnsResponsePacket& p, Label label) {
        push(us, encode_response(p), label);
    };

    GeneratedTraffic out;
    const std::uint64_t window_us = static_cast<std::uint64_t>(spec.attack_window_ms) * 1000;

    switch (spec.kind) {
        case ScenarioKind::SAttack:
        case ScenarioKind::Interleaved: {
            const std::uint16_t real_txid = static_cast<std::uint16_t>(spec.attack_count);
            const std::uint16_t eport = static_cast<std::uint16_t>(r_id.range(1024, 65535));
            push_pkt(0, make_query(spec.attack_domain, real_txid, eport, spec.resolver_ip,
                                   spec.auth_ip),
                     Label::Benign);

            std::vector<std::uint16_t> txids(spec.attack_count);
            for (std::uint32_t i = 0; i < spec.attack_count; ++i)
                txids[i] = static_cast<std::uint16_t>(i);
            r_id.shuffle(txids);
            for (std::uint32_t i = 0; i < spec.attack_count; ++i) {
                std::uint64_t us =
                    1000 + (spec.attack_count > 1
                                ? static_cast<std::uint64_t>(i) * window_us / spec.attack_count
                                : 0);
                DnsResponsePacket p =
                    make_response(spec.attack_domain, txids[i], eport, spec.auth_ip,
                                  spec.resolver_ip, Shape::AnswerOnly, spec.attacker_ip, 3600,
                                  r_data);
                push_pkt(us, p, Label::Attack);
            }

            if (spec.kind == ScenarioKind::Interleaved) {
                std::vector<Shape> deck = shape_deck(spec.noise_count, r_shape);
                for (std::uint32_t j = 0; j < spec.noise_count; ++j) {
                    DomainName qname = nth_name(spec.noise_domains, j);
                    std::uint64_t us = 1000 + r_time.below(window_us);
                    std::uint16_t txid = static_cast<std::uint16_t>(r_id.below(65536));
                    std::uint16_t port = static_cast<std::uint16_t>(r_id.range(1024, 65535));
                    IpAddr served = draw_ip(r_data);
                    std::uint32_t ttl = draw_ttl(r_data);
                    push_pkt(us >= 300 ? us - 300 : 0,
                             make_query(qname, txid, port, spec.resolver_ip, spec.auth_ip),
                             Label::Benign);
                    push_pkt(us,
                             make_response(qname, txid, port, spec.auth_ip, spec.resolver_ip,
                                           deck[j], served, ttl, r_data),
                             Label::Benign);
                }
            }

            DnsResponsePacket real =
                make_response(spec.attack_domain, real_txid, eport, spec.auth_ip,
                              spec.resolver_ip, Shape::AnswerOnly,
                              IpAddr::v4(198, 51, 100, 25), 3600, r_data);
            push_pkt(static_cast<std::uint64_t>(spec.authentic_delay_ms) * 1000, real,
                     Label::Benign);
            out.intended_attack_total = spec.attack_count;
            break;
        }

        case ScenarioKind::FragAttack: {
            const std::uint16_t txid = static_cast<std::uint16_t>(r_id.below(65536));
            const std::uint16_t eport = static_cast<std::uint16_t>(r_id.range(1024, 65535));
            push_pkt(0, make_query(spec.attack_domain, txid, eport, spec.resolver_ip,
                                   spec.auth_ip),
                     Label::Benign);

            // A response large enough to need two fragments at the configured
            // split: many A records for the same name.
            auto big = [&](const IpAddr& addr) {
                DnsResponsePacket p =
                    make_response(spec.attack_domain, txid, eport, spec.auth_ip,
                                  spec.resolver_ip, Shape::AnswerOnly, addr, 3600, r_data);
                while (encode_dns(p).size() + wire::kUdpHeader <= spec.frag_payload_bytes)
                    p.answers.push_back(a_record(spec.attack_domain, addr, 3600));
                for (int extra = 0; extra < 10; ++extra)
                    p.answers.push_back(a_record(spec.attack_domain, addr, 3600));
                return encode_response(p);
            };

            std::vector<std::uint8_t> forged_frame = big(spec.attacker_ip);
            std::vector<std::uint16_t> ipids(spec.attack_count);
            for (std::uint32_t i = 0; i < spec.attack_count; ++i)
                ipids[i] = static_cast<std::uint16_t>(i);
            r_id.shuffle(ipids);
            for (std::uint32_t i = 0; i < spec.attack_count; ++i) {
                std::uint64_t us =
                    1000 + (spec.attack_count > 1
                                ? static_cast<std::uint64_t>(i) * window_us / spec.attack_count
                                : 0);
                auto frags = fragment_ipv4(forged_frame, spec.frag_payload_bytes, ipids[i]);
                push(us, std::move(frags[1]), Label::Attack);
            }

            auto legit_frags = fragment_ipv4(big(IpAddr::v4(198, 51, 100, 25)),
                                             spec.frag_payload_bytes, 65535);
            std::uint64_t legit_us = 450000;
            for (auto& f : legit_frags) {
                push(legit_us, std::move(f), Label::Benign);
                legit_us += 50;
            }
            out.intended_attack_total = spec.attack_count;
            break;
        }

        case ScenarioKind::OobAttack: {
            std::vector<Shape> deck = shape_deck(3, r_shape);
            for (std::size_t j = 0; j < 3; ++j) {
                DomainName qname = nth_name(spec.noise_domains, j);
                std::uint64_t us = 100000 * (j + 1);
                std::uint16_t txid = static_cast<std::uint16_t>(r_id.below(65536));
                std::uint16_t port = static_cast<std::uint16_t>(r_id.range(1024, 65535));
                IpAddr served = draw_ip(r_data);
                std::uint32_t ttl = draw_ttl(r_data);
                push_pkt(us - 300, make_query(qname, txid, port, spec.resolver_ip, spec.auth_ip),
                         Label::Benign);
                push_pkt(us,
                         make_response(qname, txid, port, spec.auth_ip, spec.resolver_ip,
                                       deck[j], served, ttl, r_data),
                         Label::Benign);
            }
            const std::uint16_t txid = static_cast<std::uint16_t>(r_id.below(65536));
            const std::uint16_t eport = static_cast<std::uint16_t>(r_id.range(1024, 65535));
            push_pkt(399700, make_query(spec.attack_domain, txid, eport, spec.resolver_ip,
                                        spec.auth_ip),
                     Label::Benign);
            DnsResponsePacket evil =
                make_response(spec.attack_domain, txid, eport, spec.auth_ip, spec.resolver_ip,
                              Shape::AnswerOnly, spec.attacker_ip, 3600, r_data);
            evil.additional.push_back(a_record(spec.oob_inject, spec.attacker_ip, 3600));
            push_pkt(400000, evil, Label::Attack);
            out.intended_attack_total = 1;
            break;
        }

        case ScenarioKind::BenignOnly: {
            if (spec.noise_count == 0) break;
            const std::uint64_t duration_us =
                static_cast<std::uint64_t>(spec.noise_count) * 1000000 /
                std::max<std::uint32_t>(1, spec.benign_rate_pps);
            std::vector<std::uint64_t> arrivals(spec.noise_count);
            for (auto& a : arrivals) a = r_time.below(std::max<std::uint64_t>(1, duration_us));
            std::sort(arrivals.begin(), arrivals.end());

            // 1–2 responses per distinct name: ~15% of packets are a repeat
            // of an earlier name, the rest are first sightings.
            std::size_t repeats = spec.noise_count * 15 / 100;
            std::size_t distinct = spec.noise_count - repeats;
            std::vector<DomainName> items;
            items.reserve(spec.noise_count);
            for (std::size_t j = 0; j < distinct; ++j)
                items.push_back(nth_name(spec.noise_domains, j));
            std::vector<std::size_t> order(distinct);
            for (std::size_t j = 0; j < distinct; ++j) order[j] = j;
            r_id.shuffle(order);
            for (std::size_t j = 0; j < repeats; ++j) items.push_back(items[order[j]]);
            r_id.shuffle(items);

            std::vector<Shape> deck = shape_deck(spec.noise_count, r_shape);
            for (std::size_t i = 0; i < items.size(); ++i) {
                std::uint16_t txid = static_cast<std::uint16_t>(r_id.below(65536));
                std::uint16_t port = static_cast<std::uint16_t>(r_id.range(1024, 65535));
                std::uint64_t lead = 100 + r_time.below(700);
                IpAddr served = draw_ip(r_data);
                std::uint32_t ttl = draw_ttl(r_data);
                push_pkt(arrivals[i] >= lead ? arrivals[i] - lead : 0,
                         make_query(items[i], txid, port, spec.resolver_ip, spec.auth_ip),
                         Label::Benign);
                push_pkt(arrivals[i],
                         make_response(items[i], txid, port, spec.auth_ip, spec.resolver_ip,
                                       deck[i], served, ttl, r_data),
                         Label::Benign);
            }
            out.intended_attack_total = 0;
            break;
        }
    }

    std::stable_sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
        if (a.us != b.us) return a.us < b.us;
        return a.seq < b.seq;
    });

    out.frames.reserve(pending.size());
    for (std::size_t i = 0; i < pending.size(); ++i) {
        Pending& p = pending[i];
        IngestResult ing = ingest_frame(p.bytes, ts_from_usec(p.us), spec.resolver_ip);
        if (ing.outcome == IngestOutcome::Accepted) {
            out.stream.push_back(std::move(*ing.packet));
            out.labels.push_back(p.label);
            out.frame_index.push_back(i);
        }
        out.frames.push_back(CaptureFrame{p.us, std::move(p.bytes), p.label});
    }
    return out;
}

} // namespace dnscpm

#endif // DNSCPM_TRAFFICGEN_HPP
