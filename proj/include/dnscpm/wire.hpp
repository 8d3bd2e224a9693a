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
#ifndef DNSCPM_WIRE_HPP
#define DNSCPM_WIRE_HPP

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "dnscpm/errors.hpp"
#include "dnscpm/packet.hpp"

namespace dnscpm {

/// Capture timestamps are stored as (sec, usec); both the generator and the
/// reader go through this one conversion so replayed doubles compare equal.
inline double ts_from_usec(std::uint64_t usec) {
    return static_cast<double>(usec / 1000000) + static_cast<double>(usec % 1000000) * 1e-6;
}

namespace wire {

constexpr std::size_t kEtherHeader = 14;
constexpr std::uint16_t kEtherIPv4 = 0x0800;
constexpr std::uint16_t kEtherIPv6 = 0x86DD;
constexpr std::size_t kIpv4Header = 20;
constexpr std::size_t kIpv6Header = 40;
constexpr std::size_t kUdpHeader = 8;
constexpr std::size_t kDnsHeader = 12;
constexpr std::uint8_t kProtoUdp = 17;

inline const std::uint8_t kSrcMac[6] = {0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
inline const std::uint8_t kDstMac[6] = {0x02, 0x00, 0x00, 0x00, 0x00, 0x02};

class ByteReader {
public:
    ByteReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}
    explicit ByteReader(std::span<const std::uint8_t> s) : data_(s.data()), size_(s.size()) {}

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return size_ - pos_; }
    const std::uint8_t* data() const { return data_; }
    std::size_t size() const { return size_; }

    void seek(std::size_t p) {
        if (p > size_) throw Error(ErrorKind::MalformedPacket, "seek past end");
        pos_ = p;
    }

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = (static_cast<std::uint32_t>(data_[pos_]) << 24) |
                          (static_cast<std::uint32_t>(data_[pos_ + 1]) << 16) |
                          (static_cast<std::uint32_t>(data_[pos_ + 2]) << 8) |
                          static_cast<std::uint32_t>(data_[pos_ + 3]);
        pos_ += 4;
        return v;
    }
    void bytes(std::uint8_t* out, std::size_t n) {
        need(n);
        std::memcpy(out, data_ + pos_, n);
        pos_ += n;
    }
    void skip(std::size_t n) {
        need(n);
        pos_ += n;
    }

private:
    void need(std::size_t n) const {
        if (size_ - pos_ < n) throw Error(ErrorKind::MalformedPacket, "message truncated");
    }

    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

class ByteWriter {
public:
    std::vector<std::uint8_t>& buf() { return buf_; }
    const std::vector<std::uint8_t>& buf() const { return buf_; }
    std::size_t size() const { return buf_.size(); }

    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v));
    }
    void u32(std::uint32_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 24));
        buf_.push_back(static_cast<std::uint8_t>(v >> 16));
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v));
    }
    void bytes(const std::uint8_t* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
    void patch_u16(std::size_t at, std::uint16_t v) {
        buf_[at] = static_cast<std::uint8_t>(v >> 8);
        buf_[at + 1] = static_cast<std::uint8_t>(v);
    }

private:
    std::vector<std::uint8_t> buf_;
};

/// RFC 1071 ones-complement sum over a byte range, zero-padded to even length.
inline std::uint32_t checksum_add(std::uint32_t sum, const std::uint8_t* p, std::size_t n) {
    for (std::size_t i = 0; i + 1 < n; i += 2)
        sum += static_cast<std::uint32_t>((p[i] << 8) | p[i + 1]);
    if (n & 1) sum += static_cast<std::uint32_t>(p[n - 1] << 8);
    return sum;
}

inline std::uint16_t checksum_fold(std::uint32_t sum) {
    while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
    return static_cast<std::uint16_t>(~sum);
}

/**
 * Decode a name at reader position inside `msg` (the whole DNS message, for
 * compression offsets). Pointers must aim strictly before the byte they sit
 * on, which both matches sane encoders and guarantees termination.
 */
inline DomainName decode_name(ByteReader& r, std::span<const std::uint8_t> msg) {
    std::vector<std::string> labels;
    std::size_t decoded = 0; // expanded wire length guard
    ByteReader cur = r;
    bool jumped = false;
    std::size_t resume = 0;
    for (;;) {
        std::size_t here = cur.pos();
        std::uint8_t len = cur.u8();
        if ((len & 0xC0) == 0xC0) {
            std::uint16_t target = static_cast<std::uint16_t>(((len & 0x3F) << 8) | cur.u8());
            if (target >= here)
                throw Error(ErrorKind::MalformedPacket, "forward compression pointer");
            if (!jumped) {
                resume = cur.pos();
                jumped = true;
            }
            cur = ByteReader(msg);
            cur.seek(target);
            continue;
        }
        if (len & 0xC0) throw Error(ErrorKind::MalformedPacket, "reserved label type");
        decoded += 1 + len;
        if (decoded > 255) throw Error(ErrorKind::MalformedPacket, "name too long");
        if (len == 0) break;
        std::string label(len, '\0');
        cur.bytes(reinterpret_cast<std::uint8_t*>(label.data()), len);
        labels.push_back(std::move(label));
    }
    r.seek(jumped ? resume : cur.pos());
    return DomainName::from_labels(std::move(labels));
}

inline void encode_name(ByteWriter& w, const DomainName& name) {
    for (const auto& label : name.labels()) {
        w.u8(static_cast<std::uint8_t>(label.size()));
        w.bytes(reinterpret_cast<const std::uint8_t*>(label.data()), label.size());
    }
    w.u8(0);
}

inline std::vector<std::uint8_t> name_to_wire(const DomainName& name) {
    ByteWriter w;
    encode_name(w, name);
    return w.buf();
}

/// True for record types whose rdata is a single domain name that may arrive
/// compressed and must be re-expanded before we store or re-emit it.
inline bool rdata_is_name(std::uint16_t rtype) {
    return rtype == kTypeNS || rtype == kTypeCNAME || rtype == kTypePTR;
}

inline ResourceRecord decode_record(ByteReader& r, std::span<const std::uint8_t> msg) {
    ResourceRecord rec;
    rec.name = decode_name(r, msg);
    rec.rtype = r.u16();
    rec.rclass = r.u16();
    rec.ttl = r.u32();
    std::uint16_t rdlen = r.u16();
    if (r.remaining() < rdlen) throw Error(ErrorKind::MalformedPacket, "rdata truncated");
    if (rdata_is_name(rec.rtype)) {
        std::size_t end = r.pos() + rdlen;
        DomainName target = decode_name(r, msg);
        if (r.pos() > end) throw Error(ErrorKind::MalformedPacket, "rdata name overruns rdlen");
        r.seek(end);
        rec.rdata = name_to_wire(target);
    } else {
        rec.rdata.resize(rdlen);
        r.bytes(rec.rdata.data(), rdlen);
    }
    return rec;
}

inline void encode_record(ByteWriter& w, const ResourceRecord& rec) {
    encode_name(w, rec.name);
    w.u16(rec.rtype);
    w.u16(rec.rclass);
    w.u32(rec.ttl);
    w.u16(static_cast<std::uint16_t>(rec.rdata.size()));
    w.bytes(rec.rdata.data(), rec.rdata.size());
}

/// Parse the DNS message strictly (full datagrams). Throws on any shortfall.
inline void decode_dns_strict(std::span<const std::uint8_t> dns, DnsResponsePacket& pkt) {
    ByteReader r(dns);
    pkt.txid = r.u16();
    std::uint16_t flags = r.u16();
    pkt.qr_flag = (flags & 0x8000) != 0;
    pkt.opcode = static_cast<std::uint8_t>((flags >> 11) & 0xF);
    pkt.aa = (flags & 0x0400) != 0;
    pkt.tc_flag = (flags & 0x0200) != 0;
    pkt.rd = (flags & 0x0100) != 0;
    pkt.ra = (flags & 0x0080) != 0;
    pkt.rcode = static_cast<std::uint8_t>(flags & 0xF);
    std::uint16_t qd = r.u16(), an = r.u16(), ns = r.u16(), ar = r.u16();
    if (!pkt.qr_flag) throw Error(ErrorKind::NotAResponse, "QR bit clear");
    if (qd == 0) throw Error(ErrorKind::MissingQuestion, "no question section");
    if (qd > 1) throw Error(ErrorKind::MalformedPacket, "multiple questions");
    pkt.has_question = true;
    pkt.qname = decode_name(r, dns);
    pkt.qtype = r.u16();
    pkt.qclass = r.u16();
    for (std::uint16_t i = 0; i < an; ++i) pkt.answers.push_back(decode_record(r, dns));
    for (std::uint16_t i = 0; i < ns; ++i) pkt.authority.push_back(decode_record(r, dns));
    for (std::uint16_t i = 0; i < ar; ++i) pkt.additional.push_back(decode_record(r, dns));
}

/// Parse as much of a first fragment's DNS payload as actually arrived:
/// header, then question, then records until one no longer fits.
inline void decode_dns_partial(std::span<const std::uint8_t> dns, DnsResponsePacket& pkt) {
    ByteReader r(dns);
    pkt.txid = r.u16();
    std::uint16_t flags = r.u16();
    pkt.qr_flag = (flags & 0x8000) != 0;
    pkt.opcode = static_cast<std::uint8_t>((flags >> 11) & 0xF);
    pkt.aa = (flags & 0x0400) != 0;
    pkt.tc_flag = (flags & 0x0200) != 0;
    pkt.rd = (flags & 0x0100) != 0;
    pkt.ra = (flags & 0x0080) != 0;
    pkt.rcode = static_cast<std::uint8_t>(flags & 0xF);
    std::uint16_t qd = r.u16(), an = r.u16(), ns = r.u16(), ar = r.u16();
    if (!pkt.qr_flag) throw Error(ErrorKind::NotAResponse, "QR bit clear");
    pkt.has_question = false;
    try {
        if (qd >= 1) {
            pkt.qname = decode_name(r, dns);
            pkt.qtype = r.u16();
            pkt.qclass = r.u16();
            pkt.has_question = true;
        }
        for (std::uint16_t i = 0; i < an; ++i) pkt.answers.push_back(decode_record(r, dns));
        for (std::uint16_t i = 0; i < ns; ++i) pkt.authority.push_back(decode_record(r, dns));
        for (std::uint16_t i = 0; i < ar; ++i) pkt.additional.push_back(decode_record(r, dns));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::MalformedPacket) throw; // keep best-effort scope narrow
    }
    return;
}

struct Ipv4Header {
    IpAddr src, dst;
    std::uint16_t total_len = 0;
    std::uint16_t ipid = 0;
    std::uint16_t frag_offset = 0; // 8-byte units
    bool mf = false;
    bool df = false;
    std::uint8_t proto = 0;
    std::size_t header_len = 0;
};

inline Ipv4Header decode_ipv4_header(ByteReader& r) {
    Ipv4Header h;
    std::uint8_t vihl = r.u8();
    if ((vihl >> 4) != 4) throw Error(ErrorKind::MalformedPacket, "not IPv4");
    h.header_len = static_cast<std::size_t>(vihl & 0xF) * 4;
    if (h.header_len < kIpv4Header) throw Error(ErrorKind::MalformedPacket, "bad IHL");
    r.u8(); // TOS
    h.total_len = r.u16();
    h.ipid = r.u16();
    std::uint16_t frag = r.u16();
    h.df = (frag & 0x4000) != 0;
    h.mf = (frag & 0x2000) != 0;
    h.frag_offset = frag & 0x1FFF;
    r.u8(); // TTL
    h.proto = r.u8();
    r.u16(); // header checksum (not verified on replay)
    r.bytes(h.src.bytes.data(), 4);
    r.bytes(h.dst.bytes.data(), 4);
    if (h.header_len > kIpv4Header) r.skip(h.header_len - kIpv4Header);
    return h;
}

} // namespace wire

/// Decode the domain name an NS/CNAME/PTR record points at.
inline DomainName rdata_target(const ResourceRecord& rec) {
    if (!wire::rdata_is_name(rec.rtype))
        throw Error(ErrorKind::MalformedPacket, "record type carries no name target");
    wire::ByteReader r(rec.rdata.data(), rec.rdata.size());
    return wire::decode_name(r, {rec.rdata.data(), rec.rdata.size()});
}

/**
 * Decode one captured Ethernet frame into a DnsResponsePacket.
 *
 * Throws:
 *  - NotAResponse for well-formed DNS with QR=0 (queries are the caller's
 *    filtering problem, not a parse defect);
 *  - MalformedPacket for anything structurally broken.
 *
 * Trailing IPv4 fragments decode to a transport-less packet whose only
 * payload is `fragment`; first fragments decode best-effort.
 */
inline DnsResponsePacket decode_response(std::span<const std::uint8_t> frame, double timestamp) {
    using namespace wire;
    ByteReader r(frame);
    if (frame.size() < kEtherHeader) throw Error(ErrorKind::MalformedPacket, "short frame");
    r.skip(12);
    std::uint16_t ethertype = r.u16();

    if (ethertype == kEtherIPv6) {
        // IPv6 carries no fragment header we honor, so only whole datagrams
        // decode here; the fragmentation rule never applies to them.
        std::uint32_t vtc = r.u32();
        if ((vtc >> 28) != 6) throw Error(ErrorKind::MalformedPacket, "bad IPv6 version");
        std::uint16_t payload_len = r.u16();
        std::uint8_t next_header = r.u8();
        r.u8(); // hop limit
        DnsResponsePacket pkt;
        pkt.timestamp = timestamp;
        pkt.src_ip.v6 = pkt.dst_ip.v6 = true;
        r.bytes(pkt.src_ip.bytes.data(), 16);
        r.bytes(pkt.dst_ip.bytes.data(), 16);
        if (next_header != kProtoUdp) throw Error(ErrorKind::MalformedPacket, "not UDP");
        if (payload_len > r.remaining() || payload_len < kUdpHeader)
            throw Error(ErrorKind::MalformedPacket, "bad IPv6 payload length");
        pkt.raw_len = static_cast<std::uint32_t>(frame.size());
        pkt.src_port = r.u16();
        pkt.dst_port = r.u16();
        std::uint16_t udp_len = r.u16();
        r.u16(); // UDP checksum
        if (udp_len < kUdpHeader || udp_len > payload_len)
            throw Error(ErrorKind::MalformedPacket, "bad UDP length");
        std::size_t dns_len = udp_len - kUdpHeader;
        if (dns_len < kDnsHeader) throw Error(ErrorKind::MalformedPacket, "short DNS message");
        decode_dns_strict({frame.data() + r.pos(), dns_len}, pkt);
        return pkt;
    }
    if (ethertype != kEtherIPv4) throw Error(ErrorKind::MalformedPacket, "not IPv4");

    Ipv4Header ip = decode_ipv4_header(r);
    if (ip.proto != kProtoUdp) throw Error(ErrorKind::MalformedPacket, "not UDP");
    if (ip.total_len < ip.header_len) throw Error(ErrorKind::MalformedPacket, "bad IP length");
    std::size_t ip_payload = ip.total_len - ip.header_len;
    if (ip_payload > r.remaining()) throw Error(ErrorKind::MalformedPacket, "IP length overruns capture");

    DnsResponsePacket pkt;
    pkt.timestamp = timestamp;
    pkt.src_ip = ip.src;
    pkt.dst_ip = ip.dst;
    pkt.raw_len = static_cast<std::uint32_t>(frame.size());

    if (ip.frag_offset > 0) {
        pkt.fragment = FragmentInfo{ip.ipid, ip.frag_offset, ip.mf};
        pkt.has_question = false;
        pkt.qr_flag = true;
        return pkt;
    }

    if (ip_payload < kUdpHeader) throw Error(ErrorKind::MalformedPacket, "short UDP header");
    pkt.src_port = r.u16();
    pkt.dst_port = r.u16();
    std::uint16_t udp_len = r.u16();
    r.u16(); // UDP checksum (not verified on replay)

    if (ip.mf) {
        pkt.fragment = FragmentInfo{ip.ipid, 0, true};
        std::size_t avail = ip_payload - kUdpHeader;
        if (avail < kDnsHeader) throw Error(ErrorKind::MalformedPacket, "fragment lacks DNS header");
        decode_dns_partial({frame.data() + r.pos(), avail}, pkt);
        return pkt;
    }

    if (udp_len < kUdpHeader || udp_len > ip_payload)
        throw Error(ErrorKind::MalformedPacket, "bad UDP length");
    std::size_t dns_len = udp_len - kUdpHeader;
    if (dns_len < kDnsHeader) throw Error(ErrorKind::MalformedPacket, "short DNS message");
    decode_dns_strict({frame.data() + r.pos(), dns_len}, pkt);
    return pkt;
}

/// Serialize the DNS message alone (header through additional section).
inline std::vector<std::uint8_t> encode_dns(const DnsResponsePacket& pkt) {
    using namespace wire;
    ByteWriter w;
    w.u16(pkt.txid);
    std::uint16_t flags = 0;
    if (pkt.qr_flag) flags |= 0x8000;
    flags |= static_cast<std::uint16_t>((pkt.opcode & 0xF) << 11);
    if (pkt.aa) flags |= 0x0400;
    if (pkt.tc_flag) flags |= 0x0200;
    if (pkt.rd) flags |= 0x0100;
    if (pkt.ra) flags |= 0x0080;
    flags |= pkt.rcode & 0xF;
    w.u16(flags);
    w.u16(pkt.has_question ? 1 : 0);
    w.u16(static_cast<std::uint16_t>(pkt.answers.size()));
    w.u16(static_cast<std::uint16_t>(pkt.authority.size()));
    w.u16(static_cast<std::uint16_t>(pkt.additional.size()));
    if (pkt.has_question) {
        encode_name(w, pkt.qname);
        w.u16(pkt.qtype);
        w.u16(pkt.qclass);
    }
    for (const auto& rec : pkt.answers) encode_record(w, rec);
    for (const auto& rec : pkt.authority) encode_record(w, rec);
    for (const auto& rec : pkt.additional) encode_record(w, rec);
    return w.buf();
}

/**
 * Serialize a non-fragment packet to a complete Ethernet frame with computed
 * IP and UDP checksums. Names are written uncompressed. Fragmented frames are
 * produced by encoding the full datagram and passing it to fragment_ipv4().
 */
inline std::vector<std::uint8_t> encode_response(const DnsResponsePacket& pkt) {
    using namespace wire;
    if (pkt.src_ip.v6 || pkt.dst_ip.v6)
        throw Error(ErrorKind::MalformedPacket, "IPv6 framing not supported");
    if (pkt.is_trailing_fragment())
        throw Error(ErrorKind::MalformedPacket, "bare fragment has no message to encode");
    std::vector<std::uint8_t> dns = encode_dns(pkt);
    std::size_t udp_len = kUdpHeader + dns.size();
    std::size_t ip_len = kIpv4Header + udp_len;
    if (ip_len > 0xFFFF) throw Error(ErrorKind::MalformedPacket, "datagram too large");

    ByteWriter w;
    w.bytes(kDstMac, 6);
    w.bytes(kSrcMac, 6);
    w.u16(kEtherIPv4);

    std::size_t ip_at = w.size();
    w.u8(0x45);
    w.u8(0); // TOS
    w.u16(static_cast<std::uint16_t>(ip_len));
    w.u16(0); // IPID: unfragmented datagrams carry zero
    w.u16(0); // flags + offset
    w.u8(64); // TTL
    w.u8(kProtoUdp);
    std::size_t ip_ck_at = w.size();
    w.u16(0);
    w.bytes(pkt.src_ip.bytes.data(), 4);
    w.bytes(pkt.dst_ip.bytes.data(), 4);
    w.patch_u16(ip_ck_at, checksum_fold(checksum_add(0, w.buf().data() + ip_at, kIpv4Header)));

    std::size_t udp_at = w.size();
    w.u16(pkt.src_port);
    w.u16(pkt.dst_port);
    w.u16(static_cast<std::uint16_t>(udp_len));
    std::size_t udp_ck_at = w.size();
    w.u16(0);
    w.bytes(dns.data(), dns.size());

    std::uint32_t sum = 0;
    sum = checksum_add(sum, pkt.src_ip.bytes.data(), 4);
    sum = checksum_add(sum, pkt.dst_ip.bytes.data(), 4);
    std::uint8_t pseudo[4] = {0, kProtoUdp,
                              static_cast<std::uint8_t>(udp_len >> 8),
                              static_cast<std::uint8_t>(udp_len)};
    sum = checksum_add(sum, pseudo, 4);
    sum = checksum_add(sum, w.buf().data() + udp_at, udp_len);
    std::uint16_t udp_ck = checksum_fold(sum);
    if (udp_ck == 0) udp_ck = 0xFFFF;
    w.patch_u16(udp_ck_at, udp_ck);

    return w.buf();
}

/**
 * Split one encoded Ethernet/IPv4/UDP frame into fragments whose IP payloads
 * are at most `frag_payload_bytes` long (a multiple of 8). All fragments get
 * the supplied IPID; the last clears MF. Returns at least two frames.
 */
inline std::vector<std::vector<std::uint8_t>> fragment_ipv4(
    std::span<const std::uint8_t> frame, std::size_t frag_payload_bytes, std::uint16_t ipid) {
    using namespace wire;
    if (frag_payload_bytes == 0 || frag_payload_bytes % 8 != 0)
        throw Error(ErrorKind::MalformedPacket, "fragment size must be a positive multiple of 8");
    if (frame.size() < kEtherHeader + kIpv4Header)
        throw Error(ErrorKind::MalformedPacket, "short frame");
    ByteReader r(frame);
    r.skip(12);
    if (r.u16() != kEtherIPv4) throw Error(ErrorKind::MalformedPacket, "not IPv4");
    Ipv4Header ip = decode_ipv4_header(r);
    if (ip.frag_offset != 0 || ip.mf)
        throw Error(ErrorKind::MalformedPacket, "frame is already a fragment");
    std::size_t payload_len = ip.total_len - ip.header_len;
    std::size_t payload_at = kEtherHeader + ip.header_len;
    if (payload_at + payload_len > frame.size())
        throw Error(ErrorKind::MalformedPacket, "IP length overruns frame");
    if (payload_len <= frag_payload_bytes)
        throw Error(ErrorKind::MalformedPacket, "datagram fits in one fragment");

    std::vector<std::vector<std::uint8_t>> out;
    std::size_t off = 0;
    while (off < payload_len) {
        std::size_t chunk = payload_len - off;
        bool more = chunk > frag_payload_bytes;
        if (more) chunk = frag_payload_bytes;

        ByteWriter w;
        w.bytes(frame.data(), 12);
        w.u16(kEtherIPv4);
        std::size_t ip_at = w.size();
        w.u8(0x45);
        w.u8(0);
        w.u16(static_cast<std::uint16_t>(kIpv4Header + chunk));
        w.u16(ipid);
        std::uint16_t frag_word = static_cast<std::uint16_t>(off / 8);
        if (more) frag_word |= 0x2000;
        w.u16(frag_word);
        w.u8(64);
        w.u8(kProtoUdp);
        std::size_t ck_at = w.size();
        w.u16(0);
        w.bytes(ip.src.bytes.data(), 4);
        w.bytes(ip.dst.bytes.data(), 4);
        w.patch_u16(ck_at, checksum_fold(checksum_add(0, w.buf().data() + ip_at, kIpv4Header)));
        w.bytes(frame.data() + payload_at + off, chunk);
        out.push_back(std::move(w.buf()));
        off += chunk;
    }
    return out;
}

} // namespace dnscpm

#endif // DNSCPM_WIRE_HPP
