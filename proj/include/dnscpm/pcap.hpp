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
#ifndef DNSCPM_PCAP_HPP
#define DNSCPM_PCAP_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "dnscpm/errors.hpp"
#include "dnscpm/ingest.hpp"
#include "dnscpm/packet.hpp"
#include "dnscpm/trafficgen.hpp"
#include "dnscpm/wire.hpp"

namespace dnscpm {

/// What came out of a capture file after admission control.
struct ReadResult {
    std::vector<DnsResponsePacket> packets; // accepted, in file order
    std::vector<std::size_t> capture_index; // packets[i] was record capture_index[i]
    std::size_t total_records = 0;
    std::size_t malformed = 0; // records that looked like DNS answers but failed to decode
    std::size_t filtered = 0;  // records admission control discarded
};

namespace pcap_detail {

constexpr std::uint32_t kMagicLE = 0xa1b2c3d4; // file byte order == host order here
constexpr std::uint32_t kMagicBE = 0xd4c3b2a1; // byte-swapped writer
constexpr std::uint32_t kLinktypeEthernet = 1;
constexpr std::uint32_t kMaxRecordLen = 1 << 20;

inline std::uint16_t swap16(std::uint16_t v) {
    return static_cast<std::uint16_t>((v >> 8) | (v << 8));
}

inline std::uint32_t swap32(std::uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0x0000ff00u) | ((v << 8) & 0x00ff0000u) | (v << 24);
}

struct FileReader {
    std::ifstream in;
    bool swapped = false;

    explicit FileReader(const std::string& path) : in(path, std::ios::binary) {
        if (!in) throw Error(ErrorKind::IoError, "cannot open capture: " + path);
    }

    bool u32(std::uint32_t& v) {
        unsigned char b[4];
        if (!in.read(reinterpret_cast<char*>(b), 4)) return false;
        v = static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
            (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
        if (swapped) v = swap32(v);
        return true;
    }
};

inline void put16(std::ofstream& out, std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(b, 2);
}

inline void put32(std::ofstream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>(v >> 24)};
    out.write(b, 4);
}

inline void write_header(std::ofstream& out) {
    put32(out, kMagicLE);
    put16(out, 2); // major
    put16(out, 4); // minor
    put32(out, 0); // thiszone
    put32(out, 0); // sigfigs
    put32(out, 65535); // snaplen
    put32(out, kLinktypeEthernet);
}

} // namespace pcap_detail

/**
 * Read a classic microsecond-resolution capture and run every record through
 * admission control. Only Ethernet link layer is handled. A header whose
 * magic is not the classic one (including the section header of the newer
 * block-based format) is rejected up front, as is a non-Ethernet link type
 * or a record cut short by EOF.
 */
inline ReadResult read_capture(const std::string& path, const IpAddr& resolver_ip) {
    using namespace pcap_detail;
    FileReader f(path);
    std::uint32_t magic = 0;
    if (!f.u32(magic)) throw Error(ErrorKind::BadCaptureHeader, "capture too short for header");
    if (magic == kMagicBE) {
        f.swapped = true;
    } else if (magic != kMagicLE) {
        throw Error(ErrorKind::BadCaptureHeader, "unrecognized capture magic");
    }
    std::uint32_t vmaj_vmin = 0, thiszone = 0, sigfigs = 0, snaplen = 0, linktype = 0;
    if (!f.u32(vmaj_vmin) || !f.u32(thiszone) || !f.u32(sigfigs) || !f.u32(snaplen) ||
        !f.u32(linktype))
        throw Error(ErrorKind::BadCaptureHeader, "capture too short for header");
    if (linktype != kLinktypeEthernet)
        throw Error(ErrorKind::UnsupportedLinkType,
                    "capture link type " + std::to_string(linktype) + " (need Ethernet)");

    ReadResult res;
    for (;;) {
        std::uint32_t sec = 0;
        if (!f.u32(sec)) break; // clean EOF between records
        std::uint32_t usec = 0, incl = 0, orig = 0;
        if (!f.u32(usec) || !f.u32(incl) || !f.u32(orig))
            throw Error(ErrorKind::BadCaptureHeader, "record header cut short");
        if (incl > kMaxRecordLen)
            throw Error(ErrorKind::BadCaptureHeader, "record length implausible");
        std::vector<std::uint8_t> bytes(incl);
        if (incl > 0 && !f.in.read(reinterpret_cast<char*>(bytes.data()), incl))
            throw Error(ErrorKind::BadCaptureHeader, "record body cut short");
        std::size_t idx = res.total_records++;
        double ts = ts_from_usec(static_cast<std::uint64_t>(sec) * 1000000 + usec);
        IngestResult ing = ingest_frame(bytes, ts, resolver_ip);
        switch (ing.outcome) {
            case IngestOutcome::Accepted:
                res.packets.push_back(std::move(*ing.packet));
                res.capture_index.push_back(idx);
                break;
            case IngestOutcome::Filtered: ++res.filtered; break;
            case IngestOutcome::Malformed: ++res.malformed; break;
        }
    }
    return res;
}

/// Write raw frames as a classic little-endian microsecond capture.
inline void write_capture(const std::string& path, const std::vector<CaptureFrame>& frames) {
    using namespace pcap_detail;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot create capture: " + path);
    write_header(out);
    for (const CaptureFrame& fr : frames) {
        put32(out, static_cast<std::uint32_t>(fr.ts_usec / 1000000));
        put32(out, static_cast<std::uint32_t>(fr.ts_usec % 1000000));
        put32(out, static_cast<std::uint32_t>(fr.bytes.size()));
        put32(out, static_cast<std::uint32_t>(fr.bytes.size()));
        out.write(reinterpret_cast<const char*>(fr.bytes.data()),
                  static_cast<std::streamsize>(fr.bytes.size()));
    }
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

/// Re-encode decoded packets and write them out; usable for the mitigated
/// output stream of a run.
inline void write_capture(const std::string& path,
                          const std::vector<DnsResponsePacket>& packets) {
    std::vector<CaptureFrame> frames;
    frames.reserve(packets.size());
    for (const DnsResponsePacket& p : packets) {
        CaptureFrame fr;
        fr.ts_usec = static_cast<std::uint64_t>(std::llround(p.timestamp * 1e6));
        fr.bytes = encode_response(p);
        frames.push_back(std::move(fr));
    }
    write_capture(path, frames);
}

} // namespace dnscpm

#endif // DNSCPM_PCAP_HPP
