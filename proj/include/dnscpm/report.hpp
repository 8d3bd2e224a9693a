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
#ifndef DNSCPM_REPORT_HPP
#define DNSCPM_REPORT_HPP

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnscpm/cost_model.hpp"
#include "dnscpm/engine.hpp"
#include "dnscpm/errors.hpp"
#include "dnscpm/format.hpp"
#include "dnscpm/packet.hpp"

namespace dnscpm {

namespace report_detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot create output file: " + path);
    return out;
}

} // namespace report_detail

/// One row per processed packet: `packet_index,timestamp,qname,action,rule`.
/// Forwarded rows leave the rule column empty; question-less fragments leave
/// qname empty.
inline void write_verdicts_csv(const std::string& path,
                               const std::vector<DnsResponsePacket>& stream,
                               const std::vector<Verdict>& verdicts) {
    if (stream.size() != verdicts.size())
        throw Error(ErrorKind::IoError, "verdict list does not match stream");
    std::ofstream out = report_detail::open_out(path);
    out << "packet_index,timestamp,qname,action,rule\n";
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const Verdict& v = verdicts[i];
        const DnsResponsePacket& p = stream[i];
        out << v.packet_index << ',' << format_timestamp(p.timestamp) << ','
            << (p.has_question ? p.qname.text() : std::string()) << ','
            << action_name(v.action) << ','
            << (v.fired_rule ? rule_name(*v.fired_rule) : "") << '\n';
    }
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

inline void write_labels_csv(const std::string& path, const std::vector<Label>& labels) {
    std::ofstream out = report_detail::open_out(path);
    out << "packet_index,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << i << ',' << label_name(labels[i]) << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

/// Read a labels CSV produced by write_labels_csv (header required, indices
/// must be 0..n-1 in order).
inline std::vector<Label> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open labels file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorKind::IoError, "labels file is empty: " + path);
    std::vector<Label> labels;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorKind::IoError, "bad labels row: " + line);
        std::size_t idx = std::stoul(line.substr(0, comma));
        if (idx != labels.size())
            throw Error(ErrorKind::IoError, "labels file indices out of order");
        labels.push_back(parse_label(line.substr(comma + 1)));
    }
    return labels;
}

inline nlohmann::ordered_json metrics_to_json(const RunMetrics& m) {
    nlohmann::ordered_json j;
    j["total"] = m.total;
    j["forwarded"] = m.forwarded;
    j["truncated"] = m.truncated;
    j["dropped"] = m.dropped;
    j["malformed"] = m.malformed;
    j["per_rule"] = {{"R1", m.per_rule[0]}, {"R2", m.per_rule[1]}, {"R3", m.per_rule[2]}};
    if (m.first_flag_index)
        j["first_flag_index"] = *m.first_flag_index;
    else
        j["first_flag_index"] = nullptr;
    j["question_lost"] = m.question_lost;
    j["attack_total"] = m.attack_total;
    j["benign_total"] = m.benign_total;
    j["attack_forwarded"] = m.attack_forwarded;
    j["benign_flagged"] = m.benign_flagged;
    j["intended_attack_total"] = m.intended_attack_total;
    j["asr"] = m.asr;
    j["fp_rate"] = m.fp_rate;
    return j;
}

inline void write_metrics_json(const std::string& path, const RunMetrics& m) {
    std::ofstream out = report_detail::open_out(path);
    out << metrics_to_json(m).dump(2) << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

/// Sketch-geometry sweep results, one row per (width, depth) cell.
struct SweepCell {
    std::uint32_t width = 0;
    std::uint32_t depth = 0;
    std::uint32_t repeats = 0;
    double mean_fp = 0.0;
    double mean_asr = 0.0;
};

inline void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& cells) {
    std::ofstream out = report_detail::open_out(path);
    out << "w,d,repeats,fp_rate,asr\n";
    for (const SweepCell& c : cells)
        out << c.width << ',' << c.depth << ',' << c.repeats << ','
            << format_double(c.mean_fp) << ',' << format_double(c.mean_asr) << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

/// Resource-cost table, one row per (method, domain-count) pair. The memory
/// column carries each method's native unit, so a comment line up top states
/// the units explicitly.
inline void write_cost_csv(const std::string& path, const std::vector<CostReport>& rows) {
    std::ofstream out = report_detail::open_out(path);
    out << "# memory units: cms=bits, dws-hh=bits, ws=bytes\n";
    out << "method,N,memory,error,inference\n";
    for (const CostReport& r : rows)
        out << sketch_method_name(r.method) << ',' << r.domains << ',' << r.memory_text << ','
            << format_double(r.error) << ',' << format_double(r.inference) << '\n';
    if (!out) throw Error(ErrorKind::IoError, "write failed: " + path);
}

} // namespace dnscpm

#endif // DNSCPM_REPORT_HPP
