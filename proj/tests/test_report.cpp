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
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnscpm/engine.hpp"
#include "dnscpm/report.hpp"

using namespace dnscpm;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

DnsResponsePacket response_for(const std::string& qname, double ts) {
    DnsResponsePacket p;
    p.timestamp = ts;
    p.qname = DomainName::parse(qname);
    ResourceRecord a;
    a.name = p.qname;
    a.rtype = kTypeA;
    a.ttl = 60;
    a.rdata = {10, 0, 0, 1};
    p.answers.push_back(a);
    return p;
}

} // namespace

TEST_CASE("verdict rows carry index, time, name, action, and rule") {
    std::vector<DnsResponsePacket> stream;
    for (int i = 0; i < 7; ++i) stream.push_back(response_for("busy.com", 0.1 * (i + 1)));
    DnsResponsePacket frag;
    frag.timestamp = 2.0;
    frag.has_question = false;
    frag.fragment = FragmentInfo{1, 185, false};
    stream.push_back(frag);

    EngineConfig cfg;
    ProcessResult res = process(cfg, stream);

    TempFile f("verdicts_test.csv");
    write_verdicts_csv(f.path, stream, res.verdicts);
    std::string text = slurp(f.path);
    CHECK(text ==
          "packet_index,timestamp,qname,action,rule\n"
          "0,0.100000,busy.com,forward,\n"
          "1,0.200000,busy.com,forward,\n"
          "2,0.300000,busy.com,forward,\n"
          "3,0.400000,busy.com,forward,\n"
          "4,0.500000,busy.com,forward,\n"
          "5,0.600000,busy.com,truncate,R1\n"
          "6,0.700000,busy.com,truncate,R1\n"
          "7,2.000000,,drop,R2\n");

    SECTION("stream and verdict lists must agree") {
        stream.pop_back();
        CHECK_THROWS_AS(write_verdicts_csv(f.path, stream, res.verdicts), Error);
    }
}

TEST_CASE("labels round-trip through CSV") {
    std::vector<Label> labels = {Label::Benign, Label::Attack, Label::Attack, Label::Benign};
    TempFile f("labels_test.csv");
    write_labels_csv(f.path, labels);
    CHECK(slurp(f.path) ==
          "packet_index,label\n0,benign\n1,attack\n2,attack\n3,benign\n");
    CHECK(read_labels_csv(f.path) == labels);
}

TEST_CASE("label parsing rejects junk") {
    TempFile f("labels_bad.csv");
    {
        std::ofstream out(f.path);
        out << "packet_index,label\n0,benign\n1,suspicious\n";
    }
    CHECK_THROWS_AS(read_labels_csv(f.path), Error);

    {
        std::ofstream out(f.path);
        out << "packet_index,label\n5,benign\n";
    }
    CHECK_THROWS_AS(read_labels_csv(f.path), Error); // indices must be dense

    CHECK_THROWS_AS(read_labels_csv("no_such_labels.csv"), Error);
}

TEST_CASE("metrics serialize with stable field names") {
    std::vector<DnsResponsePacket> stream;
    std::vector<Label> labels;
    for (int i = 0; i < 8; ++i) {
        stream.push_back(response_for("flood.net", 0.01 * (i + 1)));
        labels.push_back(Label::Attack);
    }
    EngineConfig cfg;
    ProcessResult res = process(cfg, stream, &labels, 100);

    TempFile f("metrics_test.json");
    write_metrics_json(f.path, res.metrics);
    nlohmann::json j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["total"] == 8);
    CHECK(j["forwarded"] == 5);
    CHECK(j["truncated"] == 3);
    CHECK(j["dropped"] == 0);
    CHECK(j["per_rule"]["R1"] == 3);
    CHECK(j["per_rule"]["R2"] == 0);
    CHECK(j["per_rule"]["R3"] == 0);
    CHECK(j["first_flag_index"] == 5);
    CHECK(j["attack_total"] == 8);
    CHECK(j["attack_forwarded"] == 5);
    CHECK(j["intended_attack_total"] == 100);
    CHECK(j["asr"] == Catch::Approx(0.05));
    CHECK(j["fp_rate"] == 0.0);

    SECTION("absent first flag serializes as null") {
        RunMetrics empty;
        write_metrics_json(f.path, empty);
        nlohmann::json k = nlohmann::json::parse(slurp(f.path));
        CHECK(k["first_flag_index"].is_null());
    }
}

TEST_CASE("sweep cells write width-major CSV") {
    std::vector<SweepCell> cells = {
        {100, 2, 10, 0.394, 0.0001}, {100, 5, 10, 0.25, 0.0001}, {500, 2, 10, 0.0, 0.0001}};
    TempFile f("sweep_test.csv");
    write_sweep_csv(f.path, cells);
    CHECK(slurp(f.path) ==
          "w,d,repeats,fp_rate,asr\n"
          "100,2,10,0.394,0.0001\n"
          "100,5,10,0.25,0.0001\n"
          "500,2,10,0,0.0001\n");
}

TEST_CASE("cost table CSV states its units and all twelve rows") {
    TempFile f("cost_test.csv");
    write_cost_csv(f.path, cost_model_table());
    std::string text = slurp(f.path);
    CHECK(text.rfind("# memory units:", 0) == 0);
    CHECK(text.find("method,N,memory,error,inference\n") != std::string::npos);
    CHECK(text.find("cms,10,4000,") != std::string::npos);
    CHECK(text.find("dws-hh,10000,9.6K,") != std::string::npos);
    CHECK(text.find("ws,10,3.2,") != std::string::npos);
    CHECK(text.find("ws,10000,9.6K,") != std::string::npos);
    std::size_t rows = 0;
    for (char c : text)
        if (c == '\n') ++rows;
    CHECK(rows == 14); // comment + header + 12 data rows
}

TEST_CASE("writers surface file-system failures") {
    RunMetrics m;
    CHECK_THROWS_AS(write_metrics_json("no_dir_here/metrics.json", m), Error);
    CHECK_THROWS_AS(write_labels_csv("no_dir_here/labels.csv", {}), Error);
    std::vector<SweepCell> none;
    CHECK_THROWS_AS(write_sweep_csv("no_dir_here/sweep.csv", none), Error);
}
