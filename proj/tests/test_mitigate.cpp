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

#include "dnscpm/mitigate.hpp"
#include "dnscpm/packet.hpp"

using namespace dnscpm;

namespace {

DnsResponsePacket flagged_packet() {
    DnsResponsePacket p;
    p.timestamp = 3.5;
    p.src_ip = IpAddr::v4(198, 51, 100, 10);
    p.dst_ip = IpAddr::v4(192, 0, 2, 53);
    p.src_port = 53;
    p.dst_port = 40000;
    p.txid = 77;
    p.qname = DomainName::parse("victim.com");
    ResourceRecord a;
    a.name = p.qname;
    a.rtype = kTypeA;
    a.ttl = 600;
    a.rdata = {203, 0, 113, 66};
    p.answers.push_back(a);
    p.authority.push_back(a);
    p.additional.push_back(a);
    p.raw_len = 999;
    return p;
}

} // namespace

TEST_CASE("truncation keeps the question and sheds every record") {
    DnsResponsePacket p = flagged_packet();
    truncate_response(p);
    CHECK(p.tc_flag);
    CHECK(p.answers.empty());
    CHECK(p.authority.empty());
    CHECK(p.additional.empty());
    CHECK(p.has_question);
    CHECK(p.qname == DomainName::parse("victim.com"));
    CHECK(p.txid == 77);
    CHECK(p.src_port == 53);
    CHECK(p.dst_port == 40000);
    CHECK(p.timestamp == 3.5);
    CHECK(p.raw_len == 999); // observed capture length is history, not state
}

TEST_CASE("truncating a first fragment leaves a whole, sendable reply") {
    DnsResponsePacket p = flagged_packet();
    p.fragment = FragmentInfo{31337, 0, true};
    truncate_response(p);
    CHECK(p.tc_flag);
    CHECK_FALSE(p.fragment.has_value());
}

TEST_CASE("truncation is idempotent") {
    DnsResponsePacket p = flagged_packet();
    truncate_response(p);
    DnsResponsePacket once = p;
    truncate_response(p);
    CHECK(p == once);
}

TEST_CASE("a packet without a question cannot be truncated into a reply") {
    DnsResponsePacket p;
    p.has_question = false;
    try {
        truncate_response(p);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MissingQuestion);
    }
}
