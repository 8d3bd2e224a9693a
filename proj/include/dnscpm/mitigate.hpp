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
#ifndef DNSCPM_MITIGATE_HPP
#define DNSCPM_MITIGATE_HPP

#include "dnscpm/errors.hpp"
#include "dnscpm/packet.hpp"

namespace dnscpm {

/**
 * Rewrite a flagged response into its truncated form: TC set, all record
 * sections emptied, question preserved. The client reads TC as "retry over
 * TCP", where spoofing the answer is no longer practical, so suspicious data
 * is withheld without ever dropping a legitimate name resolution.
 *
 * The question section is what makes the retry possible; a packet whose
 * question never arrived (a flagged fragment cut short) cannot be rebuilt
 * and the caller has to fall back to dropping it.
 *
 * Idempotent: truncating a truncated response changes nothing.
 */
inline void truncate_response(DnsResponsePacket& pkt) {
    if (!pkt.has_question)
        throw Error(ErrorKind::MissingQuestion, "cannot truncate without a question");
    pkt.tc_flag = true;
    pkt.answers.clear();
    pkt.authority.clear();
    pkt.additional.clear();
    pkt.fragment.reset();
}

} // namespace dnscpm

#endif // DNSCPM_MITIGATE_HPP
