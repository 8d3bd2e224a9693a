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
#ifndef DNSCPM_ERRORS_HPP
#define DNSCPM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dnscpm {

enum class ErrorKind {
    MalformedPacket,     // datagram cannot be decoded
    NotAResponse,        // DNS header has QR = 0
    MissingQuestion,     // question section unrecoverable, packet cannot be rebuilt
    BadCaptureHeader,    // capture file is not classic pcap (or is corrupt)
    UnsupportedLinkType, // capture link layer other than Ethernet
    UnsortedStream,      // packet timestamps regress
    MissingDomainList,   // generator asked for noise without a domain pool
    InvalidName,         // domain name fails presentation rules
    IoError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace dnscpm

#endif // DNSCPM_ERRORS_HPP
