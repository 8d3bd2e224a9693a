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
#ifndef DNSCPM_DOMAIN_NAME_HPP
#define DNSCPM_DOMAIN_NAME_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dnscpm/errors.hpp"

namespace dnscpm {

/**
 * A fully qualified DNS name, held as a sequence of lowercase labels.
 *
 * Names are normalized at construction: ASCII uppercase is folded, a single
 * trailing root dot is accepted and stripped, and the usual wire limits are
 * enforced (labels of 1..63 bytes, at most 253 bytes of presentation form).
 * The root name is the empty label sequence.
 */
class DomainName {
public:
    DomainName() = default;

    /// Parse presentation form ("www.Example.COM" or "www.example.com.").
    static DomainName parse(std::string_view text) {
        if (text == "." || text.empty()) return DomainName();
        if (text.back() == '.') text.remove_suffix(1);
        std::vector<std::string> labels;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i == text.size() || text[i] == '.') {
                if (i == start)
                    throw Error(ErrorKind::InvalidName, "empty label in name");
                labels.emplace_back(text.substr(start, i - start));
                start = i + 1;
            }
        }
        return from_labels(std::move(labels));
    }

    /// Assemble from already-split labels (wire decode path).
    static DomainName from_labels(std::vector<std::string> labels) {
        std::size_t presentation = labels.empty() ? 0 : labels.size() - 1;
        for (auto& label : labels) {
            if (label.empty() || label.size() > 63)
                throw Error(ErrorKind::InvalidName, "label length out of range");
            presentation += label.size();
            for (char& c : label)
                if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        if (presentation > 253)
            throw Error(ErrorKind::InvalidName, "name longer than 253 bytes");
        DomainName name;
        name.labels_ = std::move(labels);
        name.text_.reserve(presentation);
        for (std::size_t i = 0; i < name.labels_.size(); ++i) {
            if (i) name.text_ += '.';
            name.text_ += name.labels_[i];
        }
        return name;
    }

    const std::vector<std::string>& labels() const { return labels_; }

    /// Cached lowercase presentation form, without the root dot. Root is "".
    const std::string& text() const { return text_; }

    bool empty() const { return labels_.empty(); }
    std::size_t label_count() const { return labels_.size(); }

    /// Name with the leftmost label removed ("www.a.com" -> "a.com").
    DomainName parent() const {
        if (labels_.empty()) return DomainName();
        return from_labels({labels_.begin() + 1, labels_.end()});
    }

    bool operator==(const DomainName& other) const { return labels_ == other.labels_; }
    bool operator!=(const DomainName& other) const { return !(*this == other); }

private:
    std::vector<std::string> labels_;
    std::string text_;
};

/**
 * Bailiwick test: true iff origin's label sequence is a suffix of domain's
 * label sequence. Whole labels only, so "ample.com" is not within
 * "example.com" even though it is a byte suffix. Every name is within the
 * bailiwick of the root (empty origin).
 */
inline bool is_within_bailiwick(const DomainName& domain, const DomainName& origin) {
    const auto& d = domain.labels();
    const auto& o = origin.labels();
    if (o.size() > d.size()) return false;
    for (std::size_t i = 0; i < o.size(); ++i)
        if (d[d.size() - 1 - i] != o[o.size() - 1 - i]) return false;
    return true;
}

} // namespace dnscpm

#endif // DNSCPM_DOMAIN_NAME_HPP
