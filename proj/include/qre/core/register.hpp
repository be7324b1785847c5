// Copyright 2026 The qre Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qre/errors.hpp"

namespace qre {

/// Ordered list of named qubits.
///
/// Basis index convention: the leftmost label is the most significant bit,
/// so the ket |A B a b d1 d2> read left to right is the binary expansion of
/// its index in the state vector.
class QubitRegister {
  public:
    QubitRegister() = default;

    QubitRegister(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i].empty()) {
                throw LabelError("qubit label must be nonempty");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (labels_[i] == labels_[j]) {
                    throw LabelError("duplicate qubit label '" + labels_[i] + "'");
                }
            }
        }
        if (labels_.size() > 20) {
            throw SizeError("register of " + std::to_string(labels_.size()) + " qubits is too large");
        }
    }

    QubitRegister(std::initializer_list<std::string> labels)
        : QubitRegister(std::vector<std::string>(labels)) {}

    std::size_t size() const { return labels_.size(); }
    std::size_t dim() const { return std::size_t{1} << labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    bool contains(const std::string& label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    /// Position of `label` counted from the left.
    std::size_t position(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw LabelError("unknown qubit label '" + label + "'");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    }

    /// Bit index (0 = least significant) of the qubit at `position`.
    std::size_t bit_of_position(std::size_t position) const { return labels_.size() - 1 - position; }

    std::size_t bit(const std::string& label) const { return bit_of_position(position(label)); }

    /// Register holding only `keep`, in this register's order.
    QubitRegister subset(std::span<const std::string> keep) const {
        std::vector<std::string> out;
        for (const auto& l : labels_) {
            if (std::find(keep.begin(), keep.end(), l) != keep.end()) {
                out.push_back(l);
            }
        }
        return QubitRegister(std::move(out));
    }

    /// Register with `drop` removed.
    QubitRegister without(std::span<const std::string> drop) const {
        std::vector<std::string> out;
        for (const auto& l : labels_) {
            if (std::find(drop.begin(), drop.end(), l) == drop.end()) {
                out.push_back(l);
            }
        }
        return QubitRegister(std::move(out));
    }

    friend QubitRegister concat(const QubitRegister& a, const QubitRegister& b) {
        std::vector<std::string> out = a.labels_;
        for (const auto& l : b.labels_) {
            if (a.contains(l)) {
                throw LabelError("label collision on '" + l + "'");
            }
            out.push_back(l);
        }
        return QubitRegister(std::move(out));
    }

    bool operator==(const QubitRegister&) const = default;

  private:
    std::vector<std::string> labels_;
};

namespace detail {

/// Maps full-register indices onto (selected, rest) index pairs for a subset of qubits.
class BitSplit {
  public:
    BitSplit(const QubitRegister& reg, std::span<const std::string> selected) {
        for (std::size_t p = 0; p < reg.size(); ++p) {
            bool is_sel = std::find(selected.begin(), selected.end(), reg.label(p)) != selected.end();
            (is_sel ? sel_bits_ : rest_bits_).push_back(reg.bit_of_position(p));
        }
        for (const auto& s : selected) {
            reg.position(s);
        }
    }

    std::size_t selected_count() const { return sel_bits_.size(); }
    std::size_t rest_count() const { return rest_bits_.size(); }

    std::size_t selected_index(std::size_t full) const { return gather(full, sel_bits_); }
    std::size_t rest_index(std::size_t full) const { return gather(full, rest_bits_); }

    std::size_t compose(std::size_t sel, std::size_t rest) const {
        return scatter(sel, sel_bits_) | scatter(rest, rest_bits_);
    }

  private:
    // bits are stored most-significant first, matching register order
    static std::size_t gather(std::size_t full, const std::vector<std::size_t>& bits) {
        std::size_t out = 0;
        for (std::size_t b : bits) {
            out = (out << 1) | ((full >> b) & 1u);
        }
        return out;
    }
    static std::size_t scatter(std::size_t packed, const std::vector<std::size_t>& bits) {
        std::size_t out = 0;
        std::size_t k = bits.size();
        for (std::size_t b : bits) {
            --k;
            out |= ((packed >> k) & 1u) << b;
        }
        return out;
    }

    std::vector<std::size_t> sel_bits_;
    std::vector<std::size_t> rest_bits_;
};

}  // namespace detail

}  // namespace qre
