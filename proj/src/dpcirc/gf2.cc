// Copyright 2026 The dpcirc Authors
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

#include "dpcirc/gf2.h"

#include <stdexcept>
#include <utility>

namespace dpcirc {

BitVector::BitVector(size_t length) : length_(length), words_(words_for_bits(length), 0) {
}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (size_t j = 0; j < bits.size(); j++) {
        if (bits[j] == '1') {
            v.set(j, true);
        } else if (bits[j] != '0') {
            throw std::invalid_argument("BitVector::from_string: expected only '0' and '1'");
        }
    }
    return v;
}

void BitVector::set(size_t j, bool value) {
    uint64_t mask = uint64_t{1} << (j % kWordBits);
    if (value) {
        words_[j / kWordBits] |= mask;
    } else {
        words_[j / kWordBits] &= ~mask;
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    if (other.length_ != length_) {
        throw std::invalid_argument("BitVector: length mismatch in xor");
    }
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector result = *this;
    result ^= other;
    return result;
}

bool BitVector::any() const {
    for (uint64_t w : words_) {
        if (w) {
            return true;
        }
    }
    return false;
}

size_t BitVector::popcount() const {
    size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVector::dot(const BitVector &other) const {
    if (other.length_ != length_) {
        throw std::invalid_argument("BitVector: length mismatch in dot");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
        acc ^= words_[w] & other.words_[w];
    }
    return std::popcount(acc) & 1;
}

std::string BitVector::str() const {
    std::string out(length_, '0');
    for (size_t j = 0; j < length_; j++) {
        if (get(j)) {
            out[j] = '1';
        }
    }
    return out;
}

BitMatrix::BitMatrix(size_t n_rows, size_t n_cols) : n_rows_(n_rows), n_cols_(n_cols), rows_(n_rows, BitVector(n_cols)) {
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t k = 0; k < n; k++) {
        m.set(k, k, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
    size_t n_cols = rows.size() ? rows.begin()->size() : 0;
    BitMatrix m(rows.size(), n_cols);
    size_t r = 0;
    for (std::string_view text : rows) {
        if (text.size() != n_cols) {
            throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        }
        m.rows_[r++] = BitVector::from_string(text);
    }
    return m;
}

void BitMatrix::swap_rows(size_t a, size_t b) {
    std::swap(rows_[a], rows_[b]);
}

void BitMatrix::xor_row_into(size_t source, size_t target) {
    rows_[target] ^= rows_[source];
}

size_t rank_in_place(std::span<uint64_t> rows, size_t n_rows, size_t words_per_row) {
    // Each basis row is keyed by its lowest set bit. Reducing a candidate by the
    // basis row owning its lowest bit only ever raises that lowest bit, so every
    // candidate either vanishes or claims a fresh key.
    std::vector<uint32_t> owner(words_per_row * kWordBits, UINT32_MAX);
    size_t result = 0;
    for (size_t r = 0; r < n_rows; r++) {
        std::span<uint64_t> v = rows.subspan(r * words_per_row, words_per_row);
        size_t first_word = 0;
        while (true) {
            while (first_word < words_per_row && v[first_word] == 0) {
                first_word++;
            }
            if (first_word == words_per_row) {
                break;
            }
            size_t bit = first_word * kWordBits + std::countr_zero(v[first_word]);
            uint32_t b = owner[bit];
            if (b == UINT32_MAX) {
                owner[bit] = static_cast<uint32_t>(r);
                result++;
                break;
            }
            const uint64_t *basis = rows.data() + b * words_per_row;
            for (size_t w = first_word; w < words_per_row; w++) {
                v[w] ^= basis[w];
            }
        }
    }
    return result;
}

size_t rank(const BitMatrix &m) {
    size_t wpr = words_for_bits(m.cols());
    std::vector<uint64_t> buffer(m.rows() * wpr);
    for (size_t r = 0; r < m.rows(); r++) {
        auto words = m.row(r).words();
        std::copy(words.begin(), words.end(), buffer.begin() + r * wpr);
    }
    return rank_in_place(buffer, m.rows(), wpr);
}

RowReduction row_reduce(const BitMatrix &m) {
    RowReduction out{m, {}};
    BitMatrix &a = out.matrix;
    size_t next_row = 0;
    for (size_t c = 0; c < a.cols() && next_row < a.rows(); c++) {
        size_t pivot = next_row;
        while (pivot < a.rows() && !a.get(pivot, c)) {
            pivot++;
        }
        if (pivot == a.rows()) {
            continue;
        }
        a.swap_rows(pivot, next_row);
        for (size_t r = 0; r < a.rows(); r++) {
            if (r != next_row && a.get(r, c)) {
                a.xor_row_into(next_row, r);
            }
        }
        out.pivot_columns.push_back(c);
        next_row++;
    }
    return out;
}

BitMatrix restrict_columns(const BitMatrix &m, std::span<const size_t> cols) {
    for (size_t c : cols) {
        if (c >= m.cols()) {
            throw std::out_of_range("restrict_columns: column " + std::to_string(c) + " out of range for " +
                                    std::to_string(m.cols()) + " columns");
        }
    }
    BitMatrix out(m.rows(), cols.size());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t k = 0; k < cols.size(); k++) {
            if (m.get(r, cols[k])) {
                out.set(r, k, true);
            }
        }
    }
    return out;
}

}  // namespace dpcirc
