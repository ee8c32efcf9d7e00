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

#ifndef DPCIRC_GF2_H
#define DPCIRC_GF2_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpcirc {

constexpr size_t kWordBits = 64;
constexpr size_t kNoBit = static_cast<size_t>(-1);

constexpr size_t words_for_bits(size_t bits) {
    return (bits + kWordBits - 1) / kWordBits;
}

/// A packed vector over GF(2). Bit j is stored in word j / 64 at position j % 64.
/// Storage bits past `size()` are always zero.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t length);

    /// Parses a string of '0'/'1' characters; character j becomes bit j.
    static BitVector from_string(std::string_view bits);

    size_t size() const {
        return length_;
    }
    bool get(size_t j) const {
        return (words_[j / kWordBits] >> (j % kWordBits)) & 1;
    }
    void set(size_t j, bool value);
    void flip(size_t j) {
        words_[j / kWordBits] ^= uint64_t{1} << (j % kWordBits);
    }

    /// Throws std::invalid_argument on length mismatch.
    BitVector &operator^=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;

    bool any() const;
    size_t popcount() const;
    /// Parity of the bitwise AND, i.e. the GF(2) dot product.
    bool dot(const BitVector &other) const;

    std::span<uint64_t> words() {
        return words_;
    }
    std::span<const uint64_t> words() const {
        return words_;
    }

    std::string str() const;

    bool operator==(const BitVector &other) const = default;

   private:
    size_t length_ = 0;
    std::vector<uint64_t> words_;
};

/// Row-major GF(2) matrix. Every row is a BitVector of length `cols()`.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(size_t n_rows, size_t n_cols);

    static BitMatrix identity(size_t n);
    /// Each string is one row; all strings must have equal length.
    static BitMatrix from_rows(std::initializer_list<std::string_view> rows);

    size_t rows() const {
        return n_rows_;
    }
    size_t cols() const {
        return n_cols_;
    }

    BitVector &row(size_t r) {
        return rows_[r];
    }
    const BitVector &row(size_t r) const {
        return rows_[r];
    }
    bool get(size_t r, size_t c) const {
        return rows_[r].get(c);
    }
    void set(size_t r, size_t c, bool value) {
        rows_[r].set(c, value);
    }

    void swap_rows(size_t a, size_t b);
    /// row(target) ^= row(source).
    void xor_row_into(size_t source, size_t target);

    bool operator==(const BitMatrix &other) const = default;

   private:
    size_t n_rows_ = 0;
    size_t n_cols_ = 0;
    std::vector<BitVector> rows_;
};

struct RowReduction {
    BitMatrix matrix;
    std::vector<size_t> pivot_columns;
};

/// GF(2) row rank.
size_t rank(const BitMatrix &m);

/// Reduced row-echelon form; zero rows are moved to the bottom.
RowReduction row_reduce(const BitMatrix &m);

/// Keeps only the listed columns, in the listed order. Throws std::out_of_range
/// for an index >= m.cols().
BitMatrix restrict_columns(const BitMatrix &m, std::span<const size_t> cols);

/// Rank of `n_rows` packed rows of `words_per_row` words each, stored back to back.
/// The buffer is used as scratch space and is left in echelon form.
size_t rank_in_place(std::span<uint64_t> rows, size_t n_rows, size_t words_per_row);

/// Index of the lowest set bit across a multi-word mask, or kNoBit when empty.
inline size_t lowest_set_bit(std::span<const uint64_t> words) {
    for (size_t w = 0; w < words.size(); w++) {
        if (words[w]) {
            return w * kWordBits + std::countr_zero(words[w]);
        }
    }
    return kNoBit;
}

}  // namespace dpcirc

#endif
