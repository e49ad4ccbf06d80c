#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace skipgraph {

/// Ordered sequence of bits with explicit length; the empty string is valid.
/// Bits are stored as '0'/'1' characters, so prefix handling, ordering, and
/// serialization all reduce to plain string operations. Lexicographic order
/// coincides with unsigned big-endian numeric order whenever both operands
/// have the same length; callers that compare keys numerically must enforce
/// equal lengths.
class BitString {
public:
    BitString() = default;

    static BitString parse(std::string_view text) {
        for (char c : text) {
            if (c != '0' && c != '1')
                throw std::invalid_argument("bit string may contain only '0' and '1', got \"" +
                                            std::string(text) + "\"");
        }
        return BitString(std::string(text));
    }

    /// Big-endian encoding of `value` in exactly `width` bits.
    static BitString from_uint(std::uint64_t value, std::size_t width) {
        if (width > 64)
            throw std::invalid_argument("bit width > 64");
        if (static_cast<std::size_t>(std::bit_width(value)) > width)
            throw std::invalid_argument("value " + std::to_string(value) + " does not fit in " +
                                        std::to_string(width) + " bits");
        std::string s(width, '0');
        for (std::size_t i = 0; i < width; ++i) {
            if ((value >> (width - 1 - i)) & 1u)
                s[i] = '1';
        }
        return BitString(std::move(s));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    /// Bit at position i, 0 = most significant.
    int bit(std::size_t i) const {
        if (i >= bits_.size())
            throw std::out_of_range("bit index " + std::to_string(i) + " out of range for \"" +
                                    bits_ + "\"");
        return bits_[i] == '1' ? 1 : 0;
    }

    void push_back(int b) { bits_.push_back(b ? '1' : '0'); }

    void append(const BitString& other) { bits_ += other.bits_; }

    /// The first n bits; prefix(size()) is the whole string.
    BitString prefix(std::size_t n) const {
        if (n > bits_.size())
            throw std::out_of_range("prefix length " + std::to_string(n) + " exceeds size " +
                                    std::to_string(bits_.size()));
        return BitString(bits_.substr(0, n));
    }

    bool starts_with(const BitString& p) const {
        return bits_.size() >= p.bits_.size() &&
               bits_.compare(0, p.bits_.size(), p.bits_) == 0;
    }

    /// Value as an unsigned big-endian integer; requires size() <= 64.
    std::uint64_t to_uint() const {
        if (bits_.size() > 64)
            throw std::overflow_error("bit string longer than 64 bits");
        std::uint64_t v = 0;
        for (char c : bits_)
            v = (v << 1) | (c == '1' ? 1u : 0u);
        return v;
    }

    const std::string& str() const { return bits_; }

    auto operator<=>(const BitString&) const = default;

private:
    explicit BitString(std::string bits) : bits_(std::move(bits)) {}

    std::string bits_;
};

/// Longest prefix shared by a and b; may be empty.
inline BitString common_prefix(const BitString& a, const BitString& b) {
    std::size_t n = 0;
    std::size_t limit = std::min(a.size(), b.size());
    while (n < limit && a.bit(n) == b.bit(n))
        ++n;
    return a.prefix(n);
}

inline std::ostream& operator<<(std::ostream& os, const BitString& bs) {
    return os << bs.str();
}

}  // namespace skipgraph
