#pragma once

/*
    Z-order (Morton) linearization of k unsigned coordinates of b bits each.

    Key layout, position 0 = most significant bit:

        position g*k + d  holds bit (b-1-g) of coordinate d

    Bit groups run MSB-first and dimension 0 supplies the most significant
    bit within each group. For k=2, b=3 the key reads

        (x2 y2) (x1 y1) (x0 y0)

    so (2,0) -> 001000 and (0,1) -> 000001. In two dimensions each leading
    bit pair names one quadrant of the grid, recursively, which makes the
    ordering equivalent to a quad-tree subdivision.
*/

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skipgraph/bitstring.hpp"

namespace skipgraph {

/// k unsigned integer coordinates, each in [0, 2^b).
using Coords = std::vector<std::uint64_t>;

/// Interleaved key plus the geometry that produced it.
struct ZKey {
    BitString value;
    unsigned k = 0;
    unsigned b = 0;

    bool operator==(const ZKey&) const = default;
};

namespace detail {

inline void check_geometry(unsigned k, unsigned b) {
    if (k < 1)
        throw std::invalid_argument("dimension count k must be >= 1");
    if (b < 1)
        throw std::invalid_argument("bits per dimension b must be >= 1");
}

inline void check_coords(const Coords& coords, unsigned k, unsigned b, const char* what) {
    if (coords.size() != k)
        throw std::invalid_argument(std::string(what) + " has " + std::to_string(coords.size()) +
                                    " coordinates, expected k=" + std::to_string(k));
    for (std::size_t d = 0; d < coords.size(); ++d) {
        if (b < 64 && coords[d] >= (std::uint64_t{1} << b))
            throw std::invalid_argument(std::string(what) + " coordinate " + std::to_string(d) +
                                        " = " + std::to_string(coords[d]) +
                                        " out of range for b=" + std::to_string(b));
    }
}

}  // namespace detail

/// Interleave the b-bit coordinates into one k*b-bit key.
inline ZKey encode(const Coords& coords, unsigned k, unsigned b) {
    detail::check_geometry(k, b);
    detail::check_coords(coords, k, b, "coords");
    BitString bits;
    for (unsigned g = 0; g < b; ++g) {
        for (unsigned d = 0; d < k; ++d)
            bits.push_back(static_cast<int>((coords[d] >> (b - 1 - g)) & 1u));
    }
    return ZKey{std::move(bits), k, b};
}

/// Inverse of encode; decode(encode(c)) == c for all valid c.
inline Coords decode(const ZKey& key) {
    detail::check_geometry(key.k, key.b);
    if (key.value.size() != static_cast<std::size_t>(key.k) * key.b)
        throw std::invalid_argument("malformed key: length " + std::to_string(key.value.size()) +
                                    ", expected k*b = " + std::to_string(key.k * key.b));
    Coords coords(key.k, 0);
    for (unsigned g = 0; g < key.b; ++g) {
        for (unsigned d = 0; d < key.k; ++d) {
            if (key.value.bit(static_cast<std::size_t>(g) * key.k + d))
                coords[d] |= std::uint64_t{1} << (key.b - 1 - g);
        }
    }
    return coords;
}

/// Corner conversion of a rectangle to a z-key interval. The interval
/// [encode(lo), encode(hi)] can contain keys whose coordinates lie outside
/// the rectangle; callers recover exactness with contains().
inline std::pair<ZKey, ZKey> rect_to_zrange(const Coords& lo, const Coords& hi,
                                            unsigned k, unsigned b) {
    detail::check_geometry(k, b);
    detail::check_coords(lo, k, b, "lo");
    detail::check_coords(hi, k, b, "hi");
    for (unsigned d = 0; d < k; ++d) {
        if (lo[d] > hi[d])
            throw std::invalid_argument("lo exceeds hi in dimension " + std::to_string(d));
    }
    return {encode(lo, k, b), encode(hi, k, b)};
}

/// Longest bit prefix shared by the two interval endpoints; may be empty.
inline BitString range_prefix(const ZKey& zlo, const ZKey& zhi) {
    if (zlo.k != zhi.k || zlo.b != zhi.b || zlo.value.size() != zhi.value.size())
        throw std::invalid_argument("mismatched key geometry");
    if (zhi.value < zlo.value)
        throw std::invalid_argument("zlo exceeds zhi");
    return common_prefix(zlo.value, zhi.value);
}

/// True iff lo[d] <= point[d] <= hi[d] for every dimension d.
inline bool contains(const Coords& lo, const Coords& hi, const Coords& point) {
    if (lo.size() != hi.size() || lo.size() != point.size())
        throw std::invalid_argument("dimension mismatch");
    for (std::size_t d = 0; d < lo.size(); ++d) {
        if (lo[d] > hi[d])
            throw std::invalid_argument("lo exceeds hi in dimension " + std::to_string(d));
        if (point[d] < lo[d] || point[d] > hi[d])
            return false;
    }
    return true;
}

}  // namespace skipgraph
