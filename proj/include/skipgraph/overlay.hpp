#pragma once

/*
    Multi-level skip-graph overlay, built offline from a node census.

    Level 0 is one doubly-linked list of every node sorted ascending by
    (key, id). Level i >= 1 partitions nodes into lists keyed by the first
    i*p bits of their membership vectors, each list again sorted by
    (key, id). A node stops appearing above the first level where it is
    alone in its list.

    Three variants differ only in where determinism lives:

        UniStandard    key = scalar reading        mvec = random
        MultiStandard  key = z-order of coords     mvec = random
        Inverted       key = random                mvec = z-order of coords

    Random bit strings come from a per-node seeded generator and are
    extended lazily when two nodes share a full prefix, so splitting always
    terminates for random membership vectors. Deterministic membership
    vectors (Inverted) cannot be extended: nodes with identical coordinates
    share one list at the top forever, and the structure simply stops
    splitting them.
*/

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skipgraph/bitstring.hpp"
#include "skipgraph/zorder.hpp"

namespace skipgraph {

using NodeId = std::uint64_t;

enum class Variant { UniStandard, MultiStandard, Inverted };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::UniStandard: return "UniStandard";
        case Variant::MultiStandard: return "MultiStandard";
        case Variant::Inverted: return "Inverted";
    }
    return "?";
}

inline std::optional<Variant> variant_from_string(const std::string& s) {
    if (s == "UniStandard") return Variant::UniStandard;
    if (s == "MultiStandard") return Variant::MultiStandard;
    if (s == "Inverted") return Variant::Inverted;
    return std::nullopt;
}

/// Census entry fed to build(): identity plus whichever payload the variant
/// needs (coords for MultiStandard/Inverted, reading for UniStandard).
struct NodeInput {
    NodeId id = 0;
    std::optional<Coords> coords;
    std::optional<std::uint64_t> reading;
};

/// Explicit replacements for the randomly drawn bit strings, keyed by node
/// id. mvecs apply where membership vectors are random (UniStandard,
/// MultiStandard); keys apply where keys are random (Inverted). Entries for
/// the other role are ignored, so one override set can serve several
/// variants.
struct Overrides {
    std::map<NodeId, BitString> mvecs;
    std::map<NodeId, BitString> keys;
};

struct NodeRecord {
    NodeId id = 0;
    std::optional<Coords> coords;
    std::optional<std::uint64_t> reading;
    BitString key;
    BitString mvec;

    bool operator==(const NodeRecord&) const = default;
};

struct Level {
    int index = 0;
    std::map<BitString, std::vector<NodeId>> lists;  // prefix -> ids sorted by (key, id)

    bool operator==(const Level&) const = default;
};

/// Where a node sits inside its level: list prefix plus position.
struct ListPos {
    BitString prefix;
    std::size_t index = 0;

    bool operator==(const ListPos&) const = default;
};

enum class Direction { Left, Right };

struct Overlay {
    Variant variant = Variant::UniStandard;
    unsigned k = 0;
    unsigned b = 0;
    unsigned p = 1;
    std::uint64_t seed = 0;
    std::vector<NodeRecord> nodes;                     // census order
    std::map<NodeId, std::size_t> by_id;               // id -> index into nodes
    std::vector<Level> levels;
    std::vector<std::map<NodeId, ListPos>> positions;  // one map per level

    const NodeRecord& node(NodeId id) const {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw std::out_of_range("unknown node id " + std::to_string(id));
        return nodes[it->second];
    }

    bool present(NodeId id, int level) const {
        return level >= 0 && static_cast<std::size_t>(level) < positions.size() &&
               positions[level].count(id) > 0;
    }

    /// Highest level at which the node appears.
    int top_level(NodeId id) const {
        for (int i = static_cast<int>(positions.size()) - 1; i >= 0; --i) {
            if (positions[i].count(id))
                return i;
        }
        throw std::out_of_range("unknown node id " + std::to_string(id));
    }

    /// Expected prefix length of lists at a level. Deterministic membership
    /// vectors cap at their full length; random ones are extended instead.
    std::size_t prefix_len_at(int level) const {
        auto len = static_cast<std::size_t>(level) * p;
        if (variant == Variant::Inverted)
            len = std::min(len, static_cast<std::size_t>(k) * b);
        return len;
    }

    bool operator==(const Overlay&) const = default;
};

struct Violation {
    int level = 0;
    std::string list_prefix;
    std::string rule;
    std::string detail;
};

namespace detail {

/// Deterministic per-node bit stream. Seeding by (seed, id, role) makes
/// draws independent of node order and of how many bits other nodes take,
/// so lazy extension stays reproducible.
class BitSource {
public:
    BitSource(std::uint64_t seed, NodeId id, std::uint32_t role) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(id),
                          static_cast<std::uint32_t>(id >> 32), role};
        engine_.seed(seq);
    }

    int next_bit() {
        if (avail_ == 0) {
            buffer_ = engine_();
            avail_ = 64;
        }
        int b = static_cast<int>(buffer_ >> 63);
        buffer_ <<= 1;
        --avail_;
        return b;
    }

    BitString take(std::size_t n) {
        BitString out;
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(next_bit());
        return out;
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t buffer_ = 0;
    int avail_ = 0;
};

constexpr std::uint32_t kRoleMvec = 0;
constexpr std::uint32_t kRoleKey = 1;

inline bool key_id_less(const NodeRecord& a, const NodeRecord& b) {
    if (a.key != b.key)
        return a.key < b.key;
    return a.id < b.id;
}

}  // namespace detail

/// Build the full overlay for one variant. Deterministic given (inputs,
/// seed): equal calls produce structurally identical overlays.
inline Overlay build(Variant variant, const std::vector<NodeInput>& inputs,
                     unsigned k, unsigned b, unsigned p, std::uint64_t seed,
                     const Overrides& overrides = {}) {
    detail::check_geometry(k, b);
    if (p < 1)
        throw std::invalid_argument("prefix bits per level p must be >= 1");
    if (inputs.empty())
        throw std::invalid_argument("empty node set");

    const bool needs_coords = variant != Variant::UniStandard;
    const std::size_t zlen = static_cast<std::size_t>(k) * b;
    if (needs_coords && zlen > 64)
        throw std::invalid_argument("k*b exceeds 64 bits");

    Overlay ov;
    ov.variant = variant;
    ov.k = k;
    ov.b = b;
    ov.p = p;
    ov.seed = seed;

    for (const auto& in : inputs) {
        if (ov.by_id.count(in.id))
            throw std::invalid_argument("duplicate node id " + std::to_string(in.id));
        if (needs_coords) {
            if (!in.coords)
                throw std::invalid_argument("node " + std::to_string(in.id) +
                                            " lacks coordinates required by variant");
            detail::check_coords(*in.coords, k, b, "coords");
        } else if (!in.reading) {
            throw std::invalid_argument("node " + std::to_string(in.id) +
                                        " lacks reading required by variant");
        }
        ov.by_id.emplace(in.id, ov.nodes.size());
        ov.nodes.push_back(NodeRecord{in.id, in.coords, in.reading, {}, {}});
    }

    // Key overrides replace every random key at once; a partial set would
    // leave mixed key widths and break the total order.
    if (variant == Variant::Inverted && !overrides.keys.empty()) {
        std::size_t width = overrides.keys.begin()->second.size();
        if (width == 0 || width > 64)
            throw std::invalid_argument("key overrides must be 1..64 bits");
        for (const auto& n : ov.nodes) {
            auto it = overrides.keys.find(n.id);
            if (it == overrides.keys.end())
                throw std::invalid_argument("key overrides must cover all nodes; missing id " +
                                            std::to_string(n.id));
            if (it->second.size() != width)
                throw std::invalid_argument("key overrides must share one width");
        }
    }

    // Assign keys and membership vectors.
    std::map<NodeId, detail::BitSource> mvec_sources;
    if (variant == Variant::UniStandard) {
        std::uint64_t max_reading = 0;
        for (const auto& n : ov.nodes)
            max_reading = std::max(max_reading, *n.reading);
        std::size_t width = std::max<std::size_t>(1, std::bit_width(max_reading));
        for (auto& n : ov.nodes)
            n.key = BitString::from_uint(*n.reading, width);
    }
    for (auto& n : ov.nodes) {
        switch (variant) {
            case Variant::UniStandard:
            case Variant::MultiStandard: {
                if (variant == Variant::MultiStandard)
                    n.key = encode(*n.coords, k, b).value;
                auto src = mvec_sources.emplace(n.id,
                    detail::BitSource(seed, n.id, detail::kRoleMvec)).first;
                auto it = overrides.mvecs.find(n.id);
                n.mvec = it != overrides.mvecs.end() ? it->second : src->second.take(zlen);
                if (n.mvec.empty())
                    throw std::invalid_argument("empty membership vector for node " +
                                                std::to_string(n.id));
                break;
            }
            case Variant::Inverted: {
                auto it = overrides.keys.find(n.id);
                n.key = it != overrides.keys.end()
                            ? it->second
                            : detail::BitSource(seed, n.id, detail::kRoleKey).take(zlen);
                n.mvec = encode(*n.coords, k, b).value;
                break;
            }
        }
    }

    // Level 0: one list of everything.
    std::vector<NodeId> base;
    base.reserve(ov.nodes.size());
    {
        std::vector<std::size_t> order(ov.nodes.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
            return detail::key_id_less(ov.nodes[a], ov.nodes[c]);
        });
        for (std::size_t i : order)
            base.push_back(ov.nodes[i].id);
    }
    ov.levels.push_back(Level{0, {{BitString{}, base}}});

    const bool extendable = variant != Variant::Inverted;
    auto mvec_of = [&](NodeId id) -> BitString& { return ov.nodes[ov.by_id.at(id)].mvec; };

    // Split upward until every list is a singleton or out of bits.
    for (int i = 0;; ++i) {
        if (i > 4096)
            throw std::logic_error("level construction did not converge");
        std::size_t cur_len = ov.prefix_len_at(i);
        std::size_t next_len = ov.prefix_len_at(i + 1);
        Level next{i + 1, {}};
        for (const auto& [prefix, list] : ov.levels.back().lists) {
            if (list.size() < 2)
                continue;  // node is alone; it stops here
            if (next_len <= cur_len)
                continue;  // deterministic mvec exhausted; list is terminal
            for (NodeId id : list) {
                BitString& mv = mvec_of(id);
                if (extendable) {
                    auto src = mvec_sources.find(id);
                    while (mv.size() < next_len)
                        mv.push_back(src->second.next_bit());
                }
                next.lists[mv.prefix(std::min(next_len, mv.size()))].push_back(id);
            }
        }
        if (next.lists.empty())
            break;
        ov.levels.push_back(std::move(next));
    }

    // Position index for O(1) link navigation.
    ov.positions.resize(ov.levels.size());
    for (std::size_t i = 0; i < ov.levels.size(); ++i) {
        for (const auto& [prefix, list] : ov.levels[i].lists) {
            for (std::size_t j = 0; j < list.size(); ++j)
                ov.positions[i].emplace(list[j], ListPos{prefix, j});
        }
    }
    return ov;
}

/// Adjacent node in n's level-`level` list, or nullopt at the list end.
inline std::optional<NodeId> neighbor(const Overlay& ov, NodeId n, int level, Direction dir) {
    if (level < 0 || static_cast<std::size_t>(level) >= ov.levels.size())
        throw std::out_of_range("level " + std::to_string(level) + " does not exist");
    auto it = ov.positions[level].find(n);
    if (it == ov.positions[level].end())
        throw std::out_of_range("node " + std::to_string(n) + " not present at level " +
                                std::to_string(level));
    const auto& list = ov.levels[level].lists.at(it->second.prefix);
    std::size_t idx = it->second.index;
    if (dir == Direction::Left)
        return idx > 0 ? std::optional<NodeId>(list[idx - 1]) : std::nullopt;
    return idx + 1 < list.size() ? std::optional<NodeId>(list[idx + 1]) : std::nullopt;
}

/// Machine-check every structural invariant; empty result means the overlay
/// is well formed. Works solely from nodes and levels so corruption of
/// either is caught regardless of cached indexes.
inline std::vector<Violation> validate(const Overlay& ov) {
    std::vector<Violation> out;
    auto flag = [&](int level, const BitString& prefix, std::string rule, std::string detail_) {
        out.push_back(Violation{level, prefix.str(), std::move(rule), std::move(detail_)});
    };

    if (ov.levels.empty()) {
        out.push_back(Violation{0, "", "level0-shape", "overlay has no levels"});
        return out;
    }

    // Level 0: one list, empty prefix, all nodes.
    {
        const Level& l0 = ov.levels[0];
        if (l0.lists.size() != 1 || l0.lists.begin()->first != BitString{}) {
            flag(0, BitString{}, "level0-shape", "level 0 must be a single list with empty prefix");
        } else {
            const auto& base = l0.lists.begin()->second;
            if (base.size() != ov.nodes.size())
                flag(0, BitString{}, "level0-shape",
                     "level 0 holds " + std::to_string(base.size()) + " of " +
                         std::to_string(ov.nodes.size()) + " nodes");
        }
    }

    // Per-level membership sets, for nesting and stop rules.
    std::vector<std::map<NodeId, const std::vector<NodeId>*>> member(ov.levels.size());

    for (std::size_t i = 0; i < ov.levels.size(); ++i) {
        const Level& lvl = ov.levels[i];
        int li = static_cast<int>(i);
        if (lvl.index != li)
            flag(li, BitString{}, "level-index",
                 "stored index " + std::to_string(lvl.index) + " != position " + std::to_string(li));
        std::size_t want_len = ov.prefix_len_at(li);
        for (const auto& [prefix, list] : lvl.lists) {
            if (list.empty()) {
                flag(li, prefix, "empty-list", "list exists with zero nodes");
                continue;
            }
            if (i > 0 && prefix.size() != want_len)
                flag(li, prefix, "prefix-length",
                     "prefix length " + std::to_string(prefix.size()) + " != " +
                         std::to_string(want_len));
            for (std::size_t j = 0; j < list.size(); ++j) {
                auto idx = ov.by_id.find(list[j]);
                if (idx == ov.by_id.end()) {
                    flag(li, prefix, "unknown-node", "id " + std::to_string(list[j]));
                    continue;
                }
                const NodeRecord& rec = ov.nodes[idx->second];
                if (!rec.mvec.starts_with(prefix))
                    flag(li, prefix, "prefix-mismatch",
                         "node " + std::to_string(rec.id) + " mvec " + rec.mvec.str() +
                             " does not start with list prefix");
                if (j > 0) {
                    const NodeRecord& prev = ov.nodes[ov.by_id.at(list[j - 1])];
                    if (!detail::key_id_less(prev, rec))
                        flag(li, prefix, "sort-order",
                             "nodes " + std::to_string(prev.id) + ", " + std::to_string(rec.id) +
                                 " out of (key, id) order");
                }
                if (!member[i].emplace(list[j], &list).second)
                    flag(li, prefix, "duplicate-node",
                         "node " + std::to_string(list[j]) + " appears twice at this level");
            }
        }
    }

    for (std::size_t i = 0; i < ov.levels.size(); ++i) {
        int li = static_cast<int>(i);
        bool has_next = i + 1 < ov.levels.size();
        bool splittable = ov.prefix_len_at(li + 1) > ov.prefix_len_at(li);
        for (const auto& [id, list] : member[i]) {
            bool above = has_next && member[i + 1].count(id);
            if (i > 0 && !member[i - 1].count(id))
                flag(li, BitString{}, "nesting",
                     "node " + std::to_string(id) + " present here but absent one level below");
            if (list->size() < 2 && above)
                flag(li, BitString{}, "membership-stop",
                     "node " + std::to_string(id) + " is alone at this level yet appears above");
            if (list->size() >= 2 && splittable && !above)
                flag(li + 1, BitString{}, "membership-continue",
                     "node " + std::to_string(id) + " shares a level-" + std::to_string(li) +
                         " list but is missing above");
            if (list->size() >= 2 && !splittable && above)
                flag(li, BitString{}, "membership-stop",
                     "node " + std::to_string(id) +
                         " has an exhausted membership vector yet appears above");
        }
    }
    return out;
}

}  // namespace skipgraph
