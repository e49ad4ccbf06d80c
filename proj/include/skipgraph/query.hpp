#pragma once

/*
    The two range-query algorithms, each recording every inter-node link
    traversal. One message = one traversal of a level link between two
    distinct nodes; level changes inside a node are free.

    standard_range_query (UniStandard / MultiStandard): skip-list style
    top-down search from the injection node's highest level toward any key
    in range, then a level-0 sweep in both directions; the sweep stops at
    the first out-of-range node on each side (that node is visited but not
    a result).

    inverted_prefix_query (Inverted): bottom-up prefix ascent. Starting at
    level 0, scan the current list (injection node first, then left, then
    right) for a node whose next-level prefix matches the query prefix,
    ascend inside it, and repeat with a longer prefix. Terminates when the
    level's prefix covers the whole query prefix (sweep that list), when
    the current group's top is reached (compare the full prefix at each
    scanned node), or when a list yields no matching ascent.
*/

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "skipgraph/overlay.hpp"
#include "skipgraph/zorder.hpp"

namespace skipgraph {

enum class QueryKind { Scalar, Rect };

struct RangeQuery {
    QueryKind kind = QueryKind::Scalar;
    std::uint64_t scalar_lo = 0;
    std::uint64_t scalar_hi = 0;
    Coords rect_lo;
    Coords rect_hi;
    NodeId inject_at = 0;
};

enum class Termination { RangeExhausted, FullPrefixMatch, TopLevelReached, NoAscentFound };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::RangeExhausted: return "range_exhausted";
        case Termination::FullPrefixMatch: return "full_prefix_match";
        case Termination::TopLevelReached: return "top_level_reached";
        case Termination::NoAscentFound: return "no_ascent_found";
    }
    return "?";
}

struct Hop {
    NodeId from = 0;
    NodeId to = 0;
    int level = 0;

    bool operator==(const Hop&) const = default;
};

struct LevelMove {
    NodeId node = 0;
    int from_level = 0;
    int to_level = 0;

    bool operator==(const LevelMove&) const = default;
};

struct QueryTrace {
    std::vector<Hop> hops;
    std::vector<LevelMove> level_moves;
    std::set<NodeId> results;        // key-interval / prefix matches
    std::set<NodeId> exact_results;  // results post-filtered by contains()
    Termination terminated_by = Termination::RangeExhausted;

    std::size_t message_count() const { return hops.size(); }

    bool operator==(const QueryTrace&) const = default;
};

namespace detail {

inline std::uint64_t key_value(const Overlay& ov, NodeId id) {
    return ov.node(id).key.to_uint();
}

inline std::set<NodeId> contains_filter(const Overlay& ov, const std::set<NodeId>& ids,
                                        const Coords& lo, const Coords& hi) {
    std::set<NodeId> out;
    for (NodeId id : ids) {
        if (contains(lo, hi, *ov.node(id).coords))
            out.insert(id);
    }
    return out;
}

}  // namespace detail

/// Top-down key-range query over a standard overlay. Scalar queries run on
/// UniStandard, rectangle queries on MultiStandard (bounds are converted to
/// a z-key interval first). Results hold every node whose key lies in the
/// interval; exact_results additionally drop z-interval false positives.
inline QueryTrace standard_range_query(const Overlay& ov, const RangeQuery& q) {
    std::uint64_t lo = 0, hi = 0;
    if (ov.variant == Variant::UniStandard) {
        if (q.kind != QueryKind::Scalar)
            throw std::invalid_argument("UniStandard overlays take scalar queries");
        lo = q.scalar_lo;
        hi = q.scalar_hi;
        if (lo > hi)
            throw std::invalid_argument("scalar lo exceeds hi");
    } else if (ov.variant == Variant::MultiStandard) {
        if (q.kind != QueryKind::Rect)
            throw std::invalid_argument("MultiStandard overlays take rect queries");
        auto [zlo, zhi] = rect_to_zrange(q.rect_lo, q.rect_hi, ov.k, ov.b);
        lo = zlo.value.to_uint();
        hi = zhi.value.to_uint();
    } else {
        throw std::invalid_argument("standard_range_query requires a standard overlay");
    }

    QueryTrace trace;
    NodeId cur = ov.node(q.inject_at).id;
    int lvl = ov.top_level(cur);

    auto in_range = [&](NodeId n) {
        std::uint64_t v = detail::key_value(ov, n);
        return lo <= v && v <= hi;
    };

    // Search: hop toward the range while the neighbor does not overshoot,
    // otherwise drop one level.
    if (!in_range(cur)) {
        const bool rightward = detail::key_value(ov, cur) < lo;
        const Direction dir = rightward ? Direction::Right : Direction::Left;
        while (!in_range(cur)) {
            auto nb = neighbor(ov, cur, lvl, dir);
            bool take = nb && (rightward ? detail::key_value(ov, *nb) <= hi
                                         : detail::key_value(ov, *nb) >= lo);
            if (take) {
                trace.hops.push_back(Hop{cur, *nb, lvl});
                cur = *nb;
            } else if (lvl > 0) {
                trace.level_moves.push_back(LevelMove{cur, lvl, lvl - 1});
                --lvl;
            } else {
                break;  // no node in range exists
            }
        }
    }

    if (in_range(cur)) {
        if (lvl > 0) {
            trace.level_moves.push_back(LevelMove{cur, lvl, 0});
            lvl = 0;
        }
        trace.results.insert(cur);
        for (Direction dir : {Direction::Left, Direction::Right}) {
            NodeId c = cur;
            while (auto nb = neighbor(ov, c, 0, dir)) {
                trace.hops.push_back(Hop{c, *nb, 0});
                if (!in_range(*nb))
                    break;  // stop node: visited, never a result
                trace.results.insert(*nb);
                c = *nb;
            }
        }
    }

    trace.terminated_by = Termination::RangeExhausted;
    trace.exact_results = ov.variant == Variant::MultiStandard
                              ? detail::contains_filter(ov, trace.results, q.rect_lo, q.rect_hi)
                              : trace.results;
    return trace;
}

/// Bottom-up prefix-ascent query over an inverted overlay. Results hold
/// every node whose membership vector starts with the query prefix;
/// exact_results additionally apply the rectangle filter, since a prefix
/// region generally exceeds the queried rectangle.
inline QueryTrace inverted_prefix_query(const Overlay& ov, const RangeQuery& q) {
    if (ov.variant != Variant::Inverted)
        throw std::invalid_argument("inverted_prefix_query requires an Inverted overlay");
    if (q.kind != QueryKind::Rect)
        throw std::invalid_argument("inverted queries take rect queries");

    auto [zlo, zhi] = rect_to_zrange(q.rect_lo, q.rect_hi, ov.k, ov.b);
    BitString full = range_prefix(zlo, zhi);
    // Level prefixes only exist at multiples of p; truncate down and let
    // the contains() filter recover the lost precision.
    const BitString P = full.prefix(full.size() - full.size() % ov.p);

    QueryTrace trace;
    NodeId cur = ov.node(q.inject_at).id;
    int lvl = 0;

    auto mvec_of = [&](NodeId id) -> const BitString& { return ov.node(id).mvec; };
    auto list_of = [&](NodeId id, int level) -> const std::vector<NodeId>& {
        const ListPos& pos = ov.positions[level].at(id);
        return ov.levels[level].lists.at(pos.prefix);
    };

    for (;;) {
        std::size_t plen = ov.prefix_len_at(lvl);
        if (plen >= P.size()) {
            // Termination 1: this level's prefix covers the query prefix;
            // notify the entire list.
            trace.results.insert(cur);
            for (Direction dir : {Direction::Left, Direction::Right}) {
                NodeId c = cur;
                while (auto nb = neighbor(ov, c, lvl, dir)) {
                    trace.hops.push_back(Hop{c, *nb, lvl});
                    trace.results.insert(*nb);
                    c = *nb;
                }
            }
            trace.terminated_by = Termination::FullPrefixMatch;
            break;
        }

        const std::size_t next_len = ov.prefix_len_at(lvl + 1);
        const BitString target = P.prefix(next_len);
        auto ascends = [&](NodeId id) {
            return ov.present(id, lvl + 1) && mvec_of(id).prefix(next_len) == target;
        };

        bool found = ascends(cur);
        for (Direction dir : {Direction::Left, Direction::Right}) {
            if (found)
                break;
            NodeId c = cur;
            while (auto nb = neighbor(ov, c, lvl, dir)) {
                trace.hops.push_back(Hop{c, *nb, lvl});
                c = *nb;
                if (ascends(c)) {
                    cur = c;
                    found = true;
                    break;
                }
            }
        }
        if (found) {
            trace.level_moves.push_back(LevelMove{cur, lvl, lvl + 1});
            ++lvl;
            continue;
        }

        // The whole list was scanned without an ascent.
        const auto& list = list_of(cur, lvl);
        bool anyone_above = false;
        for (NodeId id : list) {
            if (ov.present(id, lvl + 1)) {
                anyone_above = true;
                break;
            }
        }
        if (anyone_above) {
            // Termination 3: matching region is empty.
            trace.terminated_by = Termination::NoAscentFound;
        } else {
            // Termination 2: this group's top; compare the full query
            // prefix at every node just scanned.
            for (NodeId id : list) {
                if (mvec_of(id).starts_with(P))
                    trace.results.insert(id);
            }
            trace.terminated_by = Termination::TopLevelReached;
        }
        break;
    }

    trace.exact_results = detail::contains_filter(ov, trace.results, q.rect_lo, q.rect_hi);
    return trace;
}

}  // namespace skipgraph
