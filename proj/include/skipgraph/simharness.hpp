#pragma once

/*
    Deterministic simulation driver. A Scenario bundles one node census with
    the overlay variants to build and the queries to run; run_scenario()
    executes every query on every compatible variant and reports per-query
    metrics (message count, result sizes, oracle agreement) plus the full
    traces. compare_variants() reduces a run to per-variant message-count
    aggregates and head-to-head winner tallies for queries that executed on
    both standard and inverted overlays.

    Everything downstream of the seed is reproducible: same scenario, same
    metrics, same traces, byte for byte. Aggregates therefore stay in exact
    integer arithmetic (sums, counts, doubled medians) instead of floats.
*/

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "skipgraph/overlay.hpp"
#include "skipgraph/query.hpp"
#include "skipgraph/zorder.hpp"

namespace skipgraph {

struct ScenarioQuery {
    std::string id;  // label used in reports
    RangeQuery query;
};

struct Scenario {
    std::string name;
    unsigned k = 1;
    unsigned b = 1;
    std::uint64_t seed = 0;
    std::vector<Variant> variants;
    std::map<Variant, unsigned> p_overrides;
    std::vector<NodeInput> nodes;
    Overrides overrides;
    std::vector<ScenarioQuery> queries;

    /// Level split width for a variant: explicit override, else 1 where
    /// membership vectors are random, else k (one z-order group per level)
    /// where they are coordinate-derived.
    unsigned p_for(Variant v) const {
        auto it = p_overrides.find(v);
        if (it != p_overrides.end())
            return it->second;
        return v == Variant::Inverted ? k : 1;
    }
};

/// True when the query can run on the variant: scalar intervals address
/// reading-keyed overlays, rectangles address coordinate-based ones.
inline bool compatible(const RangeQuery& q, Variant v) {
    return q.kind == QueryKind::Scalar ? v == Variant::UniStandard : v != Variant::UniStandard;
}

/// Ground truth by linear scan of the census, no overlay involved.
inline std::set<NodeId> oracle(const std::vector<NodeInput>& nodes, const RangeQuery& q) {
    std::set<NodeId> out;
    for (const NodeInput& n : nodes) {
        if (q.kind == QueryKind::Scalar) {
            if (n.reading && q.scalar_lo <= *n.reading && *n.reading <= q.scalar_hi)
                out.insert(n.id);
        } else {
            if (n.coords && contains(q.rect_lo, q.rect_hi, *n.coords))
                out.insert(n.id);
        }
    }
    return out;
}

struct QueryMetrics {
    std::string query_id;
    Variant variant = Variant::UniStandard;
    std::size_t messages = 0;
    std::map<int, std::size_t> per_level_hops;  // values sum to messages
    std::size_t result_size = 0;
    std::size_t exact_result_size = 0;
    bool oracle_match = false;
    Termination terminated_by = Termination::RangeExhausted;

    bool operator==(const QueryMetrics&) const = default;
};

struct QueryRun {
    QueryMetrics metrics;
    QueryTrace trace;

    bool operator==(const QueryRun&) const = default;
};

struct VariantRun {
    Variant variant = Variant::UniStandard;
    Overlay overlay;
    std::vector<QueryRun> queries;

    bool operator==(const VariantRun&) const = default;
};

struct ScenarioRun {
    std::vector<VariantRun> variants;  // in scenario order

    bool operator==(const ScenarioRun&) const = default;
};

/// Validate cross-field scenario rules that individual setters cannot see.
/// Returns human-readable problems; empty means runnable.
inline std::vector<std::string> check_scenario(const Scenario& sc) {
    std::vector<std::string> problems;
    if (sc.variants.empty())
        problems.push_back("no variants requested");
    if (sc.nodes.empty())
        problems.push_back("node census is empty");

    std::set<Variant> requested(sc.variants.begin(), sc.variants.end());
    if (requested.size() != sc.variants.size())
        problems.push_back("duplicate variant requested");

    bool needs_reading = requested.count(Variant::UniStandard) > 0;
    bool needs_coords =
        requested.count(Variant::MultiStandard) > 0 || requested.count(Variant::Inverted) > 0;
    std::set<NodeId> ids;
    for (const NodeInput& n : sc.nodes) {
        if (!ids.insert(n.id).second)
            problems.push_back("duplicate node id " + std::to_string(n.id));
        if (needs_reading && !n.reading)
            problems.push_back("node " + std::to_string(n.id) + " lacks a reading");
        if (needs_coords && !n.coords)
            problems.push_back("node " + std::to_string(n.id) + " lacks coordinates");
        if (n.coords) {
            if (n.coords->size() != sc.k)
                problems.push_back("node " + std::to_string(n.id) + " has " +
                                   std::to_string(n.coords->size()) + " coordinates, expected " +
                                   std::to_string(sc.k));
            else
                for (std::uint64_t c : *n.coords)
                    if (sc.b < 64 && c >> sc.b)
                        problems.push_back("node " + std::to_string(n.id) + " coordinate " +
                                           std::to_string(c) + " needs more than " +
                                           std::to_string(sc.b) + " bits");
        }
    }

    std::set<std::string> qids;
    for (const ScenarioQuery& sq : sc.queries) {
        if (!qids.insert(sq.id).second)
            problems.push_back("duplicate query id \"" + sq.id + "\"");
        if (!ids.count(sq.query.inject_at))
            problems.push_back("query \"" + sq.id + "\" injects at unknown node " +
                               std::to_string(sq.query.inject_at));
        bool any = false;
        for (Variant v : sc.variants)
            any = any || compatible(sq.query, v);
        if (!any)
            problems.push_back("query \"" + sq.id + "\" matches none of the requested variants");
        if (sq.query.kind == QueryKind::Scalar) {
            if (sq.query.scalar_lo > sq.query.scalar_hi)
                problems.push_back("query \"" + sq.id + "\" has lo > hi");
        } else {
            if (sq.query.rect_lo.size() != sc.k || sq.query.rect_hi.size() != sc.k)
                problems.push_back("query \"" + sq.id + "\" rect dimensionality != " +
                                   std::to_string(sc.k));
            else
                for (unsigned d = 0; d < sc.k; ++d) {
                    if (sq.query.rect_lo[d] > sq.query.rect_hi[d])
                        problems.push_back("query \"" + sq.id + "\" has lo > hi in dimension " +
                                           std::to_string(d));
                    if (sc.b < 64 && (sq.query.rect_lo[d] >> sc.b || sq.query.rect_hi[d] >> sc.b))
                        problems.push_back("query \"" + sq.id +
                                           "\" rect exceeds the coordinate grid");
                }
        }
    }
    return problems;
}

/// Build every requested overlay and run each query on each compatible
/// variant. Throws std::invalid_argument listing the first problem when the
/// scenario fails check_scenario().
inline ScenarioRun run_scenario(const Scenario& sc) {
    auto problems = check_scenario(sc);
    if (!problems.empty())
        throw std::invalid_argument("invalid scenario: " + problems.front());

    ScenarioRun run;
    for (Variant v : sc.variants) {
        VariantRun vr;
        vr.variant = v;
        vr.overlay = build(v, sc.nodes, sc.k, sc.b, sc.p_for(v), sc.seed, sc.overrides);
        for (const ScenarioQuery& sq : sc.queries) {
            if (!compatible(sq.query, v))
                continue;
            QueryRun qr;
            qr.trace = v == Variant::Inverted ? inverted_prefix_query(vr.overlay, sq.query)
                                              : standard_range_query(vr.overlay, sq.query);
            qr.metrics.query_id = sq.id;
            qr.metrics.variant = v;
            qr.metrics.messages = qr.trace.message_count();
            for (const Hop& h : qr.trace.hops)
                ++qr.metrics.per_level_hops[h.level];
            qr.metrics.result_size = qr.trace.results.size();
            qr.metrics.exact_result_size = qr.trace.exact_results.size();
            qr.metrics.oracle_match = qr.trace.exact_results == oracle(sc.nodes, sq.query);
            qr.metrics.terminated_by = qr.trace.terminated_by;
            vr.queries.push_back(std::move(qr));
        }
        run.variants.push_back(std::move(vr));
    }
    return run;
}

/// Message-count summary for one variant across every query it ran.
struct VariantAggregate {
    Variant variant = Variant::UniStandard;
    std::size_t query_count = 0;
    std::size_t total_messages = 0;
    std::size_t min_messages = 0;
    std::size_t max_messages = 0;
    std::size_t median_x2 = 0;  // doubled median, exact for even counts

    bool operator==(const VariantAggregate&) const = default;
};

/// Head-to-head row for one query that ran on both standard variants'
/// rectangle path and the inverted path.
struct ComparisonRow {
    std::string query_id;
    std::size_t standard_messages = 0;
    std::size_t inverted_messages = 0;
    int winner = 0;  // -1 standard, 0 tie, +1 inverted

    bool operator==(const ComparisonRow&) const = default;
};

struct Comparison {
    std::vector<VariantAggregate> aggregates;  // per ran variant, scenario order
    std::vector<ComparisonRow> rows;           // per query ran on both sides
    std::size_t standard_wins = 0;
    std::size_t ties = 0;
    std::size_t inverted_wins = 0;

    /// Queries where this variant used no more messages than the other
    /// side (ties count for both); pair with rows.size() for the exact
    /// win fraction.
    std::size_t leq_count(Variant v) const {
        if (v == Variant::MultiStandard)
            return standard_wins + ties;
        if (v == Variant::Inverted)
            return inverted_wins + ties;
        return 0;
    }
};

inline VariantAggregate aggregate_messages(Variant v, const std::vector<QueryRun>& runs) {
    VariantAggregate agg;
    agg.variant = v;
    agg.query_count = runs.size();
    std::vector<std::size_t> counts;
    counts.reserve(runs.size());
    for (const QueryRun& qr : runs) {
        counts.push_back(qr.metrics.messages);
        agg.total_messages += qr.metrics.messages;
    }
    if (!counts.empty()) {
        std::sort(counts.begin(), counts.end());
        agg.min_messages = counts.front();
        agg.max_messages = counts.back();
        std::size_t mid = counts.size() / 2;
        agg.median_x2 = counts.size() % 2 ? 2 * counts[mid] : counts[mid - 1] + counts[mid];
    }
    return agg;
}

/// Reduce a finished run to aggregates plus standard-vs-inverted rows. The
/// standard side of each row is the MultiStandard execution of the query.
inline Comparison compare_variants(const ScenarioRun& run) {
    Comparison cmp;
    const VariantRun* multi = nullptr;
    const VariantRun* inverted = nullptr;
    for (const VariantRun& vr : run.variants) {
        cmp.aggregates.push_back(aggregate_messages(vr.variant, vr.queries));
        if (vr.variant == Variant::MultiStandard)
            multi = &vr;
        if (vr.variant == Variant::Inverted)
            inverted = &vr;
    }
    if (multi && inverted) {
        std::map<std::string, std::size_t> inv_messages;
        for (const QueryRun& qr : inverted->queries)
            inv_messages[qr.metrics.query_id] = qr.metrics.messages;
        for (const QueryRun& qr : multi->queries) {
            auto it = inv_messages.find(qr.metrics.query_id);
            if (it == inv_messages.end())
                continue;
            ComparisonRow row;
            row.query_id = qr.metrics.query_id;
            row.standard_messages = qr.metrics.messages;
            row.inverted_messages = it->second;
            row.winner = row.inverted_messages < row.standard_messages  ? 1
                         : row.inverted_messages > row.standard_messages ? -1
                                                                          : 0;
            if (row.winner > 0)
                ++cmp.inverted_wins;
            else if (row.winner < 0)
                ++cmp.standard_wins;
            else
                ++cmp.ties;
            cmp.rows.push_back(std::move(row));
        }
    }
    return cmp;
}

}  // namespace skipgraph
