#pragma once

/*
    Scenario files and report formats.

    Scenarios are JSON documents:

        {
          "name": "demo",
          "k": 2, "b": 3, "seed": 1,
          "variants": ["MultiStandard", "Inverted"],
          "p": 1,                          // or {"Inverted": 2, ...}
          "nodes": [{"id": 1, "coords": [0, 1], "reading": 2}, ...],
          "overrides": {"mvecs": {"1": "010"}, "keys": {"1": "0000101"}},
          "queries": [
            {"id": "q1", "type": "scalar", "lo": 2, "hi": 4, "inject_at": 4},
            {"id": "q2", "type": "rect", "lo": [2, 0], "hi": [3, 1], "inject_at": 8}
          ]
        }

    Parsing is strict: unknown fields are errors, and every complaint names
    the JSON path it refers to (e.g. "nodes[3].coords[1]"), so a typo cannot
    silently change what a simulation does.

    Report writers emit deterministic bytes for identical runs: fixed field
    orders, "\n" line ends, and integer-only aggregates.
*/

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "skipgraph/simharness.hpp"

namespace skipgraph {

using Json = nlohmann::ordered_json;

/// Scenario file rejected; `path` names the offending JSON field ("" for
/// document-level syntax errors).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

namespace detail {

inline void expect_object(const Json& v, const std::string& path) {
    if (!v.is_object())
        throw ScenarioError(path, "expected an object");
}

inline void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed,
                                const std::string& path) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            known = known || item.key() == key;
        if (!known)
            throw ScenarioError(path.empty() ? item.key() : path + "." + item.key(),
                                "unknown field");
    }
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ScenarioError(path.empty() ? key : path + "." + key, "missing required field");
    return *it;
}

inline std::uint64_t get_uint(const Json& v, const std::string& path) {
    if (!v.is_number_unsigned())
        throw ScenarioError(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::string get_string(const Json& v, const std::string& path) {
    if (!v.is_string())
        throw ScenarioError(path, "expected a string");
    return v.get<std::string>();
}

inline BitString get_bits(const Json& v, const std::string& path) {
    std::string s = get_string(v, path);
    try {
        return BitString::parse(s);
    } catch (const std::exception& e) {
        throw ScenarioError(path, e.what());
    }
}

inline Coords get_coords(const Json& v, const std::string& path) {
    if (!v.is_array())
        throw ScenarioError(path, "expected an array of coordinates");
    Coords out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(get_uint(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline Variant get_variant(const Json& v, const std::string& path) {
    auto parsed = variant_from_string(get_string(v, path));
    if (!parsed)
        throw ScenarioError(path,
                            "unknown variant \"" + v.get<std::string>() +
                                "\" (expected UniStandard, MultiStandard or Inverted)");
    return *parsed;
}

inline NodeId get_node_id_key(const std::string& key, const std::string& path) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw ScenarioError(path, "object keys must be decimal node ids");
    try {
        return std::stoull(key);
    } catch (const std::exception&) {
        throw ScenarioError(path, "node id out of range");
    }
}

}  // namespace detail

/// Parse a scenario document. Throws ScenarioError naming the first
/// offending field; the result still needs check_scenario() for
/// cross-field rules.
inline Scenario parse_scenario(const Json& doc) {
    using namespace detail;
    expect_object(doc, "");
    reject_unknown_keys(doc, {"name", "k", "b", "seed", "variants", "p", "nodes", "overrides",
                              "queries"},
                        "");

    Scenario sc;
    if (doc.contains("name"))
        sc.name = get_string(doc["name"], "name");

    std::uint64_t k = get_uint(require(doc, "k", ""), "k");
    std::uint64_t b = get_uint(require(doc, "b", ""), "b");
    if (k == 0 || k > 64)
        throw ScenarioError("k", "must be between 1 and 64");
    if (b == 0 || b > 64)
        throw ScenarioError("b", "must be between 1 and 64");
    sc.k = static_cast<unsigned>(k);
    sc.b = static_cast<unsigned>(b);
    if (doc.contains("seed"))
        sc.seed = get_uint(doc["seed"], "seed");

    const Json& variants = require(doc, "variants", "");
    if (!variants.is_array() || variants.empty())
        throw ScenarioError("variants", "expected a non-empty array");
    for (std::size_t i = 0; i < variants.size(); ++i)
        sc.variants.push_back(get_variant(variants[i], "variants[" + std::to_string(i) + "]"));

    if (doc.contains("p")) {
        const Json& p = doc["p"];
        if (p.is_object()) {
            for (const auto& item : p.items()) {
                auto parsed = variant_from_string(item.key());
                if (!parsed)
                    throw ScenarioError("p." + item.key(), "unknown variant");
                std::uint64_t val = get_uint(item.value(), "p." + item.key());
                if (val == 0)
                    throw ScenarioError("p." + item.key(), "must be positive");
                sc.p_overrides[*parsed] = static_cast<unsigned>(val);
            }
        } else {
            std::uint64_t val = get_uint(p, "p");
            if (val == 0)
                throw ScenarioError("p", "must be positive");
            for (Variant v : {Variant::UniStandard, Variant::MultiStandard, Variant::Inverted})
                sc.p_overrides[v] = static_cast<unsigned>(val);
        }
    }

    const Json& nodes = require(doc, "nodes", "");
    if (!nodes.is_array() || nodes.empty())
        throw ScenarioError("nodes", "expected a non-empty array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string path = "nodes[" + std::to_string(i) + "]";
        const Json& nj = nodes[i];
        expect_object(nj, path);
        reject_unknown_keys(nj, {"id", "coords", "reading"}, path);
        NodeInput n;
        n.id = get_uint(require(nj, "id", path), path + ".id");
        if (nj.contains("coords"))
            n.coords = get_coords(nj["coords"], path + ".coords");
        if (nj.contains("reading"))
            n.reading = get_uint(nj["reading"], path + ".reading");
        sc.nodes.push_back(std::move(n));
    }

    if (doc.contains("overrides")) {
        const Json& ov = doc["overrides"];
        expect_object(ov, "overrides");
        reject_unknown_keys(ov, {"mvecs", "keys"}, "overrides");
        for (const char* which : {"mvecs", "keys"}) {
            if (!ov.contains(which))
                continue;
            const Json& table = ov[which];
            std::string tpath = std::string("overrides.") + which;
            expect_object(table, tpath);
            auto& dest = std::string(which) == "mvecs" ? sc.overrides.mvecs : sc.overrides.keys;
            for (const auto& item : table.items()) {
                std::string epath = tpath + "." + item.key();
                NodeId id = get_node_id_key(item.key(), epath);
                dest[id] = get_bits(item.value(), epath);
            }
        }
    }

    if (doc.contains("queries")) {
        const Json& queries = doc["queries"];
        if (!queries.is_array())
            throw ScenarioError("queries", "expected an array");
        for (std::size_t i = 0; i < queries.size(); ++i) {
            std::string path = "queries[" + std::to_string(i) + "]";
            const Json& qj = queries[i];
            expect_object(qj, path);
            reject_unknown_keys(qj, {"id", "type", "lo", "hi", "inject_at"}, path);
            ScenarioQuery sq;
            sq.id = get_string(require(qj, "id", path), path + ".id");
            std::string type = get_string(require(qj, "type", path), path + ".type");
            const Json& lo = require(qj, "lo", path);
            const Json& hi = require(qj, "hi", path);
            if (type == "scalar") {
                sq.query.kind = QueryKind::Scalar;
                sq.query.scalar_lo = get_uint(lo, path + ".lo");
                sq.query.scalar_hi = get_uint(hi, path + ".hi");
            } else if (type == "rect") {
                sq.query.kind = QueryKind::Rect;
                sq.query.rect_lo = get_coords(lo, path + ".lo");
                sq.query.rect_hi = get_coords(hi, path + ".hi");
            } else {
                throw ScenarioError(path + ".type", "expected \"scalar\" or \"rect\"");
            }
            sq.query.inject_at = get_uint(require(qj, "inject_at", path), path + ".inject_at");
            sc.queries.push_back(std::move(sq));
        }
    }
    return sc;
}

inline Scenario load_scenario(std::istream& in) {
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ScenarioError("", std::string("not valid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

inline Scenario load_scenario_file(const std::string& file) {
    std::ifstream in(file);
    if (!in)
        throw ScenarioError("", "cannot open " + file);
    return load_scenario(in);
}

// --- report writers ---------------------------------------------------

/// One row per executed query, grouped by variant in scenario order.
inline void write_metrics_csv(std::ostream& out, const ScenarioRun& run) {
    out << "query_id,variant,messages,result_size,exact_result_size,oracle_match,terminated_by\n";
    for (const VariantRun& vr : run.variants) {
        for (const QueryRun& qr : vr.queries) {
            const QueryMetrics& m = qr.metrics;
            out << m.query_id << ',' << to_string(m.variant) << ',' << m.messages << ','
                << m.result_size << ',' << m.exact_result_size << ','
                << (m.oracle_match ? "true" : "false") << ',' << to_string(m.terminated_by)
                << '\n';
        }
    }
}

inline Json metrics_to_json(const QueryMetrics& m) {
    Json j;
    j["query_id"] = m.query_id;
    j["variant"] = to_string(m.variant);
    j["messages"] = m.messages;
    j["per_level_hops"] = Json::object();
    for (const auto& [level, count] : m.per_level_hops)
        j["per_level_hops"][std::to_string(level)] = count;
    j["result_size"] = m.result_size;
    j["exact_result_size"] = m.exact_result_size;
    j["oracle_match"] = m.oracle_match;
    j["terminated_by"] = to_string(m.terminated_by);
    return j;
}

inline Json run_to_json(const Scenario& sc, const ScenarioRun& run) {
    Json j;
    j["scenario"] = sc.name;
    j["variants"] = Json::array();
    for (const VariantRun& vr : run.variants) {
        Json vj;
        vj["variant"] = to_string(vr.variant);
        vj["levels"] = vr.overlay.levels.size();
        vj["queries"] = Json::array();
        for (const QueryRun& qr : vr.queries)
            vj["queries"].push_back(metrics_to_json(qr.metrics));
        j["variants"].push_back(std::move(vj));
    }
    return j;
}

inline Json trace_to_json(const QueryTrace& t) {
    Json j;
    j["hops"] = Json::array();
    for (const Hop& h : t.hops)
        j["hops"].push_back(Json{{"from", h.from}, {"to", h.to}, {"level", h.level}});
    j["level_moves"] = Json::array();
    for (const LevelMove& m : t.level_moves)
        j["level_moves"].push_back(
            Json{{"node", m.node}, {"from_level", m.from_level}, {"to_level", m.to_level}});
    j["results"] = t.results;
    j["exact_results"] = t.exact_results;
    j["terminated_by"] = to_string(t.terminated_by);
    return j;
}

inline Json traces_to_json(const Scenario& sc, const ScenarioRun& run) {
    Json j;
    j["scenario"] = sc.name;
    j["variants"] = Json::array();
    for (const VariantRun& vr : run.variants) {
        Json vj;
        vj["variant"] = to_string(vr.variant);
        vj["queries"] = Json::array();
        for (const QueryRun& qr : vr.queries) {
            Json qj;
            qj["query_id"] = qr.metrics.query_id;
            qj["trace"] = trace_to_json(qr.trace);
            vj["queries"].push_back(std::move(qj));
        }
        j["variants"].push_back(std::move(vj));
    }
    return j;
}

/// Two tables separated by a blank line: head-to-head rows, then
/// per-variant aggregates. Everything stays integral: the mean is
/// total_messages / query_count, and the win fraction is
/// wins_leq / compared (ties count for both sides); compared is zero for
/// variants outside the head-to-head pair.
inline void write_comparison_csv(std::ostream& out, const Comparison& cmp) {
    out << "query_id,standard_messages,inverted_messages,winner\n";
    for (const ComparisonRow& row : cmp.rows) {
        const char* winner = row.winner > 0 ? "inverted" : row.winner < 0 ? "standard" : "tie";
        out << row.query_id << ',' << row.standard_messages << ',' << row.inverted_messages << ','
            << winner << '\n';
    }
    out << '\n';
    out << "variant,query_count,total_messages,min_messages,max_messages,median_x2,"
           "wins_leq,compared\n";
    for (const VariantAggregate& agg : cmp.aggregates) {
        bool in_pair =
            agg.variant == Variant::MultiStandard || agg.variant == Variant::Inverted;
        out << to_string(agg.variant) << ',' << agg.query_count << ',' << agg.total_messages << ','
            << agg.min_messages << ',' << agg.max_messages << ',' << agg.median_x2 << ','
            << cmp.leq_count(agg.variant) << ',' << (in_pair ? cmp.rows.size() : 0) << '\n';
    }
}

inline Json comparison_to_json(const Comparison& cmp) {
    Json j;
    j["rows"] = Json::array();
    for (const ComparisonRow& row : cmp.rows) {
        Json rj;
        rj["query_id"] = row.query_id;
        rj["standard_messages"] = row.standard_messages;
        rj["inverted_messages"] = row.inverted_messages;
        rj["winner"] = row.winner > 0 ? "inverted" : row.winner < 0 ? "standard" : "tie";
        j["rows"].push_back(std::move(rj));
    }
    j["aggregates"] = Json::array();
    for (const VariantAggregate& agg : cmp.aggregates) {
        Json aj;
        aj["variant"] = to_string(agg.variant);
        aj["query_count"] = agg.query_count;
        aj["total_messages"] = agg.total_messages;
        aj["min_messages"] = agg.min_messages;
        aj["max_messages"] = agg.max_messages;
        aj["median_x2"] = agg.median_x2;
        bool in_pair =
            agg.variant == Variant::MultiStandard || agg.variant == Variant::Inverted;
        aj["wins_leq"] = cmp.leq_count(agg.variant);
        aj["compared"] = in_pair ? cmp.rows.size() : 0;
        j["aggregates"].push_back(std::move(aj));
    }
    j["standard_wins"] = cmp.standard_wins;
    j["ties"] = cmp.ties;
    j["inverted_wins"] = cmp.inverted_wins;
    return j;
}

}  // namespace skipgraph
