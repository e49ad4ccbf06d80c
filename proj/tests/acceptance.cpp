// Acceptance runner: one self-contained check per criterion, one PASS/FAIL
// line each, exit code = number of failures. Time budgets and thresholds are
// pinned as constants below. SGSIM_BIN and SCENARIO_DIR come from the build.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <skipgraph/skipgraph.hpp>

namespace {

using namespace skipgraph;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// --- pinned tolerances -----------------------------------------------------
constexpr double kTableBudgetSec = 1.0;       // criterion 1
constexpr double kRoundtripBudgetSec = 5.0;   // criterion 7
constexpr double kOracleBudgetSec = 60.0;     // criterion 6
constexpr std::size_t kOracleRounds = 350;    // x3 variants = 1050 pairs >= 1000
constexpr std::size_t kFuzzBuilds = 1000;     // criterion 8
constexpr std::size_t kBoundNodes = 256;      // criterion 9
constexpr std::size_t kBoundQueries = 500;    // criterion 9
constexpr std::size_t kBoundMinWithin = 475;  // 95% of 500
// Message bound for criterion 9: messages <= 4*(log2(n) + m) + 8 with
// n = 256 (log2 = 8 exactly) and m = result size.
inline std::size_t message_bound(std::size_t m) { return 4 * (8 + m) + 8; }

// --- tiny check collector ----------------------------------------------------
struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& msg) {
        if (ok) {
            ok = false;
            detail = msg;
        }
    }
    void expect(bool cond, const std::string& msg) {
        if (!cond)
            fail(msg);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --- shared fixtures ---------------------------------------------------------

// Eight scalar readings with hand-picked membership vectors giving a fully
// known level structure.
std::vector<NodeInput> scalar_census() {
    const std::uint64_t readings[] = {2, 3, 4, 7, 10, 12, 17, 20};
    std::vector<NodeInput> out;
    for (NodeId id = 1; id <= 8; ++id)
        out.push_back(NodeInput{id, std::nullopt, readings[id - 1]});
    return out;
}

Overrides scalar_overrides() {
    Overrides o;
    const char* mv[] = {"010", "111", "001", "110", "010", "001", "101", "010"};
    for (NodeId id = 1; id <= 8; ++id)
        o.mvecs[id] = BitString::parse(mv[id - 1]);
    return o;
}

// Eight nodes on an 8x8 grid with hand-picked membership vectors and random
// keys, giving fully known structures for both coordinate variants.
std::vector<NodeInput> grid_census() {
    const Coords cs[] = {{0, 1}, {2, 0}, {2, 1}, {0, 7}, {0, 7}, {6, 1}, {5, 5}, {7, 6}};
    std::vector<NodeInput> out;
    for (NodeId id = 1; id <= 8; ++id)
        out.push_back(NodeInput{id, cs[id - 1], std::nullopt});
    return out;
}

Overrides grid_overrides() {
    Overrides o;
    const char* mv[] = {"000101", "011011", "100110", "000100",
                        "110001", "110101", "110100", "010011"};
    const char* ky[] = {"0101000", "1000110", "0000101", "0001101",
                        "0100101", "0011101", "0111111", "1011001"};
    for (NodeId id = 1; id <= 8; ++id) {
        o.mvecs[id] = BitString::parse(mv[id - 1]);
        o.keys[id] = BitString::parse(ky[id - 1]);
    }
    return o;
}

std::set<std::uint64_t> readings_of(const Overlay& ov, const std::set<NodeId>& ids) {
    std::set<std::uint64_t> out;
    for (NodeId id : ids)
        out.insert(*ov.node(id).reading);
    return out;
}

std::set<std::uint64_t> list_readings(const Overlay& ov, int level, const char* prefix) {
    const auto& lists = ov.levels.at(level).lists;
    auto it = lists.find(BitString::parse(prefix));
    if (it == lists.end())
        return {};
    std::set<std::uint64_t> out;
    for (NodeId id : it->second)
        out.insert(*ov.node(id).reading);
    return out;
}

std::string joined(const std::set<std::uint64_t>& vals) {
    std::ostringstream ss;
    for (auto v : vals)
        ss << v << " ";
    return ss.str();
}

// --- criteria ----------------------------------------------------------------

// 1. Every worked (coordinate -> z-key) pair encodes bit-exactly, plus a
//    three-dimensional example, and each key decodes back.
void c1_key_table(Check& chk) {
    struct Row {
        Coords c;
        const char* key;
    };
    const Row rows[] = {
        {{0, 1}, "000001"}, {{2, 0}, "001000"}, {{2, 1}, "001001"}, {{0, 7}, "010101"},
        {{0, 7}, "010101"}, {{6, 1}, "101001"}, {{5, 5}, "110011"}, {{7, 6}, "111110"},
    };
    for (const Row& r : rows) {
        ZKey z = encode(r.c, 2, 3);
        chk.expect(z.value.str() == r.key,
                   "encode(" + std::to_string(r.c[0]) + "," + std::to_string(r.c[1]) +
                       ") gave " + z.value.str() + ", expected " + r.key);
        chk.expect(decode(z) == r.c, std::string("decode(") + r.key + ") did not roundtrip");
    }
    ZKey z3 = encode({1, 2, 5}, 3, 3);
    chk.expect(z3.value.str() == "001010101",
               "encode(1,2,5) gave " + z3.value.str() + ", expected 001010101");
}

// 2. The seeded scalar overlay reproduces the golden level lists and passes
//    validation.
void c2_scalar_structure(Check& chk) {
    Overlay ov = build(Variant::UniStandard, scalar_census(), 1, 5, 1, 1, scalar_overrides());
    chk.expect(ov.levels.size() >= 3, "overlay has fewer than 3 levels");

    chk.expect(ov.levels[1].lists.size() == 2, "level 1 does not hold exactly 2 lists");
    chk.expect(list_readings(ov, 1, "1") == std::set<std::uint64_t>{3, 7, 17},
               "L1 list 1 holds { " + joined(list_readings(ov, 1, "1")) + "}");
    chk.expect(list_readings(ov, 1, "0") == std::set<std::uint64_t>{2, 4, 10, 12, 20},
               "L1 list 0 holds { " + joined(list_readings(ov, 1, "0")) + "}");

    chk.expect(list_readings(ov, 2, "00") == std::set<std::uint64_t>{4, 12},
               "L2 list 00 holds { " + joined(list_readings(ov, 2, "00")) + "}");
    chk.expect(list_readings(ov, 2, "01") == std::set<std::uint64_t>{2, 10, 20},
               "L2 list 01 holds { " + joined(list_readings(ov, 2, "01")) + "}");
    chk.expect(list_readings(ov, 2, "10") == std::set<std::uint64_t>{17},
               "L2 list 10 holds { " + joined(list_readings(ov, 2, "10")) + "}");
    chk.expect(list_readings(ov, 2, "11") == std::set<std::uint64_t>{3, 7},
               "L2 list 11 holds { " + joined(list_readings(ov, 2, "11")) + "}");

    auto violations = validate(ov);
    chk.expect(violations.empty(),
               violations.empty() ? "" : "validate: " + violations.front().rule + " — " +
                                             violations.front().detail);
}

// 3. Scalar range [2,4] injected at the key-7 node returns exactly {2,3,4},
//    hopping 7 -> 3 on level 2 and dropping to level 0 at the key-3 node.
void c3_scalar_replay(Check& chk) {
    Overlay ov = build(Variant::UniStandard, scalar_census(), 1, 5, 1, 1, scalar_overrides());
    RangeQuery q;
    q.kind = QueryKind::Scalar;
    q.scalar_lo = 2;
    q.scalar_hi = 4;
    q.inject_at = 4;  // the node reading 7
    QueryTrace t = standard_range_query(ov, q);

    chk.expect(readings_of(ov, t.exact_results) == std::set<std::uint64_t>{2, 3, 4},
               "results are { " + joined(readings_of(ov, t.exact_results)) + "}, expected 2 3 4");
    chk.expect(std::find(t.hops.begin(), t.hops.end(), Hop{4, 2, 2}) != t.hops.end(),
               "trace lacks the level-2 hop from key 7 to key 3");
    chk.expect(std::find(t.level_moves.begin(), t.level_moves.end(), LevelMove{2, 2, 0}) !=
                   t.level_moves.end(),
               "trace lacks the drop to level 0 at the key-3 node");
    chk.expect(t.terminated_by == Termination::RangeExhausted,
               "unexpected termination cause");
}

// 4. Rectangle (2,0)-(3,1) converts to z-interval [001000, 001011] and the
//    standard query returns exactly the keys 001000 and 001001, with the
//    exact view equal to the raw view.
void c4_rect_replay(Check& chk) {
    auto [zlo, zhi] = rect_to_zrange({2, 0}, {3, 1}, 2, 3);
    chk.expect(zlo.value.str() == "001000" && zhi.value.str() == "001011",
               "z-range is (" + zlo.value.str() + "," + zhi.value.str() + ")");

    Overlay ov = build(Variant::MultiStandard, grid_census(), 2, 3, 1, 1, grid_overrides());
    RangeQuery q;
    q.kind = QueryKind::Rect;
    q.rect_lo = {2, 0};
    q.rect_hi = {3, 1};
    q.inject_at = 8;
    QueryTrace t = standard_range_query(ov, q);

    std::set<std::string> keys;
    for (NodeId id : t.results)
        keys.insert(ov.node(id).key.str());
    chk.expect(keys == std::set<std::string>{"001000", "001001"},
               "raw results hold " + std::to_string(keys.size()) + " keys");
    chk.expect(t.exact_results == t.results, "exact view differs from raw view");
}

// 5. On the prefix-partitioned overlay (p=2) the same rectangle yields query
//    prefix 0010 and notifies exactly the nodes keyed 5 and 70 via a full
//    prefix match; shifting the rectangle to prefix 0011 finds no ascent and
//    returns nothing.
void c5_inverted_replay(Check& chk) {
    Overlay ov = build(Variant::Inverted, grid_census(), 2, 3, 2, 1, grid_overrides());

    {
        auto [zlo, zhi] = rect_to_zrange({2, 0}, {3, 1}, 2, 3);
        chk.expect(range_prefix(zlo, zhi).str() == "0010",
                   "hit prefix is " + range_prefix(zlo, zhi).str());
        RangeQuery q;
        q.kind = QueryKind::Rect;
        q.rect_lo = {2, 0};
        q.rect_hi = {3, 1};
        q.inject_at = 8;
        QueryTrace t = inverted_prefix_query(ov, q);
        std::set<std::uint64_t> keys;
        for (NodeId id : t.results)
            keys.insert(ov.node(id).key.to_uint());
        chk.expect(keys == std::set<std::uint64_t>{5, 70},
                   "hit notified " + std::to_string(keys.size()) + " nodes");
        chk.expect(t.terminated_by == Termination::FullPrefixMatch,
                   std::string("hit terminated by ") + to_string(t.terminated_by));
    }
    {
        auto [zlo, zhi] = rect_to_zrange({2, 2}, {3, 3}, 2, 3);
        chk.expect(range_prefix(zlo, zhi).str() == "0011",
                   "miss prefix is " + range_prefix(zlo, zhi).str());
        RangeQuery q;
        q.kind = QueryKind::Rect;
        q.rect_lo = {2, 2};
        q.rect_hi = {3, 3};
        q.inject_at = 8;
        QueryTrace t = inverted_prefix_query(ov, q);
        chk.expect(t.results.empty(), "miss returned results");
        chk.expect(t.terminated_by == Termination::NoAscentFound,
                   std::string("miss terminated by ") + to_string(t.terminated_by));
    }
}

// 6. Randomized scenarios: exact result sets equal the linear-scan oracle on
//    every variant; zero mismatches allowed.
void c6_oracle_equivalence(Check& chk) {
    std::mt19937_64 rng(20260819);
    std::size_t pairs = 0;
    std::size_t mismatches = 0;
    std::string first;

    auto note = [&](const std::string& what, unsigned k, unsigned b, std::size_t n) {
        ++mismatches;
        if (first.empty())
            first = what + " (k=" + std::to_string(k) + " b=" + std::to_string(b) +
                    " n=" + std::to_string(n) + ")";
    };

    for (std::size_t round = 0; round < kOracleRounds; ++round) {
        const unsigned k = 1 + round % 3;
        const unsigned b = 1 + rng() % 5;
        const std::size_t n = 1 + rng() % 64;
        const std::uint64_t side = 1ull << b;

        std::vector<NodeInput> census;
        for (NodeId id = 1; id <= n; ++id) {
            Coords c(k);
            for (auto& v : c)
                v = rng() % side;
            census.push_back(NodeInput{id, c, rng() % 1024});
        }
        const std::uint64_t seed = rng();
        auto rand_id = [&] { return 1 + rng() % n; };

        {
            Overlay ov = build(Variant::UniStandard, census, k, b, 1, seed);
            RangeQuery q;
            q.kind = QueryKind::Scalar;
            q.scalar_lo = rng() % 1100;
            q.scalar_hi = rng() % 1100;
            if (q.scalar_lo > q.scalar_hi)
                std::swap(q.scalar_lo, q.scalar_hi);
            q.inject_at = rand_id();
            ++pairs;
            if (standard_range_query(ov, q).exact_results != oracle(census, q))
                note("scalar mismatch", k, b, n);
        }

        RangeQuery rect;
        rect.kind = QueryKind::Rect;
        rect.rect_lo.resize(k);
        rect.rect_hi.resize(k);
        for (unsigned d = 0; d < k; ++d) {
            std::uint64_t a = rng() % side, c = rng() % side;
            rect.rect_lo[d] = std::min(a, c);
            rect.rect_hi[d] = std::max(a, c);
        }

        {
            Overlay ov = build(Variant::MultiStandard, census, k, b, 1, seed);
            RangeQuery q = rect;
            q.inject_at = rand_id();
            ++pairs;
            if (standard_range_query(ov, q).exact_results != oracle(census, q))
                note("rectangle mismatch", k, b, n);
        }
        {
            const unsigned p = (round % 2) ? k : 1;
            Overlay ov = build(Variant::Inverted, census, k, b, p, seed);
            RangeQuery q = rect;
            q.inject_at = rand_id();
            ++pairs;
            if (inverted_prefix_query(ov, q).exact_results != oracle(census, q))
                note("prefix-ascent mismatch", k, b, n);
        }
    }

    chk.expect(pairs >= 1000, "only " + std::to_string(pairs) + " pairs ran");
    chk.expect(mismatches == 0,
               std::to_string(mismatches) + " of " + std::to_string(pairs) +
                   " mismatched; first: " + first);
}

// 7. decode(encode(c)) == c exhaustively, for both readings of the grid size
//    (k=2 b=4: 256 points, and k=2 b=8: 65,536 points), plus axis
//    monotonicity spot checks.
void c7_codec_roundtrip(Check& chk) {
    for (unsigned b : {4u, 8u}) {
        const std::uint64_t side = 1ull << b;
        for (std::uint64_t x = 0; x < side && chk.ok; ++x) {
            for (std::uint64_t y = 0; y < side; ++y) {
                Coords c{x, y};
                if (decode(encode(c, 2, b)) != c) {
                    chk.fail("roundtrip failed at (" + std::to_string(x) + "," +
                             std::to_string(y) + ") with b=" + std::to_string(b));
                    break;
                }
            }
        }
    }

    std::mt19937_64 rng(1337);
    for (int i = 0; i < 500 && chk.ok; ++i) {
        Coords c{rng() % 255, rng() % 255};  // headroom for +1
        unsigned dim = rng() % 2;
        Coords c2 = c;
        ++c2[dim];
        chk.expect(encode(c, 2, 8).value.to_uint() < encode(c2, 2, 8).value.to_uint(),
                   "key not monotone along axis " + std::to_string(dim) + " at (" +
                       std::to_string(c[0]) + "," + std::to_string(c[1]) + ")");
    }
}

// 8. Random builds across all variants and both level-width conventions
//    (p=1 and p=k) pass validation with zero violations.
void c8_structural_fuzz(Check& chk) {
    std::mt19937_64 rng(987654321);
    std::size_t violations = 0;
    std::string first;

    for (std::size_t i = 0; i < kFuzzBuilds; ++i) {
        const unsigned k = 1 + rng() % 3;
        const unsigned b = 1 + rng() % 5;
        const std::size_t n = 1 + rng() % 48;
        const Variant v = static_cast<Variant>(i % 3);
        const unsigned p = (i % 2) ? k : 1;

        std::vector<NodeInput> census;
        for (NodeId id = 1; id <= n; ++id) {
            Coords c(k);
            for (auto& x : c)
                x = rng() % (1ull << b);
            census.push_back(NodeInput{id, c, rng() % 512});
        }
        Overlay ov = build(v, census, k, b, p, rng());
        auto found = validate(ov);
        violations += found.size();
        if (!found.empty() && first.empty())
            first = std::string(to_string(v)) + " build " + std::to_string(i) + ": " +
                    found.front().rule + " — " + found.front().detail;
    }
    chk.expect(violations == 0,
               std::to_string(violations) + " violations across " +
                   std::to_string(kFuzzBuilds) + " builds; first: " + first);
}

// 9. On 256 nodes, at least 95% of 500 random scalar range queries satisfy
//    messages <= 4*(log2 n + m) + 8; the standard-vs-inverted comparison
//    tables are emitted and their aggregates recompute from their rows.
void c9_message_bound(Check& chk) {
    std::mt19937_64 rng(424242);
    std::vector<NodeInput> census;
    for (NodeId id = 1; id <= kBoundNodes; ++id)
        census.push_back(NodeInput{id, std::nullopt, rng() % 65536});
    Overlay ov = build(Variant::UniStandard, census, 1, 8, 1, 7);

    std::size_t within = 0;
    std::size_t worst_over = 0;
    for (std::size_t i = 0; i < kBoundQueries; ++i) {
        RangeQuery q;
        q.kind = QueryKind::Scalar;
        q.scalar_lo = rng() % 65536;
        q.scalar_hi = rng() % 65536;
        if (q.scalar_lo > q.scalar_hi)
            std::swap(q.scalar_lo, q.scalar_hi);
        q.inject_at = 1 + rng() % kBoundNodes;
        QueryTrace t = standard_range_query(ov, q);
        const std::size_t bound = message_bound(t.results.size());
        if (t.message_count() <= bound)
            ++within;
        else
            worst_over = std::max(worst_over, t.message_count() - bound);
    }
    chk.expect(within >= kBoundMinWithin,
               std::to_string(within) + "/" + std::to_string(kBoundQueries) +
                   " within bound (need " + std::to_string(kBoundMinWithin) +
                   "); worst overshoot " + std::to_string(worst_over));

    // Comparison-table consistency on a rectangle workload.
    Scenario sc;
    sc.name = "consistency";
    sc.k = 2;
    sc.b = 4;
    sc.seed = 99;
    sc.variants = {Variant::MultiStandard, Variant::Inverted};
    for (NodeId id = 1; id <= 48; ++id) {
        Coords c{rng() % 16, rng() % 16};
        sc.nodes.push_back(NodeInput{id, c, std::nullopt});
    }
    for (int i = 0; i < 25; ++i) {
        RangeQuery q;
        q.kind = QueryKind::Rect;
        q.rect_lo.resize(2);
        q.rect_hi.resize(2);
        for (unsigned d = 0; d < 2; ++d) {
            std::uint64_t a = rng() % 16, b2 = rng() % 16;
            q.rect_lo[d] = std::min(a, b2);
            q.rect_hi[d] = std::max(a, b2);
        }
        q.inject_at = 1 + rng() % 48;
        sc.queries.push_back(ScenarioQuery{"q" + std::to_string(i), q});
    }
    ScenarioRun run = run_scenario(sc);
    Comparison cmp = compare_variants(run);

    chk.expect(cmp.rows.size() == 25, "expected 25 comparison rows, got " +
                                          std::to_string(cmp.rows.size()));
    std::size_t std_wins = 0, ties = 0, inv_wins = 0;
    std::vector<QueryRun> std_runs, inv_runs;
    for (const ComparisonRow& r : cmp.rows) {
        const int want = r.inverted_messages < r.standard_messages    ? 1
                         : r.inverted_messages > r.standard_messages ? -1
                                                                      : 0;
        chk.expect(r.winner == want, "row " + r.query_id + " has inconsistent winner");
        (want > 0 ? inv_wins : want < 0 ? std_wins : ties) += 1;
        QueryRun s, v;
        s.metrics.messages = r.standard_messages;
        v.metrics.messages = r.inverted_messages;
        std_runs.push_back(s);
        inv_runs.push_back(v);
    }
    chk.expect(cmp.standard_wins == std_wins && cmp.ties == ties && cmp.inverted_wins == inv_wins,
               "win tallies do not recompute from rows");
    chk.expect(cmp.standard_wins + cmp.ties + cmp.inverted_wins == cmp.rows.size(),
               "win tallies do not cover every row");
    chk.expect(cmp.leq_count(Variant::MultiStandard) == std_wins + ties &&
                   cmp.leq_count(Variant::Inverted) == inv_wins + ties,
               "win-fraction counts do not recompute from rows");

    VariantAggregate again_std = aggregate_messages(Variant::MultiStandard, std_runs);
    VariantAggregate again_inv = aggregate_messages(Variant::Inverted, inv_runs);
    for (const VariantAggregate& agg : cmp.aggregates) {
        const VariantAggregate& want = agg.variant == Variant::Inverted ? again_inv : again_std;
        chk.expect(agg == want, std::string(to_string(agg.variant)) +
                                    " aggregate does not recompute from rows");
    }

    fs::create_directories("acc_tmp");
    std::ofstream out("acc_tmp/comparison.csv", std::ios::binary);
    write_comparison_csv(out, cmp);
    out.close();
    const std::string emitted = slurp("acc_tmp/comparison.csv");
    chk.expect(emitted.find("query_id,standard_messages,inverted_messages,winner") !=
                       std::string::npos &&
                   emitted.find("wins_leq,compared") != std::string::npos,
               "comparison tables were not emitted");
}

// 10. Running the shipped scenarios twice through the command-line tool
//     produces byte-identical CSV and trace files.
void c10_determinism(Check& chk) {
    fs::create_directories("acc_tmp");
    auto run_cli = [&](const std::string& args) {
        std::string cmd = std::string("\"") + SGSIM_BIN + "\" " + args +
                          " > acc_tmp/cli_out.txt 2> acc_tmp/cli_err.txt";
        int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    };

    for (const char* name : {"scalar_demo.json", "rect_demo.json"}) {
        const std::string scenario = std::string("\"") + SCENARIO_DIR + "/" + name + "\"";
        for (const char* tag : {"one", "two"}) {
            int code = run_cli("run " + scenario + " --output acc_tmp/" + tag +
                               ".csv --trace");
            chk.expect(code == 0, std::string(name) + " run '" + tag + "' exited " +
                                      std::to_string(code));
        }
        chk.expect(slurp("acc_tmp/one.csv") == slurp("acc_tmp/two.csv"),
                   std::string(name) + ": CSV outputs differ between runs");
        chk.expect(!slurp("acc_tmp/one.csv").empty(), std::string(name) + ": CSV output empty");
        chk.expect(slurp("acc_tmp/one.csv.traces.json") == slurp("acc_tmp/two.csv.traces.json"),
                   std::string(name) + ": trace outputs differ between runs");
        chk.expect(!slurp("acc_tmp/one.csv.traces.json").empty(),
                   std::string(name) + ": trace output empty");
    }
}

struct Criterion {
    int id;
    const char* label;
    void (*fn)(Check&);
    double budget_sec;  // 0 = untimed
};

const Criterion kCriteria[] = {
    {1, "coordinate-to-key table encodes bit-exactly", c1_key_table, kTableBudgetSec},
    {2, "scalar overlay reproduces the golden level lists", c2_scalar_structure, 0},
    {3, "scalar range query replays the golden trace", c3_scalar_replay, 0},
    {4, "rectangle query returns exactly the covered z-keys", c4_rect_replay, 0},
    {5, "prefix-ascent query replays the golden hit and miss", c5_inverted_replay, 0},
    {6, "randomized queries equal the linear-scan oracle", c6_oracle_equivalence,
     kOracleBudgetSec},
    {7, "codec roundtrip is exhaustive and axis-monotone", c7_codec_roundtrip,
     kRoundtripBudgetSec},
    {8, "random builds validate with zero violations", c8_structural_fuzz, 0},
    {9, "messages stay within the logarithmic bound; comparisons consistent",
     c9_message_bound, 0},
    {10, "repeated scenario runs are byte-identical", c10_determinism, 0},
};

}  // namespace

int main() {
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        Check chk;
        const auto t0 = Clock::now();
        try {
            c.fn(chk);
        } catch (const std::exception& e) {
            chk.fail(std::string("exception: ") + e.what());
        }
        const double sec = std::chrono::duration<double>(Clock::now() - t0).count();
        if (c.budget_sec > 0 && sec > c.budget_sec)
            chk.fail("exceeded the " + std::to_string(c.budget_sec) + "s budget");

        std::ostringstream line;
        line << (chk.ok ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.label
             << "  (" << std::fixed << std::setprecision(2) << sec << "s)";
        if (!chk.ok)
            line << "\n      " << chk.detail;
        std::cout << line.str() << "\n";
        failures += chk.ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
