// sgsim — z-order skip-graph simulator.
//
// Subcommands:
//   zorder encode <c0> <c1> ... --k K --b B   print the z-order key
//   zorder decode <bits> --k K --b B          print the coordinates
//   run <scenario.json>                       execute a scenario
//   validate <scenario.json>                  build overlays, check structure
//   compare <scenario.json>                   standard vs. inverted messages
//
// Exit codes: 0 success (run: all oracles matched), 1 completed with
// correctness violations, 2 bad input (usage, parse or validation errors).

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skipgraph/skipgraph.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;

struct GlobalFlags {
    std::string output;       // empty = stdout
    std::string format = "csv";
    bool trace = false;
    bool seed_set = false;
    std::uint64_t seed = 0;
};

// Writes to the named file, or to stdout when no --output was given.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return kExitOk;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return kExitBadInput;
    }
    fn(out);
    return kExitOk;
}

skipgraph::Scenario load(const std::string& file, const GlobalFlags& flags) {
    skipgraph::Scenario sc = skipgraph::load_scenario_file(file);
    if (flags.seed_set)
        sc.seed = flags.seed;
    auto problems = skipgraph::check_scenario(sc);
    if (!problems.empty()) {
        std::string all;
        for (const auto& p : problems)
            all += (all.empty() ? "" : "; ") + p;
        throw skipgraph::ScenarioError("", all);
    }
    return sc;
}

int cmd_zorder_encode(const std::vector<std::uint64_t>& coords, unsigned k, unsigned b) {
    skipgraph::ZKey key = skipgraph::encode(coords, k, b);
    std::cout << key.value.str() << " (" << key.value.to_uint() << ")\n";
    return kExitOk;
}

int cmd_zorder_decode(const std::string& bits, unsigned k, unsigned b) {
    skipgraph::ZKey key{skipgraph::BitString::parse(bits), k, b};
    skipgraph::Coords coords = skipgraph::decode(key);
    std::cout << "(";
    for (std::size_t i = 0; i < coords.size(); ++i)
        std::cout << (i ? "," : "") << coords[i];
    std::cout << ")\n";
    return kExitOk;
}

int cmd_run(const std::string& file, const GlobalFlags& flags) {
    skipgraph::Scenario sc = load(file, flags);
    skipgraph::ScenarioRun run = skipgraph::run_scenario(sc);

    int rc = with_output(flags.output, [&](std::ostream& out) {
        if (flags.format == "json")
            out << skipgraph::run_to_json(sc, run).dump(2) << "\n";
        else
            skipgraph::write_metrics_csv(out, run);
    });
    if (rc != kExitOk)
        return rc;

    if (flags.trace) {
        std::string tpath = (flags.output.empty() ? "sgsim" : flags.output) + ".traces.json";
        std::ofstream tout(tpath, std::ios::binary);
        if (!tout) {
            std::cerr << "error: cannot write " << tpath << "\n";
            return kExitBadInput;
        }
        tout << skipgraph::traces_to_json(sc, run).dump(2) << "\n";
    }

    for (const auto& vr : run.variants)
        for (const auto& qr : vr.queries)
            if (!qr.metrics.oracle_match) {
                std::cerr << "oracle mismatch: query \"" << qr.metrics.query_id << "\" on "
                          << skipgraph::to_string(vr.variant) << "\n";
                return kExitViolation;
            }
    return kExitOk;
}

int cmd_validate(const std::string& file, const std::string& only_variant,
                 const GlobalFlags& flags) {
    skipgraph::Scenario sc = load(file, flags);

    std::vector<skipgraph::Variant> targets;
    if (only_variant.empty()) {
        targets = sc.variants;
    } else {
        auto v = skipgraph::variant_from_string(only_variant);
        if (!v)
            throw skipgraph::ScenarioError("--variant", "unknown variant \"" + only_variant + "\"");
        targets.push_back(*v);
    }

    std::size_t total = 0;
    for (skipgraph::Variant v : targets) {
        skipgraph::Overlay ov =
            skipgraph::build(v, sc.nodes, sc.k, sc.b, sc.p_for(v), sc.seed, sc.overrides);
        auto violations = skipgraph::validate(ov);
        std::cout << skipgraph::to_string(v) << ": " << ov.nodes.size() << " nodes, "
                  << ov.levels.size() << " levels, " << violations.size() << " violations\n";
        for (const auto& viol : violations)
            std::cout << "  level " << viol.level << " [" << viol.list_prefix << "] " << viol.rule
                      << ": " << viol.detail << "\n";
        total += violations.size();
    }
    return total == 0 ? kExitOk : kExitViolation;
}

int cmd_compare(const std::string& file, const GlobalFlags& flags) {
    skipgraph::Scenario sc = load(file, flags);
    if (sc.variants.size() < 2)
        throw skipgraph::ScenarioError("variants", "compare needs at least two variants");

    skipgraph::ScenarioRun run = skipgraph::run_scenario(sc);
    skipgraph::Comparison cmp = skipgraph::compare_variants(run);
    return with_output(flags.output, [&](std::ostream& out) {
        if (flags.format == "json")
            out << skipgraph::comparison_to_json(cmp).dump(2) << "\n";
        else
            skipgraph::write_comparison_csv(out, cmp);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"z-order skip-graph range-query simulator"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalFlags flags;
    app.add_option("--seed", flags.seed, "override the scenario seed")
        ->each([&](const std::string&) { flags.seed_set = true; });
    app.add_option("--format", flags.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", flags.output, "write results to this file instead of stdout");
    app.add_flag("--trace", flags.trace, "also write <output>.traces.json with full traces");

    // zorder encode/decode
    auto* zorder = app.add_subcommand("zorder", "z-order codec helpers");
    zorder->require_subcommand(1);
    std::vector<std::uint64_t> coords;
    std::string bits;
    unsigned k_enc = 0, b_enc = 0, k_dec = 0, b_dec = 0;
    auto* enc = zorder->add_subcommand("encode", "interleave coordinates into a key");
    enc->add_option("coords", coords, "one coordinate per dimension")->required();
    enc->add_option("--k", k_enc, "dimensions")->required();
    enc->add_option("--b", b_enc, "bits per coordinate")->required();
    auto* dec = zorder->add_subcommand("decode", "split a key back into coordinates");
    dec->add_option("key", bits, "key as a 0/1 string")->required();
    dec->add_option("--k", k_dec, "dimensions")->required();
    dec->add_option("--b", b_dec, "bits per coordinate")->required();

    // scenario subcommands
    std::string run_file, validate_file, compare_file, only_variant;
    auto* run = app.add_subcommand("run", "execute a scenario and report per-query metrics");
    run->add_option("scenario", run_file, "scenario JSON file")->required();
    auto* validate = app.add_subcommand("validate", "build overlays and check every invariant");
    validate->add_option("scenario", validate_file, "scenario JSON file")->required();
    validate->add_option("--variant", only_variant, "check just this variant");
    auto* compare = app.add_subcommand("compare", "standard vs. inverted message counts");
    compare->add_option("scenario", compare_file, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the usage error
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (enc->parsed())
            return cmd_zorder_encode(coords, k_enc, b_enc);
        if (dec->parsed())
            return cmd_zorder_decode(bits, k_dec, b_dec);
        if (run->parsed())
            return cmd_run(run_file, flags);
        if (validate->parsed())
            return cmd_validate(validate_file, only_variant, flags);
        if (compare->parsed())
            return cmd_compare(compare_file, flags);
    } catch (const skipgraph::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;  // unreachable: require_subcommand guarantees a branch
}
