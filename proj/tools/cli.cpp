#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "itr/acceptance.hpp"
#include "itr/constructor.hpp"
#include "itr/dot.hpp"
#include "itr/errors.hpp"
#include "itr/imc.hpp"
#include "itr/recognizer.hpp"
#include "itr/serialize.hpp"
#include "itr/version.hpp"

namespace itr::cli {

namespace {

struct Settings {
    std::string input;
    std::string output;
    std::string trace;
    std::string replay;
    std::string dot;
    std::string profile = "quick";
    int delta = 1;
    std::optional<int> recognize_delta;
    int iterations = 0;
    int base_blocks = 1;
    std::uint64_t seed = 0;
    bool verify = true;
    bool general = false;
    std::optional<std::uint64_t> cap;
};

OracleOptions oracle_options(const Settings& s) {
    OracleOptions opts;
    if (const char* env = std::getenv("ITR_ENUM_CAP"); env && *env) {
        try {
            std::size_t used = 0;
            opts.cap = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::logic_error&) {
            throw InvalidArgument(std::string("ITR_ENUM_CAP is not a nonnegative integer: ") + env);
        }
    }
    if (s.cap) opts.cap = *s.cap;
    return opts;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) out << text;
    else write_text_file(path, text);
}

Instance load(const Settings& s) {
    if (s.input.empty()) throw InvalidArgument("an input instance is required (--input)");
    return read_instance_file(s.input);
}

int generate(const Settings& s, std::ostream& out) {
    const auto opts = oracle_options(s);
    Instance instance;
    ConstructionTrace trace;
    if (!s.replay.empty()) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(read_text(s.replay));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(0, s.replay + ": " + e.what());
        }
        trace = construction_trace_from_json(doc);
        instance = replay(trace, s.verify, opts);
    } else {
        auto generated = sample_bad_instance(s.delta, s.base_blocks, s.iterations, s.seed, s.verify, opts);
        instance = std::move(generated.instance);
        trace = std::move(generated.trace);
    }
    emit(s.output, to_canonical_json(instance), out);
    std::string trace_path = s.trace;
    if (trace_path.empty() && !s.output.empty()) trace_path = s.output + ".trace.json";
    if (!trace_path.empty()) write_text_file(trace_path, to_json(trace).dump(2) + "\n");
    return kOk;
}

int recognize_cmd(const Settings& s, std::ostream& out) {
    const auto instance = load(s);
    RecognizeOptions ro;
    ro.delta = s.recognize_delta;
    const auto rec = s.general ? recognize_general(instance, oracle_options(s), ro) : recognize(instance, ro);
    emit(s.output, to_json(rec).dump(2) + "\n", out);
    return rec.yes ? kOk : kNo;
}

int analyze(const Settings& s, std::ostream& out) {
    const auto instance = load(s);
    const auto opts = oracle_options(s);
    const auto rg = build_rg(instance, opts);
    nlohmann::json doc = {
        {"vertices", instance.vertex_count()},
        {"edges", instance.graph().edge_count()},
        {"blocks", instance.block_count()},
        {"max_degree", instance.graph().max_degree()},
        {"its", rg.size()},
        {"rg_edges", rg.edge_count()},
        {"components", rg.component_count()},
        {"status", to_string(rg_status(rg))},
        {"minimally_rgd", is_minimally_rgd(instance, opts)},
        {"minimally_nit", is_minimally_nit(instance, opts)},
    };
    emit(s.output, doc.dump(2) + "\n", out);
    return kOk;
}

int certify_cmd(const Settings& s, std::ostream& out) {
    const auto instance = load(s);
    const auto cert = certify(instance, oracle_options(s));
    emit(s.output, to_json(cert, instance).dump(2) + "\n", out);
    if (!s.dot.empty()) write_text_file(s.dot, block_forest_to_dot(block_forest(instance, cert.grown.tuple)));
    const auto& r = cert.report;
    const bool holds = r.feasible.all() && r.is_imc && r.all_claims() && cert.witnesses && cert.witnesses->complete();
    return holds ? kOk : kNo;
}

int verify_cmd(const Settings& s, std::ostream& out) {
    const auto profile = acceptance::parse_profile(s.profile);
    if (!profile) throw InvalidArgument("unknown profile '" + s.profile + "' (expected quick or full)");
    int passed = 0, gaps = 0, failed = 0;
    const auto results = acceptance::run_all(*profile, s.seed, [&](const acceptance::Result& r) {
        out << acceptance::format_line(r) << "\n" << std::flush;
        (r.passed ? passed : r.documented_gap ? gaps : failed)++;
    });
    out << "profile " << acceptance::to_string(*profile) << ": " << passed << " passed, " << gaps
        << " failed through the documented gap, " << failed << " failed\n";
    return acceptance::acceptable(results) ? kOk : kNo;
}

int export_dot(const Settings& s, std::ostream& out) {
    const auto instance = load(s);
    const auto rg = build_rg(instance, oracle_options(s));
    if (s.output.empty()) {
        out << instance_to_dot(instance) << rg_to_dot(rg);
    } else {
        write_text_file(s.output + ".graph.dot", instance_to_dot(instance));
        write_text_file(s.output + ".rg.dot", rg_to_dot(rg));
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Independent transversals and their reconfiguration graphs", std::string(kToolName)};
    app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    app.add_option("--cap", s.cap, "Largest product of block sizes to enumerate (env ITR_ENUM_CAP)");

    auto input_opt = [&](CLI::App* sub) { sub->add_option("input,--input,-i", s.input, "Instance JSON file"); };
    auto output_opt = [&](CLI::App* sub, const char* what) { sub->add_option("--output,-o", s.output, what); };

    auto* gen = app.add_subcommand("generate", "Generate a bad instance by repeated gluing");
    gen->add_option("--delta", s.delta, "Side size of every K_{d,d}")->check(CLI::Range(1, 8));
    gen->add_option("--iterations", s.iterations, "Number of gluing steps")->check(CLI::NonNegativeNumber);
    gen->add_option("--base-blocks", s.base_blocks, "Blocks of the elementary base")->check(CLI::Range(1, 8));
    gen->add_option("--seed", s.seed, "Random seed");
    gen->add_option("--replay", s.replay, "Rebuild from a construction trace instead of sampling");
    gen->add_option("--trace", s.trace, "Construction trace path (default: <output>.trace.json)");
    gen->add_flag("--verify,!--no-verify", s.verify, "Check the result with the brute-force oracle");
    output_opt(gen, "Instance path (default: stdout)");

    auto* rec = app.add_subcommand("recognize", "Decide whether an instance is bad, with a peel trace");
    input_opt(rec);
    output_opt(rec, "Verdict path (default: stdout)");
    rec->add_option("--delta", s.recognize_delta, "Expected side size")->check(CLI::PositiveNumber);
    rec->add_flag("--general", s.general, "Allow any complete bipartite components; decide the rest by brute force");

    auto* ana = app.add_subcommand("analyze", "Count ITs and describe the reconfiguration graph");
    input_opt(ana);
    output_opt(ana, "Report path (default: stdout)");

    auto* cer = app.add_subcommand("certify", "Extract and check an induced matching configuration");
    input_opt(cer);
    output_opt(cer, "Certificate path (default: stdout)");
    cer->add_option("--dot", s.dot, "Write the block forest as DOT");

    auto* ver = app.add_subcommand("verify", "Run the acceptance suite");
    ver->add_option("--profile", s.profile, "quick or full");
    ver->add_option("--seed", s.seed, "Random seed");

    auto* dot = app.add_subcommand("export-dot", "Render G and its reconfiguration graph as DOT");
    input_opt(dot);
    output_opt(dot, "Path prefix for <prefix>.graph.dot and <prefix>.rg.dot (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kMalformed;
    }

    try {
        if (*gen) return generate(s, out);
        if (*rec) return recognize_cmd(s, out);
        if (*ana) return analyze(s, out);
        if (*cer) return certify_cmd(s, out);
        if (*ver) return verify_cmd(s, out);
        if (*dot) return export_dot(s, out);
    } catch (const EnumerationCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const ParseError& e) {
        err << "error: " << (s.input.empty() ? "" : s.input + ": ") << e.what() << "\n";
        return kMalformed;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kNo;
    }
    return kMalformed;
}

}  // namespace itr::cli
