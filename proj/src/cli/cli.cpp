#include "amaze/cli/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "amaze/gf/field.hpp"
#include "amaze/gf/modmul.hpp"
#include "amaze/merkle/tree.hpp"
#include "amaze/mimc/mimc.hpp"
#include "amaze/pipesim/simulator.hpp"

namespace amaze::cli {

namespace {

using gf::FieldElement;
using gf::FieldParams;
using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string backend = "barrett";
    std::string seed{mimc::kDefaultSeed};
    std::string constants_file;
    std::string format = "text";

    [[nodiscard]] bool json_output() const { return format != "text"; }
};

gf::MulBackend backend_of(const Globals& g) {
    const auto b = gf::parse_backend(g.backend);
    if (!b) throw UsageError("unknown backend '" + g.backend + "'");
    return *b;
}

std::string resolve_seed(const std::string& seed) {
    return seed == "default" ? std::string(mimc::kDefaultSeed) : seed;
}

mimc::RoundConstants constants_of(const Globals& g, const FieldParams& params) {
    if (g.constants_file.empty()) return mimc::derive_constants(resolve_seed(g.seed), params);
    try {
        return mimc::load_constants(std::filesystem::path(g.constants_file), params);
    } catch (const mimc::ConstantsError& e) {
        if (e.kind() == mimc::ConstantsError::Kind::io) throw IoError(e.what());
        throw;
    }
}

std::vector<std::uint8_t> read_stream(std::istream& in) {
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("read error");
    return bytes;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    return read_stream(f);
}

std::vector<std::uint8_t> parse_hex_bytes(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.size() % 2 != 0) throw UsageError("hex message must have an even number of digits");
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        unsigned v = 0;
        const auto [ptr, ec] = std::from_chars(hex.data() + i, hex.data() + i + 2, v, 16);
        if (ec != std::errc() || ptr != hex.data() + i + 2) throw UsageError("malformed hex message");
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

FieldElement random_element(std::mt19937_64& rng, const FieldParams& params) {
    const unsigned bits = static_cast<unsigned>(params.modulus().bit_length());
    for (;;) {
        gf::U256 v;
        for (auto& l : v.limb) l = rng();
        v = gf::low_bits(v, bits);
        if (params.is_canonical(v)) return params.element(v);
    }
}

double round_to(double v, int digits) {
    const double scale = std::pow(10.0, digits);
    return std::round(v * scale) / scale;
}

// --- subcommands -----------------------------------------------------------

struct HashArgs {
    std::string hex;
    std::string file;
    std::string text;
};

int cmd_hash(const Globals& g, const HashArgs& a, std::istream& in, std::ostream& out) {
    const int sources = !a.hex.empty() + !a.file.empty() + !a.text.empty();
    if (sources > 1) throw UsageError("hash: give exactly one of --hex, --file, --text (or none for stdin)");
    std::vector<std::uint8_t> message;
    if (!a.hex.empty()) {
        message = parse_hex_bytes(a.hex);
    } else if (!a.file.empty()) {
        message = read_file(a.file);
    } else if (!a.text.empty()) {
        message.assign(a.text.begin(), a.text.end());
    } else {
        message = read_stream(in);
    }
    const FieldParams& params = FieldParams::bn254();
    const auto rc = constants_of(g, params);
    const FieldElement digest = mimc::hash_bytes(message, rc, params, backend_of(g));
    if (g.json_output()) {
        out << json{{"digest", digest.to_hex()}, {"bytes", message.size()}, {"backend", g.backend}}.dump() << '\n';
    } else {
        out << digest.to_hex() << '\n';
    }
    return kOk;
}

struct EncryptArgs {
    std::string x;
    std::string k;
    bool no_final_key = false;
    int chain = 4;
};

int cmd_encrypt(const Globals& g, const EncryptArgs& a, std::ostream& out) {
    const FieldParams& params = FieldParams::bn254();
    const FieldElement x = params.from_hex(a.x);
    const FieldElement k = params.from_hex(a.k);
    const auto rc = constants_of(g, params);
    mimc::CipherOptions opts;
    opts.final_key_addition = !a.no_final_key;
    opts.chain = a.chain == 3 ? mimc::Pow7Chain::three_mul : mimc::Pow7Chain::four_mul;
    const FieldElement y = mimc::encrypt(x, k, rc, params, backend_of(g), opts);
    if (g.json_output()) {
        out << json{{"ciphertext", y.to_hex()}, {"backend", g.backend}}.dump() << '\n';
    } else {
        out << y.to_hex() << '\n';
    }
    return kOk;
}

struct ConstantsArgs {
    std::string seed;
    std::string validate;
    bool count = false;
    bool params = false;
};

int cmd_constants(const Globals& g, const ConstantsArgs& a, std::ostream& out) {
    const FieldParams& params = FieldParams::bn254();
    if (a.params) {
        out << params.describe();
        return kOk;
    }
    Globals local = g;
    if (!a.seed.empty()) local.seed = a.seed;
    if (!a.validate.empty()) local.constants_file = a.validate;
    const auto rc = constants_of(local, params);
    if (!a.validate.empty()) {
        if (g.json_output()) {
            out << json{{"valid", true}, {"count", rc.size()}, {"source", rc.seed_id}}.dump() << '\n';
        } else {
            out << "ok: " << rc.size() << " constants\n";
        }
    } else if (a.count) {
        if (g.json_output()) {
            out << json{{"count", rc.size()}, {"source", rc.seed_id}}.dump() << '\n';
        } else {
            out << rc.size() << '\n';
        }
    } else if (g.json_output()) {
        for (std::size_t i = 0; i < rc.size(); ++i) out << json{{"index", i}, {"value", rc[i].to_hex()}}.dump() << '\n';
    } else {
        mimc::write_constants(out, rc);
    }
    return kOk;
}

struct SimulateArgs {
    std::string variant = "AMZ-1";
    int batch = 0;  // 0: the design's accept window
    double mhz = 0;  // 0: the design's reported clock
    std::string trace;
    std::uint64_t seed = 1;
};

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
    std::vector<pipesim::Variant> variants;
    if (a.variant == "all") {
        variants.assign(pipesim::kAllVariants.begin(), pipesim::kAllVariants.end());
    } else {
        const auto v = pipesim::parse_variant(a.variant);
        if (!v) throw UsageError("unknown variant '" + a.variant + "'");
        variants.push_back(*v);
    }
    if (!a.trace.empty() && variants.size() != 1) throw UsageError("--trace needs a single variant");
    if (a.batch < 0) throw UsageError("--batch must be positive");
    if (a.mhz < 0) throw UsageError("--mhz must be positive");

    const FieldParams& params = FieldParams::bn254();
    const auto rc = constants_of(g, params);

    if (!g.json_output()) {
        out << std::left << std::setw(8) << "variant" << std::right << std::setw(7) << "batch" << std::setw(9)
            << "cycles" << std::setw(9) << "MHz" << std::setw(13) << "latency_us" << std::setw(16)
            << "throughput_ops" << std::setw(10) << "verified" << '\n';
    }
    for (pipesim::Variant v : variants) {
        pipesim::DesignConfig config = pipesim::preset(v);
        if (a.mhz > 0) config.clock_mhz = a.mhz;
        const std::size_t batch = a.batch > 0 ? static_cast<std::size_t>(a.batch) : config.batch;

        std::mt19937_64 rng(a.seed);
        std::vector<pipesim::CipherRequest> requests;
        for (std::size_t i = 0; i < batch; ++i) requests.push_back({random_element(rng, params), random_element(rng, params)});

        const auto sim = pipesim::simulate_cipher(config, requests, rc, params, {.record_trace = !a.trace.empty()});
        bool verified = true;
        for (std::size_t i = 0; i < batch; ++i) {
            verified &= sim.outputs[i] == mimc::encrypt(requests[i].x, requests[i].k, rc, params, backend_of(g));
        }
        if (!a.trace.empty()) {
            std::ofstream f(a.trace);
            if (!f) throw IoError("cannot write " + a.trace);
            sim.trace.write_csv(f);
        }

        const auto& r = sim.report;
        const double latency = round_to(r.amortized_latency_us, 3);
        const double throughput = round_to(r.throughput_ops_per_s, 1);
        if (g.json_output()) {
            out << json{{"variant", pipesim::variant_name(v)},
                        {"batch", r.batch_size},
                        {"cycles", r.total_cycles},
                        {"mhz", r.clock_mhz},
                        {"latency_us", latency},
                        {"throughput_ops", throughput},
                        {"verified", verified}}
                       .dump()
                << '\n';
        } else {
            out << std::left << std::setw(8) << pipesim::variant_name(v) << std::right << std::setw(7) << r.batch_size
                << std::setw(9) << r.total_cycles << std::setw(9) << r.clock_mhz << std::setw(13) << std::fixed
                << std::setprecision(3) << latency << std::setw(16) << std::setprecision(1) << throughput
                << std::setw(10) << (verified ? "yes" : "NO") << '\n'
                << std::defaultfloat << std::setprecision(6);
        }
        if (!verified) return kValidation;
    }
    return kOk;
}

struct BenchArgs {
    int iterations = 200;
    std::uint64_t seed = 7;
    double cpu_us = pipesim::kCpuReferenceLatencyUs;
};

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out) {
    if (a.iterations <= 0) throw UsageError("--iterations must be positive");
    if (!(a.cpu_us > 0)) throw UsageError("--cpu-us must be positive");
    const FieldParams& params = FieldParams::bn254();
    const auto rc = constants_of(g, params);

    std::mt19937_64 rng(a.seed);
    std::vector<std::pair<FieldElement, FieldElement>> inputs;
    for (int i = 0; i < a.iterations; ++i) inputs.emplace_back(random_element(rng, params), random_element(rng, params));

    std::optional<FieldElement> reference_checksum;
    for (gf::MulBackend b : {gf::MulBackend::naive, gf::MulBackend::peasant, gf::MulBackend::barrett}) {
        FieldElement checksum = params.zero();
        const auto start = std::chrono::steady_clock::now();
        for (const auto& [x, k] : inputs) checksum = gf::add_mod(checksum, mimc::encrypt(x, k, rc, params, b), params);
        const std::chrono::duration<double, std::micro> elapsed = std::chrono::steady_clock::now() - start;
        const double us = elapsed.count() / a.iterations;
        if (!reference_checksum) reference_checksum = checksum;
        const bool agrees = checksum == *reference_checksum;
        if (g.json_output()) {
            out << json{{"kind", "host"},
                        {"backend", gf::backend_name(b)},
                        {"iterations", a.iterations},
                        {"us_per_encrypt", us},
                        {"checksum", checksum.to_hex()},
                        {"agrees", agrees}}
                       .dump()
                << '\n';
        } else {
            out << "host " << std::left << std::setw(8) << gf::backend_name(b) << std::right << std::fixed
                << std::setprecision(3) << std::setw(12) << us << " us/encrypt  checksum " << checksum.to_hex()
                << (agrees ? "" : "  MISMATCH") << '\n'
                << std::defaultfloat;
        }
        if (!agrees) return kValidation;
    }

    const auto requests = [&] {
        std::vector<pipesim::CipherRequest> r;
        for (std::size_t i = 0; i < 13; ++i) r.push_back({inputs[i % inputs.size()].first, inputs[i % inputs.size()].second});
        return r;
    }();
    for (pipesim::Variant v : pipesim::kAllVariants) {
        const auto config = pipesim::preset(v);
        const std::span<const pipesim::CipherRequest> batch(requests.data(), config.batch);
        const auto sim = pipesim::simulate_cipher(config, batch, rc, params, {.record_trace = false});
        const double latency = round_to(sim.report.amortized_latency_us, 3);
        const double speedup = round_to(pipesim::speedup_vs_cpu(sim.report, a.cpu_us), 2);
        if (g.json_output()) {
            out << json{{"kind", "simulated"},
                        {"variant", pipesim::variant_name(v)},
                        {"cycles", sim.report.total_cycles},
                        {"mhz", config.clock_mhz},
                        {"latency_us", latency},
                        {"cpu_reference_us", a.cpu_us},
                        {"speedup", speedup}}
                       .dump()
                << '\n';
        } else {
            out << "sim  " << std::left << std::setw(8) << pipesim::variant_name(v) << std::right << std::setw(7)
                << sim.report.total_cycles << " cycles @ " << std::fixed << std::setprecision(2) << config.clock_mhz
                << " MHz  " << std::setprecision(3) << latency << " us  speedup vs " << a.cpu_us << " us CPU: "
                << std::setprecision(2) << speedup << "x\n"
                << std::defaultfloat;
        }
    }
    return kOk;
}

std::vector<FieldElement> leaves_from(const std::string& path, std::istream& in, const FieldParams& params) {
    if (path.empty() || path == "-") return merkle::read_leaves(in, params);
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    return merkle::read_leaves(f, params);
}

struct MerkleArgs {
    std::string leaves;
    std::size_t index = 0;
    std::string root;
    std::string leaf;
    std::string proof;
    std::string cost_variant;
};

int cmd_merkle_root(const Globals& g, const MerkleArgs& a, std::istream& in, std::ostream& out) {
    const FieldParams& params = FieldParams::bn254();
    const auto rc = constants_of(g, params);
    const auto leaves = leaves_from(a.leaves, in, params);
    const auto tree = merkle::build_tree(leaves, rc, params, backend_of(g));
    std::optional<merkle::TreeCost> cost;
    if (!a.cost_variant.empty()) cost = merkle::batched_level_cost(tree, pipesim::preset(a.cost_variant), rc, params);
    if (g.json_output()) {
        json j{{"root", tree.root().to_hex()}, {"leaves", tree.leaf_count()}};
        if (cost) {
            j["variant"] = a.cost_variant;
            j["cycles"] = cost->report.total_cycles;
            j["hashes"] = cost->report.batch_size;
        }
        out << j.dump() << '\n';
    } else {
        out << tree.root().to_hex() << '\n';
        if (cost) out << "cycles " << cost->report.total_cycles << " for " << cost->report.batch_size << " hashes\n";
    }
    return kOk;
}

int cmd_merkle_prove(const Globals& g, const MerkleArgs& a, std::istream& in, std::ostream& out) {
    const FieldParams& params = FieldParams::bn254();
    const auto rc = constants_of(g, params);
    const auto tree = merkle::build_tree(leaves_from(a.leaves, in, params), rc, params, backend_of(g));
    if (a.index >= tree.leaf_count()) {
        throw std::invalid_argument("leaf index " + std::to_string(a.index) + " out of range");
    }
    merkle::write_proof(out, merkle::prove_inclusion(tree, a.index));
    return kOk;
}

int cmd_merkle_verify(const Globals& g, const MerkleArgs& a, std::istream& in, std::ostream& out) {
    const FieldParams& params = FieldParams::bn254();
    const auto rc = constants_of(g, params);
    merkle::InclusionProof proof;
    if (a.proof.empty() || a.proof == "-") {
        proof = merkle::read_proof(in, params);
    } else {
        std::ifstream f(a.proof);
        if (!f) throw IoError("cannot open " + a.proof);
        proof = merkle::read_proof(f, params);
    }
    const bool ok =
        merkle::verify_inclusion(params.from_hex(a.root), params.from_hex(a.leaf), proof, rc, params, backend_of(g));
    if (g.json_output()) {
        out << json{{"valid", ok}, {"index", proof.index}}.dump() << '\n';
    } else {
        out << (ok ? "valid" : "invalid") << '\n';
    }
    return ok ? kOk : kValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"MiMC-p/p over BN254: hashing, encryption and accelerator pipeline simulation", "amaze"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--backend", g.backend, "Modular multiplier: naive, peasant, barrett")
        ->check(CLI::IsMember({"naive", "peasant", "barrett"}));
    app.add_option("--constants-seed", g.seed, "Seed for derived round constants ('default' for the built-in seed)");
    app.add_option("--constants-file", g.constants_file, "Load round constants from a file instead");
    app.add_option("--format", g.format, "Output format: text or json (one object per line)")
        ->check(CLI::IsMember({"text", "json", "json-lines"}));

    HashArgs hash_args;
    auto* hash = app.add_subcommand("hash", "Hash a byte message");
    hash->add_option("--hex", hash_args.hex, "Message as hex bytes");
    hash->add_option("--file", hash_args.file, "Message file");
    hash->add_option("--text", hash_args.text, "Message as a literal string");

    EncryptArgs enc_args;
    auto* enc = app.add_subcommand("encrypt", "Encrypt one field element");
    enc->add_option("--x,-x", enc_args.x, "Plaintext, hex")->required();
    enc->add_option("--k,-k", enc_args.k, "Key, hex")->required();
    enc->add_flag("--no-final-key", enc_args.no_final_key, "Skip the key addition after the last round");
    enc->add_option("--chain", enc_args.chain, "x^7 chain: 4 or 3 multiplications")->check(CLI::IsMember({3, 4}));

    ConstantsArgs const_args;
    auto* cons = app.add_subcommand("constants", "Print, count or validate round constants");
    cons->add_option("--seed", const_args.seed, "Derivation seed ('default' for the built-in seed)");
    cons->add_option("--validate", const_args.validate, "Validate a constants file");
    cons->add_flag("--count", const_args.count, "Print only the number of constants");
    cons->add_flag("--params", const_args.params, "Print the field parameters");

    SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Simulate one batch on a design");
    sim->add_option("--variant", sim_args.variant, "AMZ-1, AMZ-1a, AMZ-1b, AMZ-2, AMZ-2a, AMZ-2b, AMZ-3 or all");
    sim->add_option("--batch", sim_args.batch, "Requests in the batch (default: the accept window)");
    sim->add_option("--mhz", sim_args.mhz, "Clock frequency (default: the design's reported clock)");
    sim->add_option("--trace", sim_args.trace, "Write the stage trace as CSV");
    sim->add_option("--seed", sim_args.seed, "Seed for the random requests");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Time the software back ends next to the simulated designs");
    bench->add_option("--iterations", bench_args.iterations, "Encryptions per back end");
    bench->add_option("--seed", bench_args.seed, "Seed for the random inputs");
    bench->add_option("--cpu-us", bench_args.cpu_us, "CPU reference latency in microseconds");

    MerkleArgs m_args;
    auto* mroot = app.add_subcommand("merkle-root", "Root of a tree over hex leaves");
    mroot->add_option("--leaves", m_args.leaves, "Leaf file (default: stdin)");
    mroot->add_option("--cost", m_args.cost_variant, "Also report batched cycles on this design");
    auto* mprove = app.add_subcommand("merkle-prove", "Inclusion proof for one leaf");
    mprove->add_option("--leaves", m_args.leaves, "Leaf file (default: stdin)");
    mprove->add_option("--index", m_args.index, "Leaf index")->required();
    auto* mverify = app.add_subcommand("merkle-verify", "Check an inclusion proof");
    mverify->add_option("--root", m_args.root, "Root, hex")->required();
    mverify->add_option("--leaf", m_args.leaf, "Leaf, hex")->required();
    mverify->add_option("--proof", m_args.proof, "Proof file (default: stdin)");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("amaze");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "amaze: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*hash) return cmd_hash(g, hash_args, in, out);
        if (*enc) return cmd_encrypt(g, enc_args, out);
        if (*cons) return cmd_constants(g, const_args, out);
        if (*sim) return cmd_simulate(g, sim_args, out);
        if (*bench) return cmd_bench(g, bench_args, out);
        if (*mroot) return cmd_merkle_root(g, m_args, in, out);
        if (*mprove) return cmd_merkle_prove(g, m_args, in, out);
        if (*mverify) return cmd_merkle_verify(g, m_args, in, out);
    } catch (const UsageError& e) {
        err << "amaze: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "amaze: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "amaze: " << e.what() << '\n';
        return kValidation;
    }
    return kUsage;
}

}  // namespace amaze::cli
