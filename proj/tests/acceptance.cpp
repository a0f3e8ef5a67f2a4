// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "amaze/gf/chunked.hpp"
#include "amaze/gf/modmul.hpp"
#include "amaze/merkle/tree.hpp"
#include "amaze/mimc/mimc.hpp"
#include "amaze/pipesim/multiplier_model.hpp"
#include "amaze/pipesim/simulator.hpp"
#include "support.hpp"

using namespace amaze;
using namespace amaze::test;
using pipesim::Variant;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const mimc::RoundConstants& constants() {
    static const auto rc = mimc::derive_constants(mimc::kDefaultSeed, FieldParams::bn254());
    return rc;
}

std::vector<pipesim::CipherRequest> requests(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<pipesim::CipherRequest> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back({rng.element(FieldParams::bn254()), rng.element(FieldParams::bn254())});
    return out;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Row {
    Variant v;
    std::uint64_t cycles;
    double latency_us;
    double throughput;  // reported ops/s, 0 where none is given
};

const std::array<Row, 7> kRows = {{
    {Variant::amz1, 4823, 2.892, 345781},
    {Variant::amz1a, 1547, 8.896, 0},
    {Variant::amz1b, 4189, 93.316, 0},
    {Variant::amz2, 3640, 2.226, 449236},
    {Variant::amz2a, 1183, 7.399, 0},
    {Variant::amz2b, 3370, 76.469, 0},
    {Variant::amz3, 72028, 475.589, 0},
}};

Outcome ac1() {
    Outcome o;
    const auto reqs = requests(13, 1);
    const unsigned r = FieldParams::bn254().rounds();
    for (const auto& row : kRows) {
        const auto c = pipesim::preset(row.v);
        const auto t0 = std::chrono::steady_clock::now();
        const auto sim = pipesim::simulate_cipher(c, std::span(reqs).first(c.batch), constants(), FieldParams::bn254(),
                                                  {.record_trace = false});
        const double s = seconds_since(t0);
        const std::string name(pipesim::variant_name(row.v));
        o.require(sim.report.total_cycles == row.cycles,
                  name + " gave " + std::to_string(sim.report.total_cycles) + " cycles");
        o.require(s < 1.0, name + " took " + fmt("%.2f s", s));
        if (c.pipelined) {
            o.require(row.cycles == r * (c.exp_depth * c.modmul_latency + 1), name + " breaks r(EP+1)");
        }
        o.detail += (o.detail.empty() ? "" : " ") + name + "=" + std::to_string(sim.report.total_cycles);
    }
    return o;
}

Outcome ac2() {
    Outcome o;
    for (const auto& row : kRows) {
        const auto c = pipesim::preset(row.v);
        const auto rep = pipesim::timing_report(c, row.cycles, c.batch);
        const std::string name(pipesim::variant_name(row.v));
        o.require(std::abs(rep.amortized_latency_us - row.latency_us) <= 0.002,
                  name + fmt(" latency %.4f", rep.amortized_latency_us));
        if (row.throughput > 0) {
            o.require(std::abs(rep.throughput_ops_per_s / row.throughput - 1) <= 0.0015,
                      name + fmt(" throughput %.0f", rep.throughput_ops_per_s));
        }
    }
    const double t58 = pipesim::timing_report(4823, 13, 58.82).amortized_latency_us;
    const double t156 = pipesim::timing_report(4823, 13, 156.25).amortized_latency_us;
    o.require(std::abs(t58 - 6.307) <= 0.002, fmt("58.82 MHz gives %.4f", t58));
    o.require(std::abs(t156 - 2.374) <= 0.002, fmt("156.25 MHz gives %.4f", t156));
    if (o.pass) o.detail = fmt("AMZ-1 %.4f us", pipesim::timing_report(4823, 13, 128.27).amortized_latency_us) +
                           fmt(", 58.82 MHz %.4f us", t58) + fmt(", 156.25 MHz %.4f us", t156);
    return o;
}

Outcome ac3() {
    Outcome o;
    const double fast = pipesim::speedup_vs_cpu(2.374, 31.093);
    const double slow = pipesim::speedup_vs_cpu(pipesim::timing_report(4823, 13, 58.82));
    o.require(fast >= 13.0, fmt("speedup %.3f", fast));
    o.require(std::abs(slow / 5.0 - 1) <= 0.02, fmt("58.82 MHz speedup %.3f", slow));
    o.detail = fmt("%.2fx at 156.25 MHz", fast) + fmt(", %.2fx at 58.82 MHz", slow);
    return o;
}

Outcome ac4() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto& f = FieldParams::bn254();
    std::size_t mismatches = 0, pairs = 0;
    auto check = [&](const FieldParams& params, const FieldElement& a, const FieldElement& b) {
        const auto n = gf::mul_mod_naive(a, b, params);
        mismatches += gf::mul_mod_peasant(a, b, params) != n;
        mismatches += gf::mul_mod_barrett(a, b, params) != n;
        ++pairs;
    };
    Rng rng(2024);
    for (int i = 0; i < 100000; ++i) check(f, rng.element(f), rng.element(f));
    const std::array<FieldElement, 5> edge{f.zero(), f.one(), f.element(2),
                                           gf::sub_mod(f.minus_one(), f.one(), f), f.minus_one()};
    for (const auto& a : edge) {
        for (const auto& b : edge) {
            check(f, a, b);
            mismatches += big(gf::mul_mod_naive(a, b, f)) != big(a) * big(b) % bn254_p();
        }
    }
    const auto small = FieldParams::make(U256(251), 3);
    for (std::uint64_t a = 0; a < 251; ++a) {
        for (std::uint64_t b = 0; b < 251; ++b) {
            check(small, small.element(a), small.element(b));
            mismatches += gf::mul_mod_naive(small.element(a), small.element(b), small) != small.element(a * b % 251);
        }
    }
    const double s = seconds_since(t0);
    o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    o.require(s < 60.0, fmt("took %.1f s", s));
    if (o.pass) o.detail = std::to_string(pairs) + " pairs, 0 mismatches, " + fmt("%.1f s", s);
    return o;
}

Outcome ac5() {
    Outcome o;
    for (unsigned w : {27u, 16u}) {
        Rng rng(500 + w);
        std::size_t bad = 0;
        for (int i = 0; i < 100000; ++i) {
            const U256 a = rng.bits(255);
            const U256 b = i % 8 == 0 ? rng.skewed(255) : rng.bits(255);
            bad += big(gf::mul_wide_chunked(a, b, w)) != big(a) * big(b);
        }
        o.require(bad == 0, "W=" + std::to_string(w) + ": " + std::to_string(bad) + " wrong products");
    }
    pipesim::PipelinedIntMultiplier m;
    Rng rng(3);
    std::vector<std::uint64_t> cycles;
    for (int c = 0; c < 6; ++c) {
        std::optional<std::pair<U256, U256>> in;
        if (c < 3) in = std::pair{rng.bits(254), rng.bits(254)};
        if (auto r = m.step(in)) cycles.push_back(r->cycle);
    }
    o.require(cycles == std::vector<std::uint64_t>{3, 4, 5}, "stage model emitted at unexpected cycles");
    if (o.pass) o.detail = "2x1e5 exact products; results at cycles 3,4,5";
    return o;
}

Outcome ac6() {
    Outcome o;
    const auto& f = FieldParams::bn254();
    o.require(f.rounds() == 91 && gf::mimc_round_count(f.modulus(), 7) == 91, "r != 91");
    const auto zeros = mimc::zero_constants(f);
    o.require(mimc::encrypt(f.zero(), f.zero(), zeros, f).is_zero(), "0 not fixed");
    o.require(mimc::encrypt(f.one(), f.zero(), zeros, f) == f.one(), "1 not fixed");
    const auto reqs = requests(13, 6);
    std::size_t compared = 0;
    for (auto v : pipesim::kAllVariants) {
        const auto c = pipesim::preset(v);
        for (std::size_t first = 0; first < reqs.size(); first += c.batch) {
            const auto chunk = std::span(reqs).subspan(first, std::min<std::size_t>(c.batch, reqs.size() - first));
            const auto sim = pipesim::simulate_cipher(c, chunk, constants(), f, {.record_trace = false});
            for (std::size_t i = 0; i < chunk.size(); ++i) {
                ++compared;
                o.require(sim.outputs[i] == mimc::encrypt(chunk[i].x, chunk[i].k, constants(), f),
                          std::string(pipesim::variant_name(v)) + " request " + std::to_string(first + i));
            }
        }
    }
    if (o.pass) o.detail = "r=91, fixed points hold, " + std::to_string(compared) + " simulated outputs match";
    return o;
}

Outcome ac7() {
    // Resource, power and synthesis-frequency figures are FPGA measurements and
    // are out of scope; the clock is an input. Check it behaves as one.
    Outcome o;
    auto c = pipesim::preset(Variant::amz1);
    const auto base = pipesim::timing_report(c, 4823, 13);
    c.clock_mhz *= 2;
    const auto doubled = pipesim::timing_report(c, 4823, 13);
    o.require(std::abs(doubled.amortized_latency_us * 2 - base.amortized_latency_us) < 1e-9,
              "latency does not scale with the supplied clock");
    const auto reqs = requests(13, 7);
    const auto s1 = pipesim::simulate_cipher(pipesim::preset(Variant::amz1), reqs, constants(), FieldParams::bn254(),
                                             {.record_trace = false});
    const auto s2 = pipesim::simulate_cipher(c, reqs, constants(), FieldParams::bn254(), {.record_trace = false});
    o.require(s1.report.total_cycles == s2.report.total_cycles, "cycle count depends on the clock");
    if (o.pass) o.detail = "utilization/power/Fmax not modelled; clock is an input (cycles clock-independent)";
    return o;
}

FieldElement recursive_root(std::span<const FieldElement> level) {
    // Each subtree over a power-of-two span; the tree is full for 16 leaves.
    if (level.size() == 1) return level[0];
    const std::size_t half = level.size() / 2;
    const std::array<FieldElement, 2> pair{recursive_root(level.first(half)), recursive_root(level.subspan(half))};
    return mimc::hash_blocks(pair, constants(), FieldParams::bn254(), gf::MulBackend::naive);
}

Outcome ac8() {
    Outcome o;
    const auto& f = FieldParams::bn254();
    Rng rng(8);
    std::vector<FieldElement> leaves;
    for (int i = 0; i < 16; ++i) leaves.push_back(rng.element(f));
    const auto tree = merkle::build_tree(leaves, constants(), f);
    o.require(tree.root() == recursive_root(leaves), "root differs from the recursive oracle");
    std::size_t corruptions = 0;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        const auto proof = merkle::prove_inclusion(tree, i);
        o.require(merkle::verify_inclusion(tree.root(), leaves[i], proof, constants(), f),
                  "proof " + std::to_string(i) + " rejected");
        for (std::size_t j = 0; j < proof.path.size(); ++j) {
            auto bad = proof;
            bad.path[j] = gf::add_mod(bad.path[j], f.one(), f);
            ++corruptions;
            o.require(!merkle::verify_inclusion(tree.root(), leaves[i], bad, constants(), f),
                      "corrupted node " + std::to_string(j) + " of proof " + std::to_string(i) + " accepted");
        }
        ++corruptions;
        o.require(!merkle::verify_inclusion(tree.root(), gf::add_mod(leaves[i], f.one(), f), proof, constants(), f),
                  "corrupted leaf " + std::to_string(i) + " accepted");
    }
    if (o.pass) o.detail = "root matches, 16/16 proofs verify, " + std::to_string(corruptions) + " corruptions rejected";
    return o;
}

}  // namespace

int main() {
    const std::array<std::pair<const char*, std::function<Outcome()>>, 8> criteria{{
        {"AC1 cycle counts", ac1},
        {"AC2 latency and throughput", ac2},
        {"AC3 speedup over the CPU baseline", ac3},
        {"AC4 modular multiplier equivalence", ac4},
        {"AC5 chunked multiplier fidelity", ac5},
        {"AC6 cipher structure and simulator agreement", ac6},
        {"AC7 clock treated as input", ac7},
        {"AC8 Merkle root and proofs", ac8},
    }};
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
