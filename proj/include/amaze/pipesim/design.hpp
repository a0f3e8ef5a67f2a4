#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace amaze::pipesim {

enum class Variant { amz1, amz1a, amz1b, amz2, amz2a, amz2b, amz3 };

inline constexpr std::array<Variant, 7> kAllVariants = {Variant::amz1,  Variant::amz1a, Variant::amz1b,
                                                        Variant::amz2,  Variant::amz2a, Variant::amz2b,
                                                        Variant::amz3};

std::string_view variant_name(Variant v);
/// Accepts "AMZ-1", "amz-1", "AMZ1", ... Returns nullopt for unknown names.
std::optional<Variant> parse_variant(std::string_view name);

enum class MulAlgorithm { barrett_chunked, barrett_flat, peasant };

std::string_view algorithm_name(MulAlgorithm a);

/// Timing parameters of one design.
///
/// Pipelined designs: a modular multiplier is a `modmul_latency`-stage
/// pipeline accepting one request per cycle, the batch equals that depth and
/// a round costs exp_depth * P + 1 cycles.
///
/// Serial designs: a modular multiplier is busy for `modmul_latency` cycles,
/// each round adds `round_overhead` control cycles and the cipher adds
/// `global_overhead` once. Those two overheads and the Barrett serial latency
/// are fitted to measured totals (see `calibrated`).
struct DesignConfig {
    Variant variant = Variant::amz1;
    MulAlgorithm mul_algorithm = MulAlgorithm::barrett_chunked;
    unsigned intmul_stages = 3;    // clock stages of one integer multiplier
    unsigned transfer_cycles = 1;  // register transfer after each multiplier
    unsigned modmul_latency = 13;  // P (pipelined) or M (serial), transfers included
    unsigned exp_depth = 4;        // 4: one modmul unit, 3: two units
    bool pipelined = true;
    unsigned batch = 13;           // accept window / maximum batch
    unsigned round_overhead = 0;   // O, serial designs
    unsigned global_overhead = 0;  // G, serial designs
    double clock_mhz = 128.27;
    unsigned chunk_bits = 27;
    bool calibrated = false;  // serial constants fitted rather than derived

    [[nodiscard]] unsigned modmul_units() const { return exp_depth == 3 ? 2 : 1; }
};

/// Calibrated configuration of a named design, clocked at its reported
/// synthesis frequency.
DesignConfig preset(Variant v);
DesignConfig preset(std::string_view name);  // throws std::invalid_argument on unknown names

/// Stage labels of a pipelined modular multiplier: for the chunked Barrett
/// unit three (3-stage multiplier + transfer) blocks and an output transfer.
std::vector<std::string> modmul_stage_labels(const DesignConfig& c);

/// Throws std::invalid_argument when the configuration breaks a design rule.
void validate(const DesignConfig& c);

/// Multi-line dump, marking fitted constants.
std::string describe(const DesignConfig& c);

}  // namespace amaze::pipesim
