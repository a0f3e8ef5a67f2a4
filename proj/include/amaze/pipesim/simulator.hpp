#pragma once

// Cycle-accurate model of the MiMC cipher pipelines.
//
// Each request runs a fixed micro-program (round addition, the x^7 chain,
// final key addition) over named registers. Operations are placed as soon as
// their operands are ready and every unit stage they need is free, so cycle
// counts follow from unit latencies, the number of modular multipliers and
// the accept window rather than from a formula. All arithmetic is carried
// out with the design's own multiplication algorithm.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amaze/gf/field.hpp"
#include "amaze/mimc/mimc.hpp"
#include "amaze/pipesim/design.hpp"
#include "amaze/pipesim/report.hpp"

namespace amaze::pipesim {

struct CipherRequest {
    gf::FieldElement x;
    gf::FieldElement k;
};

struct TraceRecord {
    std::uint64_t cycle = 0;
    std::uint32_t cell = 0;     // unit stage (pipelined unit) or whole unit (serial unit)
    std::uint32_t request = 0;
    std::uint32_t round = 0;    // r for the final key addition
    std::uint32_t step = 0;     // busy-cycle index inside a serial unit
};

/// Per-cycle occupancy of every unit stage.
class StageTrace {
public:
    std::vector<std::string> cell_names;
    std::vector<bool> cell_is_serial;
    std::vector<TraceRecord> records;

    /// Human-readable unit for a record, e.g. "modmul0.mul2.s3" or "modmul1.it17".
    [[nodiscard]] std::string unit_name(const TraceRecord& r) const;

    /// First (cell, cycle) held by two requests, if any.
    [[nodiscard]] std::optional<std::string> find_hazard() const;

    /// CSV with header "cycle,unit,request,round", records in cycle order.
    void write_csv(std::ostream& out) const;
};

struct SimOptions {
    bool record_trace = true;
};

struct CipherSimulation {
    std::vector<gf::FieldElement> outputs;
    CycleReport report;
    StageTrace trace;
    /// Cycle at which the frame reopens its accept window. This is the
    /// report's total for pipelined designs.
    std::uint64_t frame_cycles = 0;
    /// Cycle after the last unit goes idle.
    std::uint64_t drain_cycles = 0;
    std::uint64_t modmul_issues = 0;
};

/// Throws std::invalid_argument for an empty batch, a batch larger than the
/// accept window, round constants of the wrong length or an exponent other
/// than 7.
CipherSimulation simulate_cipher(const DesignConfig& config, std::span<const CipherRequest> batch,
                                 const mimc::RoundConstants& constants, const gf::FieldParams& params,
                                 const SimOptions& options = {});

struct HashSimulation {
    std::vector<gf::FieldElement> digests;
    CycleReport report;
    std::uint64_t frames = 0;           // cipher frames run back to back
    std::uint64_t cycles_per_frame = 0; // of the last frame
};

/// Miyaguchi-Preneel over already padded block lists; message i absorbs its
/// j-th block in frame j. Shorter messages sit idle in later frames.
HashSimulation simulate_hash_blocks(const DesignConfig& config,
                                    std::span<const std::vector<gf::FieldElement>> messages,
                                    const mimc::RoundConstants& constants, const gf::FieldParams& params);

HashSimulation simulate_hash(const DesignConfig& config, std::span<const std::vector<std::uint8_t>> messages,
                             const mimc::RoundConstants& constants, const gf::FieldParams& params);

}  // namespace amaze::pipesim
