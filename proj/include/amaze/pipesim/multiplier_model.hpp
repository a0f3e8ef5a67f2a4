#pragma once

// Three-stage model of the chunked 254-bit integer multiplier:
//   stage 1  partial products of x_low * y
//   stage 2  partial products of x_high * y, addition tree of the x_low partials
//   stage 3  addition tree of the x_high partials, combine the two sums

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "amaze/gf/chunked.hpp"

namespace amaze::pipesim {

enum class MultiplierEvent { partial_product, tree_sum, combine };

struct StageEvent {
    unsigned stage = 0;  // 1, 2 or 3
    MultiplierEvent kind = MultiplierEvent::partial_product;
    unsigned half = 0;   // 0 = x_low, 1 = x_high; unused for combine
    unsigned level = 0;  // tree level of a sum (1 = first adder row)
    unsigned index = 0;  // chunk index, or position within the tree level
};

struct StageModel {
    gf::U512 product;
    std::vector<StageEvent> events;
};

/// Runs the chunked dataflow for one pair and assigns every partial product
/// and adder to its stage.
StageModel multiplier_stage_model(const gf::U256& x, const gf::U256& y,
                                  unsigned chunk_bits = gf::kDefaultChunkBits);

/// Cycle-stepped pipeline: one new pair per cycle, results after 3 cycles.
class PipelinedIntMultiplier {
public:
    static constexpr unsigned kLatency = 3;

    struct Result {
        std::uint64_t cycle;  // cycle in which the product leaves stage 3
        std::uint64_t tag;    // issue order, from 0
        gf::U512 product;
    };

    explicit PipelinedIntMultiplier(unsigned chunk_bits = gf::kDefaultChunkBits) : chunk_bits_(chunk_bits) {}

    /// Advances one clock (cycles are numbered from 1). `input`, if present,
    /// enters stage 1 in this cycle.
    std::optional<Result> step(const std::optional<std::pair<gf::U256, gf::U256>>& input);

    [[nodiscard]] std::uint64_t cycle() const { return cycle_; }
    [[nodiscard]] bool empty() const { return !stage1_ && !stage2_; }

private:
    struct Stage1 {
        std::uint64_t tag;
        gf::ChunkDecomposition y;
        gf::U256 x_high;
        std::vector<gf::PartialProduct> low_partials;
    };
    struct Stage2 {
        std::uint64_t tag;
        gf::U512 low_sum;
        std::vector<gf::PartialProduct> high_partials;
    };

    unsigned chunk_bits_;
    std::uint64_t cycle_ = 0;
    std::uint64_t next_tag_ = 0;
    std::optional<Stage1> stage1_;
    std::optional<Stage2> stage2_;
};

}  // namespace amaze::pipesim
