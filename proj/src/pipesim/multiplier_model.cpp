#include "amaze/pipesim/multiplier_model.hpp"

#include <stdexcept>

namespace amaze::pipesim {

namespace {

void record_tree(const gf::AdditionTree& tree, unsigned stage, unsigned half, std::vector<StageEvent>& out) {
    for (unsigned level = 1; level < tree.levels.size(); ++level) {
        const std::size_t pairs = tree.levels[level - 1].size() / 2;
        for (unsigned i = 0; i < pairs; ++i) out.push_back({stage, MultiplierEvent::tree_sum, half, level, i});
    }
}

}  // namespace

StageModel multiplier_stage_model(const gf::U256& x, const gf::U256& y, unsigned chunk_bits) {
    const gf::MultiplierDataflow df = gf::trace_wide_chunked(x, y, chunk_bits);
    StageModel m;
    m.product = df.product;
    for (const auto& p : df.low_partials) m.events.push_back({1, MultiplierEvent::partial_product, 0, 0, p.chunk});
    for (const auto& p : df.high_partials) m.events.push_back({2, MultiplierEvent::partial_product, 1, 0, p.chunk});
    record_tree(df.low_tree, 2, 0, m.events);
    record_tree(df.high_tree, 3, 1, m.events);
    m.events.push_back({3, MultiplierEvent::combine, 0, 0, 0});
    return m;
}

std::optional<PipelinedIntMultiplier::Result> PipelinedIntMultiplier::step(
    const std::optional<std::pair<gf::U256, gf::U256>>& input) {
    ++cycle_;

    // Stages read the latches written in the previous cycle, back to front.
    std::optional<Result> out;
    if (stage2_) {
        const gf::AdditionTree high = gf::addition_tree(stage2_->high_partials);
        out = Result{cycle_, stage2_->tag, gf::combine_halves(stage2_->low_sum, high.sum())};
        stage2_.reset();
    }
    if (stage1_) {
        Stage2 next;
        next.tag = stage1_->tag;
        next.low_sum = gf::addition_tree(stage1_->low_partials).sum();
        next.high_partials = gf::partial_products(stage1_->x_high, 1, stage1_->y);
        stage2_ = std::move(next);
        stage1_.reset();
    }
    if (input) {
        const auto& [x, y] = *input;
        if (x.bit_length() > gf::kMaxOperandBits) {
            throw std::invalid_argument("PipelinedIntMultiplier: operand must be below 2^255");
        }
        Stage1 next;
        next.tag = next_tag_++;
        next.y = gf::decompose(y, chunk_bits_);
        next.x_high = x >> gf::kHalfSplitBit;
        next.low_partials = gf::partial_products(gf::low_bits(x, gf::kHalfSplitBit), 0, next.y);
        stage1_ = std::move(next);
    }
    return out;
}

}  // namespace amaze::pipesim
