#pragma once

// Binary Merkle tree over the MiMC hash. An internal node is
// hash_blocks([left, right]) on the raw field elements (no byte padding); a
// level with an odd count pairs its last node with itself. A single leaf is
// still hashed once, so the root of [a] is hash_blocks([a, a]).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "amaze/gf/field.hpp"
#include "amaze/mimc/mimc.hpp"
#include "amaze/pipesim/design.hpp"
#include "amaze/pipesim/report.hpp"

namespace amaze::merkle {

using gf::FieldElement;

struct MerkleTree {
    std::vector<std::vector<FieldElement>> levels;  // levels[0] = leaves, back() = {root}

    [[nodiscard]] const std::vector<FieldElement>& leaves() const { return levels.front(); }
    [[nodiscard]] const FieldElement& root() const { return levels.back().front(); }
    [[nodiscard]] std::size_t leaf_count() const { return levels.front().size(); }
};

FieldElement hash_pair(const FieldElement& left, const FieldElement& right, const mimc::RoundConstants& constants,
                       const gf::FieldParams& params, gf::MulBackend backend = gf::MulBackend::barrett);

/// Throws std::invalid_argument on an empty leaf list.
MerkleTree build_tree(std::span<const FieldElement> leaves, const mimc::RoundConstants& constants,
                      const gf::FieldParams& params, gf::MulBackend backend = gf::MulBackend::barrett);

struct InclusionProof {
    std::size_t index = 0;
    std::vector<FieldElement> path;  // siblings, bottom-up
};

/// Throws std::out_of_range when index >= leaf count.
InclusionProof prove_inclusion(const MerkleTree& tree, std::size_t index);

bool verify_inclusion(const FieldElement& root, const FieldElement& leaf, const InclusionProof& proof,
                      const mimc::RoundConstants& constants, const gf::FieldParams& params,
                      gf::MulBackend backend = gf::MulBackend::barrett);

/// Index on the first line, then one hex node per line.
void write_proof(std::ostream& out, const InclusionProof& proof);
/// Throws std::invalid_argument on malformed input.
InclusionProof read_proof(std::istream& in, const gf::FieldParams& params);

/// Hex leaves, one per line; blank lines and '#' comments skipped.
std::vector<FieldElement> read_leaves(std::istream& in, const gf::FieldParams& params);

struct LevelCost {
    std::size_t nodes = 0;   // parent hashes computed for this level
    std::size_t frames = 0;  // ceil(nodes / B)
    std::uint64_t cycles = 0;
};

struct TreeCost {
    std::vector<LevelCost> levels;  // bottom-up, one entry per hashed level
    pipesim::CycleReport report;    // batch_size = total node hashes
};

/// Pushes every level's node hashes through the pipeline simulator in
/// batches of B and sums the frame cycles. The simulated parents are checked
/// against the tree; a mismatch throws std::logic_error.
TreeCost batched_level_cost(const MerkleTree& tree, const pipesim::DesignConfig& config,
                            const mimc::RoundConstants& constants, const gf::FieldParams& params);

}  // namespace amaze::merkle
