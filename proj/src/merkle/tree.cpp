#include "amaze/merkle/tree.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "amaze/pipesim/simulator.hpp"

namespace amaze::merkle {

FieldElement hash_pair(const FieldElement& left, const FieldElement& right, const mimc::RoundConstants& constants,
                       const gf::FieldParams& params, gf::MulBackend backend) {
    const std::array<FieldElement, 2> blocks{left, right};
    return mimc::hash_blocks(blocks, constants, params, backend);
}

MerkleTree build_tree(std::span<const FieldElement> leaves, const mimc::RoundConstants& constants,
                      const gf::FieldParams& params, gf::MulBackend backend) {
    if (leaves.empty()) throw std::invalid_argument("build_tree: no leaves");
    MerkleTree tree;
    tree.levels.emplace_back(leaves.begin(), leaves.end());
    do {
        const auto& cur = tree.levels.back();
        std::vector<FieldElement> next;
        next.reserve((cur.size() + 1) / 2);
        for (std::size_t i = 0; i < cur.size(); i += 2) {
            const FieldElement& right = i + 1 < cur.size() ? cur[i + 1] : cur[i];
            next.push_back(hash_pair(cur[i], right, constants, params, backend));
        }
        tree.levels.push_back(std::move(next));
    } while (tree.levels.back().size() > 1);
    return tree;
}

InclusionProof prove_inclusion(const MerkleTree& tree, std::size_t index) {
    if (index >= tree.leaf_count()) {
        throw std::out_of_range("leaf index " + std::to_string(index) + " out of range (" +
                                std::to_string(tree.leaf_count()) + " leaves)");
    }
    InclusionProof proof{index, {}};
    if (tree.leaf_count() == 1) return proof;
    std::size_t i = index;
    for (std::size_t l = 0; l + 1 < tree.levels.size(); ++l) {
        const auto& level = tree.levels[l];
        const std::size_t sibling = i ^ 1u;
        proof.path.push_back(sibling < level.size() ? level[sibling] : level[i]);
        i >>= 1;
    }
    return proof;
}

bool verify_inclusion(const FieldElement& root, const FieldElement& leaf, const InclusionProof& proof,
                      const mimc::RoundConstants& constants, const gf::FieldParams& params,
                      gf::MulBackend backend) {
    if (proof.path.empty()) return proof.index == 0 && hash_pair(leaf, leaf, constants, params, backend) == root;
    if (proof.path.size() < 64 && (proof.index >> proof.path.size()) != 0) return false;
    FieldElement node = leaf;
    std::size_t i = proof.index;
    for (const auto& sibling : proof.path) {
        node = (i & 1u) ? hash_pair(sibling, node, constants, params, backend)
                        : hash_pair(node, sibling, constants, params, backend);
        i >>= 1;
    }
    return node == root;
}

void write_proof(std::ostream& out, const InclusionProof& proof) {
    out << proof.index << '\n';
    for (const auto& node : proof.path) out << node.to_hex() << '\n';
}

namespace {

// Non-empty, non-comment lines, trimmed.
std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(first, last - first + 1));
    }
    return out;
}

}  // namespace

InclusionProof read_proof(std::istream& in, const gf::FieldParams& params) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw std::invalid_argument("proof: missing index line");
    InclusionProof proof;
    try {
        std::size_t used = 0;
        proof.index = std::stoull(lines[0], &used);
        if (used != lines[0].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw std::invalid_argument("proof: malformed index '" + lines[0] + "'");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) proof.path.push_back(params.from_hex(lines[i]));
    return proof;
}

std::vector<FieldElement> read_leaves(std::istream& in, const gf::FieldParams& params) {
    std::vector<FieldElement> leaves;
    for (const auto& line : content_lines(in)) leaves.push_back(params.from_hex(line));
    return leaves;
}

TreeCost batched_level_cost(const MerkleTree& tree, const pipesim::DesignConfig& config,
                            const mimc::RoundConstants& constants, const gf::FieldParams& params) {
    TreeCost cost;
    std::uint64_t total_cycles = 0;
    std::uint64_t total_nodes = 0;
    for (std::size_t l = 0; l + 1 < tree.levels.size(); ++l) {
        const auto& level = tree.levels[l];
        const auto& parents = tree.levels[l + 1];
        LevelCost lc;
        lc.nodes = parents.size();
        for (std::size_t first = 0; first < parents.size(); first += config.batch) {
            const std::size_t last = std::min(parents.size(), first + config.batch);
            std::vector<std::vector<FieldElement>> messages;
            for (std::size_t p = first; p < last; ++p) {
                const std::size_t left = 2 * p;
                const std::size_t right = left + 1 < level.size() ? left + 1 : left;
                messages.push_back({level[left], level[right]});
            }
            const auto sim = pipesim::simulate_hash_blocks(config, messages, constants, params);
            for (std::size_t p = first; p < last; ++p) {
                if (sim.digests[p - first] != parents[p]) {
                    throw std::logic_error("batched_level_cost: simulated node differs from the tree");
                }
            }
            ++lc.frames;
            lc.cycles += sim.report.total_cycles;
        }
        total_cycles += lc.cycles;
        total_nodes += lc.nodes;
        cost.levels.push_back(lc);
    }
    cost.report = pipesim::timing_report(config, total_cycles, total_nodes);
    return cost;
}

}  // namespace amaze::merkle
