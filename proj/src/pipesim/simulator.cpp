#include "amaze/pipesim/simulator.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "amaze/gf/modmul.hpp"

namespace amaze::pipesim {

using gf::FieldElement;

std::string StageTrace::unit_name(const TraceRecord& r) const {
    std::string name = cell_names.at(r.cell);
    if (cell_is_serial.at(r.cell)) name += ".it" + std::to_string(r.step);
    return name;
}

std::optional<std::string> StageTrace::find_hazard() const {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> keys;
    keys.reserve(records.size());
    for (const auto& r : records) keys.emplace_back(r.cell, r.cycle);
    std::sort(keys.begin(), keys.end());
    const auto dup = std::adjacent_find(keys.begin(), keys.end());
    if (dup == keys.end()) return std::nullopt;
    return cell_names.at(dup->first) + " double-booked at cycle " + std::to_string(dup->second);
}

void StageTrace::write_csv(std::ostream& out) const {
    std::vector<const TraceRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& r : records) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const TraceRecord* a, const TraceRecord* b) {
        return std::tie(a->cycle, a->cell) < std::tie(b->cycle, b->cell);
    });
    out << "cycle,unit,request,round\n";
    for (const auto* r : sorted) out << r->cycle << ',' << unit_name(*r) << ',' << r->request << ',' << r->round << '\n';
}

namespace {

enum class Reg : std::uint8_t { S, A, T1, T2, T3, OUT };
constexpr std::size_t kRegCount = 6;

enum class OpKind { round_add, mul, key_add };

struct Instr {
    OpKind kind;
    unsigned unit;  // modmul unit index for mul
    Reg dst;
    Reg a;
    Reg b;
    bool ends_round;
};

// One round of the micro-program. The chains match gf::pow7_chain4 / pow7_chain3.
std::vector<Instr> round_program(unsigned exp_depth) {
    using R = Reg;
    std::vector<Instr> p;
    p.push_back({OpKind::round_add, 0, R::A, R::S, R::S, false});
    if (exp_depth == 4) {
        p.push_back({OpKind::mul, 0, R::T1, R::A, R::A, false});
        p.push_back({OpKind::mul, 0, R::T2, R::T1, R::T1, false});
        p.push_back({OpKind::mul, 0, R::T3, R::T2, R::T1, false});
        p.push_back({OpKind::mul, 0, R::S, R::T3, R::A, true});
    } else {
        p.push_back({OpKind::mul, 0, R::T1, R::A, R::A, false});
        p.push_back({OpKind::mul, 0, R::T2, R::T1, R::T1, false});
        p.push_back({OpKind::mul, 1, R::T3, R::T1, R::A, false});
        p.push_back({OpKind::mul, 0, R::S, R::T2, R::T3, true});
    }
    return p;
}

struct Unit {
    std::uint32_t first_cell = 0;
    unsigned stages = 1;    // pipelined: cells used on consecutive cycles
    unsigned busy = 1;      // serial: cycles the single cell is held
    bool serial = false;
    [[nodiscard]] unsigned latency() const { return serial ? busy : stages; }
};

struct Register {
    FieldElement value;
    std::uint64_t ready = 0;
    std::uint32_t version = 0;
    bool written = false;
};

class Machine {
public:
    Machine(const DesignConfig& config, const mimc::RoundConstants& constants, const gf::FieldParams& params,
            bool record_trace)
        : config_(config), constants_(constants), params_(params), record_(record_trace),
          program_(round_program(config.exp_depth)) {
        if (config.pipelined) {
            round_unit_ = add_pipelined("round_add", {""});
            const auto labels = modmul_stage_labels(config);
            for (unsigned u = 0; u < config.modmul_units(); ++u) {
                modmul_units_.push_back(add_pipelined("modmul" + std::to_string(u), labels));
            }
            out_unit_ = add_pipelined("key_add", {""});
        } else {
            round_unit_ = add_serial("round_ctrl", config.round_overhead);
            for (unsigned u = 0; u < config.modmul_units(); ++u) {
                modmul_units_.push_back(add_serial("modmul" + std::to_string(u), config.modmul_latency));
            }
            out_unit_ = add_serial("io", config.global_overhead);
        }
    }

    CipherSimulation run(std::span<const CipherRequest> batch) {
        const std::size_t n = batch.size();
        regs_.assign(n, {});
        keys_.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            // One admission per cycle: request j enters in cycle j of the window.
            regs_[j][idx(Reg::S)] = {batch[j].x, j, 0, true};
            keys_[j] = batch[j].k;
        }

        const std::size_t round_len = program_.size();
        const std::size_t last_pc = round_len * params_.rounds();  // final key addition

        using Entry = std::tuple<std::uint64_t, std::size_t, std::size_t>;  // earliest, request, pc
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
        for (std::size_t j = 0; j < n; ++j) queue.emplace(j, j, 0);

        while (!queue.empty()) {
            const auto [earliest, req, pc] = queue.top();
            queue.pop();
            execute(req, pc, earliest);
            if (pc < last_pc) queue.emplace(earliest_for(req, pc + 1), req, pc + 1);
        }

        CipherSimulation sim;
        sim.outputs.reserve(n);
        for (std::size_t j = 0; j < n; ++j) sim.outputs.push_back(regs_[j][idx(Reg::OUT)].value);
        sim.drain_cycles = drain_;
        sim.frame_cycles = config_.pipelined ? regs_[0][idx(Reg::S)].ready : drain_;
        sim.modmul_issues = modmul_issues_;
        sim.report = timing_report(config_, sim.frame_cycles, n);
        sim.trace = std::move(trace_);
        return sim;
    }

private:
    static constexpr std::size_t idx(Reg r) { return static_cast<std::size_t>(r); }

    std::size_t add_pipelined(const std::string& name, const std::vector<std::string>& labels) {
        Unit u;
        u.first_cell = static_cast<std::uint32_t>(trace_.cell_names.size());
        u.stages = static_cast<unsigned>(labels.size());
        for (const auto& l : labels) {
            trace_.cell_names.push_back(l.empty() ? name : name + "." + l);
            trace_.cell_is_serial.push_back(false);
        }
        units_.push_back(u);
        return units_.size() - 1;
    }

    std::size_t add_serial(const std::string& name, unsigned busy) {
        Unit u;
        u.first_cell = static_cast<std::uint32_t>(trace_.cell_names.size());
        u.busy = busy;
        u.serial = true;
        trace_.cell_names.push_back(name);
        trace_.cell_is_serial.push_back(true);
        units_.push_back(u);
        return units_.size() - 1;
    }

    [[nodiscard]] std::size_t round_of(std::size_t pc) const { return pc / program_.size(); }

    [[nodiscard]] bool is_final(std::size_t pc) const { return pc == program_.size() * params_.rounds(); }

    // Operands of the instruction at pc: which registers, at which version.
    [[nodiscard]] std::array<std::pair<Reg, std::uint32_t>, 2> operands(std::size_t pc) const {
        const auto round = static_cast<std::uint32_t>(round_of(pc));
        if (is_final(pc)) return {{{Reg::S, round}, {Reg::S, round}}};
        const Instr& in = program_[pc % program_.size()];
        return {{{in.a, round}, {in.b, round}}};
    }

    const Register& read(std::size_t req, Reg r, std::uint32_t version) const {
        const Register& reg = regs_[req][idx(r)];
        if (!reg.written || reg.version != version) {
            throw std::logic_error("pipeline schedule read a stale register");
        }
        return reg;
    }

    [[nodiscard]] std::uint64_t earliest_for(std::size_t req, std::size_t pc) const {
        std::uint64_t t = 0;
        for (const auto& [r, v] : operands(pc)) t = std::max(t, read(req, r, v).ready);
        return t;
    }

    [[nodiscard]] bool free_at(const Unit& u, std::uint64_t c) const {
        if (u.serial) {
            for (unsigned k = 0; k < u.busy; ++k) {
                if (busy_.contains(key(u.first_cell, c + k))) return false;
            }
        } else {
            for (unsigned k = 0; k < u.stages; ++k) {
                if (busy_.contains(key(u.first_cell + k, c + k))) return false;
            }
        }
        return true;
    }

    static std::uint64_t key(std::uint32_t cell, std::uint64_t cycle) { return (std::uint64_t{cell} << 40) | cycle; }

    void occupy(const Unit& u, std::uint64_t c, std::size_t req, std::uint32_t round) {
        const unsigned span = u.serial ? u.busy : u.stages;
        for (unsigned k = 0; k < span; ++k) {
            const std::uint32_t cell = u.serial ? u.first_cell : u.first_cell + k;
            const std::uint64_t cycle = c + k;
            if (!busy_.insert(key(cell, cycle)).second) throw std::logic_error("structural hazard");
            drain_ = std::max(drain_, cycle + 1);
            if (record_) {
                trace_.records.push_back({cycle, cell, static_cast<std::uint32_t>(req), round, u.serial ? k : 0});
            }
        }
    }

    FieldElement multiply(const FieldElement& a, const FieldElement& b) const {
        switch (config_.mul_algorithm) {
            case MulAlgorithm::barrett_chunked: return gf::mul_mod_barrett(a, b, params_, config_.chunk_bits);
            case MulAlgorithm::barrett_flat: return gf::mul_mod_barrett_flat(a, b, params_);
            case MulAlgorithm::peasant: return gf::mul_mod_peasant(a, b, params_);
        }
        throw std::logic_error("unknown multiplication algorithm");
    }

    void execute(std::size_t req, std::size_t pc, std::uint64_t earliest) {
        const auto round = static_cast<std::uint32_t>(round_of(pc));
        const auto ops = operands(pc);
        const FieldElement& a = read(req, ops[0].first, ops[0].second).value;
        const FieldElement& b = read(req, ops[1].first, ops[1].second).value;

        std::size_t unit_index;
        Reg dst;
        std::uint32_t version = round;
        FieldElement value;
        if (is_final(pc)) {
            unit_index = out_unit_;
            dst = Reg::OUT;
            value = gf::add_mod(a, keys_[req], params_);
        } else {
            const Instr& in = program_[pc % program_.size()];
            dst = in.dst;
            if (in.kind == OpKind::round_add) {
                unit_index = round_unit_;
                value = gf::add_mod(gf::add_mod(a, keys_[req], params_), constants_[round], params_);
            } else {
                unit_index = modmul_units_.at(in.unit);
                value = multiply(a, b);
                ++modmul_issues_;
            }
            if (in.ends_round) version = round + 1;
        }

        const Unit& u = units_[unit_index];
        std::uint64_t c = earliest;
        while (!free_at(u, c)) ++c;
        occupy(u, c, req, round);
        regs_[req][idx(dst)] = {value, c + u.latency(), version, true};
    }

    const DesignConfig& config_;
    const mimc::RoundConstants& constants_;
    const gf::FieldParams& params_;
    bool record_;
    std::vector<Instr> program_;

    std::vector<Unit> units_;
    std::size_t round_unit_ = 0;
    std::size_t out_unit_ = 0;
    std::vector<std::size_t> modmul_units_;

    std::vector<std::array<Register, kRegCount>> regs_;
    std::vector<FieldElement> keys_;
    std::unordered_set<std::uint64_t> busy_;
    std::uint64_t drain_ = 0;
    std::uint64_t modmul_issues_ = 0;
    StageTrace trace_;
};

}  // namespace

CipherSimulation simulate_cipher(const DesignConfig& config, std::span<const CipherRequest> batch,
                                 const mimc::RoundConstants& constants, const gf::FieldParams& params,
                                 const SimOptions& options) {
    validate(config);
    if (batch.empty()) throw std::invalid_argument("simulate_cipher: empty batch");
    if (batch.size() > config.batch) {
        throw std::invalid_argument("batch of " + std::to_string(batch.size()) + " exceeds the accept window of " +
                                    std::string(variant_name(config.variant)) + " (B = " +
                                    std::to_string(config.batch) + ")");
    }
    if (params.exponent() != 7) throw std::invalid_argument("simulate_cipher: the datapath computes x^7 only");
    mimc::validate(constants, params);

    Machine machine(config, constants, params, options.record_trace);
    CipherSimulation sim = machine.run(batch);
    if (options.record_trace) {
        if (auto hazard = sim.trace.find_hazard()) throw std::logic_error("simulate_cipher: " + *hazard);
    }
    return sim;
}

HashSimulation simulate_hash_blocks(const DesignConfig& config,
                                    std::span<const std::vector<gf::FieldElement>> messages,
                                    const mimc::RoundConstants& constants, const gf::FieldParams& params) {
    if (messages.empty()) throw std::invalid_argument("simulate_hash: no messages");
    if (messages.size() > config.batch) {
        throw std::invalid_argument("batch of " + std::to_string(messages.size()) + " exceeds the accept window of " +
                                    std::string(variant_name(config.variant)) + " (B = " +
                                    std::to_string(config.batch) + ")");
    }
    std::size_t frames = 0;
    for (const auto& m : messages) {
        if (m.empty()) throw std::invalid_argument("simulate_hash: message without blocks");
        frames = std::max(frames, m.size());
    }

    HashSimulation out;
    std::vector<FieldElement> chaining(messages.size(), params.zero());
    std::uint64_t total = 0;
    for (std::size_t f = 0; f < frames; ++f) {
        std::vector<CipherRequest> requests;
        std::vector<std::size_t> owner;
        for (std::size_t i = 0; i < messages.size(); ++i) {
            if (f < messages[i].size()) {
                requests.push_back({messages[i][f], chaining[i]});
                owner.push_back(i);
            }
        }
        const CipherSimulation sim = simulate_cipher(config, requests, constants, params, {.record_trace = false});
        for (std::size_t q = 0; q < owner.size(); ++q) {
            const std::size_t i = owner[q];
            chaining[i] = mimc::compress(chaining[i], messages[i][f], sim.outputs[q], params);
        }
        total += sim.report.total_cycles;
        out.cycles_per_frame = sim.report.total_cycles;
    }
    out.digests = std::move(chaining);
    out.frames = frames;
    out.report = timing_report(config, total, messages.size());
    return out;
}

HashSimulation simulate_hash(const DesignConfig& config, std::span<const std::vector<std::uint8_t>> messages,
                             const mimc::RoundConstants& constants, const gf::FieldParams& params) {
    std::vector<std::vector<FieldElement>> padded;
    padded.reserve(messages.size());
    for (const auto& m : messages) padded.push_back(mimc::pad_message(m, params));
    return simulate_hash_blocks(config, padded, constants, params);
}

}  // namespace amaze::pipesim
