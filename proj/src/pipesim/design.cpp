#include "amaze/pipesim/design.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace amaze::pipesim {

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::amz1: return "AMZ-1";
        case Variant::amz1a: return "AMZ-1a";
        case Variant::amz1b: return "AMZ-1b";
        case Variant::amz2: return "AMZ-2";
        case Variant::amz2a: return "AMZ-2a";
        case Variant::amz2b: return "AMZ-2b";
        case Variant::amz3: return "AMZ-3";
    }
    return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
    auto normalize = [](std::string_view s) {
        std::string out;
        for (char c : s) {
            if (c == '-' || c == '_') continue;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        return out;
    };
    const std::string key = normalize(name);
    for (Variant v : kAllVariants) {
        if (normalize(variant_name(v)) == key) return v;
    }
    return std::nullopt;
}

std::string_view algorithm_name(MulAlgorithm a) {
    switch (a) {
        case MulAlgorithm::barrett_chunked: return "barrett-chunked";
        case MulAlgorithm::barrett_flat: return "barrett-flat";
        case MulAlgorithm::peasant: return "peasant";
    }
    return "unknown";
}

DesignConfig preset(Variant v) {
    DesignConfig c;
    c.variant = v;
    switch (v) {
        case Variant::amz1:
        case Variant::amz2:
            // 3 x (3-stage multiplier + transfer) = 12, plus the pipeline register transfer.
            c.mul_algorithm = MulAlgorithm::barrett_chunked;
            c.intmul_stages = 3;
            c.modmul_latency = 13;
            c.batch = 13;
            c.clock_mhz = v == Variant::amz1 ? 128.27 : 125.75;
            break;
        case Variant::amz1a:
        case Variant::amz2a:
            // Synthesized x*y: the Barrett unit has latency 3, plus the transfer.
            c.mul_algorithm = MulAlgorithm::barrett_flat;
            c.intmul_stages = 1;
            c.modmul_latency = 4;
            c.batch = 4;
            c.clock_mhz = v == Variant::amz1a ? 43.47 : 39.97;
            break;
        case Variant::amz1b:
        case Variant::amz2b:
            c.mul_algorithm = MulAlgorithm::barrett_flat;
            c.intmul_stages = 1;
            c.pipelined = false;
            c.modmul_latency = 9;
            c.batch = 1;
            c.round_overhead = 10;
            c.global_overhead = 3;
            c.calibrated = true;
            c.clock_mhz = v == Variant::amz1b ? 44.89 : 44.07;
            break;
        case Variant::amz3:
            c.mul_algorithm = MulAlgorithm::peasant;
            c.intmul_stages = 0;
            c.transfer_cycles = 0;
            c.pipelined = false;
            c.modmul_latency = 254;
            c.batch = 1;
            c.round_overhead = 29;
            c.global_overhead = 47;
            c.calibrated = true;
            c.clock_mhz = 151.45;
            break;
    }
    const bool two_units = v == Variant::amz2 || v == Variant::amz2a || v == Variant::amz2b || v == Variant::amz3;
    c.exp_depth = two_units ? 3 : 4;
    return c;
}

DesignConfig preset(std::string_view name) {
    const auto v = parse_variant(name);
    if (!v) throw std::invalid_argument("unknown design variant '" + std::string(name) + "'");
    return preset(*v);
}

std::vector<std::string> modmul_stage_labels(const DesignConfig& c) {
    std::vector<std::string> labels;
    if (!c.pipelined) return labels;
    for (int m = 1; m <= 3; ++m) {
        const std::string mul = "mul" + std::to_string(m);
        if (c.intmul_stages == 1) {
            labels.push_back(mul);
        } else {
            for (unsigned s = 1; s <= c.intmul_stages; ++s) labels.push_back(mul + ".s" + std::to_string(s));
        }
        // The flat unit forwards between its multipliers combinationally.
        if (c.mul_algorithm == MulAlgorithm::barrett_chunked) {
            for (unsigned t = 0; t < c.transfer_cycles; ++t) labels.push_back(mul + ".xfer");
        }
    }
    for (unsigned t = 0; t < c.transfer_cycles; ++t) labels.push_back("out.xfer");
    return labels;
}

void validate(const DesignConfig& c) {
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument(std::string(variant_name(c.variant)) + ": " + what);
    };
    if (c.exp_depth != 3 && c.exp_depth != 4) fail("exponentiation depth must be 3 or 4");
    if (c.modmul_latency == 0) fail("modular multiplier latency must be positive");
    if (!(c.clock_mhz > 0)) fail("clock frequency must be positive");
    if (c.chunk_bits < 2 || c.chunk_bits > 32) fail("chunk width must be in [2, 32]");
    if (c.pipelined) {
        if (c.batch != c.modmul_latency) fail("pipelined designs accept exactly P requests per frame");
        if (modmul_stage_labels(c).size() != c.modmul_latency) fail("stage labels do not add up to P");
        if (c.mul_algorithm == MulAlgorithm::peasant) fail("the peasant unit is not pipelined");
    } else {
        if (c.batch != 1) fail("serial designs have batch size 1");
        if (c.round_overhead == 0 || c.global_overhead == 0) fail("serial designs need nonzero overheads");
    }
}

std::string describe(const DesignConfig& c) {
    std::ostringstream os;
    const char* fitted = c.calibrated ? "  (calibrated)" : "";
    os << "variant          " << variant_name(c.variant) << "\n"
       << "mul algorithm    " << algorithm_name(c.mul_algorithm) << "\n"
       << "pipelined        " << (c.pipelined ? "yes" : "no") << "\n"
       << "modmul units     " << c.modmul_units() << "\n"
       << "exp depth E      " << c.exp_depth << "\n"
       << (c.pipelined ? "modmul latency P " : "modmul latency M ") << c.modmul_latency
       << (c.calibrated && c.mul_algorithm != MulAlgorithm::peasant ? fitted : "") << "\n"
       << "batch B          " << c.batch << "\n";
    if (!c.pipelined) {
        os << "round overhead O " << c.round_overhead << fitted << "\n"
           << "global overhead G " << c.global_overhead << fitted << "\n";
    }
    os << "chunk bits W     " << c.chunk_bits << "\n"
       << "clock            " << c.clock_mhz << " MHz\n";
    return os.str();
}

}  // namespace amaze::pipesim
