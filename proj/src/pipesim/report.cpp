#include "amaze/pipesim/report.hpp"

#include <stdexcept>

namespace amaze::pipesim {

CycleReport timing_report(std::uint64_t total_cycles, std::uint64_t batch, double clock_mhz) {
    if (!(clock_mhz > 0)) throw std::invalid_argument("timing_report: clock frequency must be positive");
    if (total_cycles == 0) throw std::invalid_argument("timing_report: zero cycles");
    if (batch == 0) throw std::invalid_argument("timing_report: empty batch");
    CycleReport r;
    r.total_cycles = total_cycles;
    r.batch_size = batch;
    r.clock_mhz = clock_mhz;
    const auto cycles = static_cast<double>(total_cycles);
    const auto ops = static_cast<double>(batch);
    r.amortized_latency_us = cycles / (ops * clock_mhz);
    r.throughput_ops_per_s = clock_mhz * 1e6 * ops / cycles;
    return r;
}

CycleReport timing_report(const DesignConfig& config, std::uint64_t total_cycles, std::uint64_t batch) {
    return timing_report(total_cycles, batch, config.clock_mhz);
}

double speedup_vs_cpu(double accelerator_latency_us, double cpu_latency_us) {
    if (!(accelerator_latency_us > 0) || !(cpu_latency_us > 0)) {
        throw std::invalid_argument("speedup_vs_cpu: latencies must be positive");
    }
    return cpu_latency_us / accelerator_latency_us;
}

double speedup_vs_cpu(const CycleReport& report, double cpu_latency_us) {
    return speedup_vs_cpu(report.amortized_latency_us, cpu_latency_us);
}

}  // namespace amaze::pipesim
