#pragma once

#include <cstdint>

#include "amaze/pipesim/design.hpp"

namespace amaze::pipesim {

/// Amortized latency of the CPU software baseline the designs are compared against.
inline constexpr double kCpuReferenceLatencyUs = 31.093;

struct CycleReport {
    std::uint64_t total_cycles = 0;
    std::uint64_t batch_size = 0;
    double clock_mhz = 0;
    double amortized_latency_us = 0;   // total_cycles / (batch_size * clock_mhz)
    double throughput_ops_per_s = 0;   // clock_mhz * 1e6 * batch_size / total_cycles
};

/// Throws std::invalid_argument for a non-positive clock, zero cycles or zero batch.
CycleReport timing_report(std::uint64_t total_cycles, std::uint64_t batch, double clock_mhz);
CycleReport timing_report(const DesignConfig& config, std::uint64_t total_cycles, std::uint64_t batch);

/// cpu_latency_us / report.amortized_latency_us.
double speedup_vs_cpu(const CycleReport& report, double cpu_latency_us = kCpuReferenceLatencyUs);
double speedup_vs_cpu(double accelerator_latency_us, double cpu_latency_us = kCpuReferenceLatencyUs);

}  // namespace amaze::pipesim
