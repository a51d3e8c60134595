#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "elfstar/blockcodec.hpp"

namespace elfstar {

// One measured configuration on one input. compression_ratio is
// compressed payload bytes over 8 bytes per value; timings are averages of
// per-block medians, I/O excluded.
struct BenchRow {
    std::string name;
    size_t value_count = 0;
    double compression_ratio = 0.0;
    double compress_us_per_block = 0.0;
    double decompress_us_per_block = 0.0;
    std::string mode;    // "batch" | "stream"
    std::string config;  // "adaptive" | "fixed" | "legacy-share" | "stream"
};

struct BenchOptions {
    uint32_t block_size = 1000;
    size_t max_blocks = 100;  // cap on measured blocks per input
    int repetitions = 5;      // timing medians come from this many runs
    std::vector<std::string> configs = {"adaptive", "fixed", "legacy-share",
                                        "stream"};
};

// Runs every requested config over the first max_blocks * block_size values.
std::vector<BenchRow> run_bench(const std::string& name,
                                std::span<const double> values,
                                const BenchOptions& options);

std::string format_bench_table(const std::vector<BenchRow>& rows);
std::string format_bench_csv(const std::vector<BenchRow>& rows);

}  // namespace elfstar
