#include "elfstar/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "elfstar/streamcodec.hpp"

namespace elfstar {

namespace {

using clock_type = std::chrono::steady_clock;

double median_us(std::vector<double>& samples) {
    std::sort(samples.begin(), samples.end());
    size_t n = samples.size();
    return n % 2 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

template <typename F>
double timed_median_us(int repetitions, F&& work) {
    std::vector<double> samples;
    samples.reserve(static_cast<size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
        auto t0 = clock_type::now();
        work();
        auto t1 = clock_type::now();
        samples.push_back(
            std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    return median_us(samples);
}

CodecConfig config_for(const std::string& name) {
    CodecConfig cfg;
    if (name == "adaptive") {
        // defaults
    } else if (name == "fixed") {
        cfg.rule_mode = RuleMode::kFixed;
    } else if (name == "legacy-share") {
        cfg.share_mode = ShareMode::kLegacyC;
    } else {
        throw std::runtime_error("unknown bench config: " + name);
    }
    return cfg;
}

BenchRow bench_batch(const std::string& name, std::span<const double> values,
                     const BenchOptions& opt, const std::string& config) {
    CodecConfig cfg = config_for(config);
    size_t nblocks = 0;
    size_t payload_bytes = 0;
    double compress_us = 0.0;
    double decompress_us = 0.0;
    for (size_t at = 0; at < values.size(); at += opt.block_size) {
        size_t n = std::min<size_t>(opt.block_size, values.size() - at);
        auto block = values.subspan(at, n);
        std::vector<uint8_t> payload;
        compress_us += timed_median_us(opt.repetitions, [&] {
            payload = compress_block(block, cfg);
        });
        std::vector<double> back;
        decompress_us += timed_median_us(opt.repetitions, [&] {
            back = decompress_block(payload);
        });
        payload_bytes += payload.size();
        ++nblocks;
    }
    BenchRow row;
    row.name = name;
    row.value_count = values.size();
    row.compression_ratio =
        static_cast<double>(payload_bytes) / (8.0 * static_cast<double>(values.size()));
    row.compress_us_per_block = compress_us / static_cast<double>(nblocks);
    row.decompress_us_per_block = decompress_us / static_cast<double>(nblocks);
    row.mode = "batch";
    row.config = config;
    return row;
}

BenchRow bench_stream(const std::string& name, std::span<const double> values,
                      const BenchOptions& opt) {
    size_t nblocks = (values.size() + opt.block_size - 1) / opt.block_size;
    std::vector<uint8_t> container;
    double compress_us = timed_median_us(opt.repetitions, [&] {
        StreamEncoder enc(opt.block_size);
        for (double v : values) {
            enc.feed(v);
        }
        container = enc.finish();
    });
    std::vector<double> back;
    double decompress_us = timed_median_us(opt.repetitions, [&] {
        back = stream_decompress(container);
    });
    size_t payload_bytes = container.size() - kContainerHeaderSize - 4;
    BenchRow row;
    row.name = name;
    row.value_count = values.size();
    row.compression_ratio =
        static_cast<double>(payload_bytes) / (8.0 * static_cast<double>(values.size()));
    row.compress_us_per_block = compress_us / static_cast<double>(nblocks);
    row.decompress_us_per_block = decompress_us / static_cast<double>(nblocks);
    row.mode = "stream";
    row.config = "stream";
    return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::string& name,
                                std::span<const double> values,
                                const BenchOptions& options) {
    if (values.empty()) {
        throw std::runtime_error("bench: no values in " + name);
    }
    size_t cap = options.max_blocks * options.block_size;
    auto measured = values.subspan(0, std::min(values.size(), cap));
    std::vector<BenchRow> rows;
    for (const auto& config : options.configs) {
        if (config == "stream") {
            rows.push_back(bench_stream(name, measured, options));
        } else {
            rows.push_back(bench_batch(name, measured, options, config));
        }
    }
    return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-20s %10s %8s %12s %14s %-7s %s\n", "name",
                  "values", "ratio", "comp us/blk", "decomp us/blk", "mode",
                  "config");
    out += line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-20s %10zu %8.4f %12.1f %14.1f %-7s %s\n",
                      r.name.c_str(), r.value_count, r.compression_ratio,
                      r.compress_us_per_block, r.decompress_us_per_block,
                      r.mode.c_str(), r.config.c_str());
        out += line;
    }
    return out;
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "name,value_count,compression_ratio,compress_us_per_block,"
                      "decompress_us_per_block,mode,config\n";
    char line[256];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%s,%zu,%.6f,%.3f,%.3f,%s,%s\n",
                      r.name.c_str(), r.value_count, r.compression_ratio,
                      r.compress_us_per_block, r.decompress_us_per_block,
                      r.mode.c_str(), r.config.c_str());
        out += line;
    }
    return out;
}

}  // namespace elfstar
