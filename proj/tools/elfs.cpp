// elfs: compress/decompress floating-point series, inspect zero-count
// distributions and approximation rules, benchmark codec configurations,
// and generate synthetic walks.

#include <algorithm>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elfstar/bench.hpp"
#include "elfstar/blockcodec.hpp"
#include "elfstar/dataio.hpp"
#include "elfstar/distrib.hpp"
#include "elfstar/error.hpp"
#include "elfstar/floatcodec.hpp"
#include "elfstar/ruleopt.hpp"
#include "elfstar/streamcodec.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitFormat = 3;

struct InputOptions {
    std::string path;
    int csv_column = 1;
    bool skip_bad = false;
};

std::vector<double> load_values(const InputOptions& in) {
    std::filesystem::path p(in.path);
    if (p.extension() == ".csv") {
        return elfstar::read_csv_column(in.path, in.csv_column, in.skip_bad);
    }
    return elfstar::read_f64_file(in.path);
}

elfstar::CodecConfig make_config(const std::string& rule_mode,
                                 const std::string& share) {
    elfstar::CodecConfig cfg;
    if (rule_mode == "fixed") {
        cfg.rule_mode = elfstar::RuleMode::kFixed;
    } else if (rule_mode != "adaptive") {
        throw CLI::ValidationError("--rule-mode must be adaptive or fixed");
    }
    if (share == "legacy") {
        cfg.share_mode = elfstar::ShareMode::kLegacyC;
    } else if (share != "adaptive") {
        throw CLI::ValidationError("--share must be adaptive or legacy");
    }
    return cfg;
}

// Erased XOR chain over the whole input; both distributions in one pass.
void gather_distributions(const std::vector<double>& values,
                          elfstar::CountDistribution& lead,
                          elfstar::CountDistribution& trail) {
    uint64_t prev = 0;
    for (double v : values) {
        uint64_t bits = std::bit_cast<uint64_t>(elfstar::erase(v).value);
        uint64_t x = bits ^ prev;
        if (x != 0) {
            lead.add(elfstar::count_lead(x));
            trail.add(elfstar::count_trail(x));
        }
        prev = bits;
    }
}

std::string rule_to_string(const elfstar::Rule& rule) {
    std::string s;
    for (size_t i = 0; i < rule.items.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(rule.items[i]);
    }
    return s;
}

void print_rule_line(const char* tag, const elfstar::CountDistribution& cd) {
    if (cd.total() == 0) {
        std::printf("%s: 0 (ln=0) cost=0 (empty distribution)\n", tag);
        return;
    }
    auto [rule, cost] = elfstar::global_app_rule(cd);
    std::printf("%s: %s (ln=%d) cost=%llu (app=%llu pre=%llu)\n", tag,
                rule_to_string(rule).c_str(), rule.presentation_bits(),
                static_cast<unsigned long long>(cost.c_total),
                static_cast<unsigned long long>(cost.c_app),
                static_cast<unsigned long long>(cost.c_pre));
}

int cmd_compress(const InputOptions& in, const std::string& out_path,
                 const std::string& mode, uint32_t block, uint32_t window,
                 const std::string& rule_mode, const std::string& share) {
    std::vector<double> values = load_values(in);
    if (values.empty()) {
        std::fprintf(stderr, "error: %s holds no values\n", in.path.c_str());
        return kExitData;
    }
    elfstar::CodecConfig cfg = make_config(rule_mode, share);
    std::vector<uint8_t> container;
    auto t0 = std::chrono::steady_clock::now();
    if (mode == "batch") {
        container = elfstar::compress_batch(values, block, cfg);
    } else {
        elfstar::StreamEncoder enc(window, cfg.share_mode);
        for (double v : values) {
            enc.feed(v);
        }
        container = enc.finish();
    }
    auto t1 = std::chrono::steady_clock::now();
    elfstar::write_binary_file(out_path, container);
    double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
    double ratio = static_cast<double>(container.size()) /
                   (8.0 * static_cast<double>(values.size()));
    std::printf("%s: %zu values -> %zu bytes, ratio %.4f, %.0f us (%s)\n",
                in.path.c_str(), values.size(), container.size(), ratio, us,
                mode.c_str());
    return 0;
}

int cmd_decompress(const std::string& in_path, const std::string& out_path) {
    std::vector<uint8_t> container = elfstar::read_binary_file(in_path);
    std::vector<double> values = elfstar::decompress(container);
    elfstar::write_f64_file(out_path, values);
    std::printf("%s: %zu values restored\n", in_path.c_str(), values.size());
    return 0;
}

int cmd_stats(const InputOptions& in) {
    std::vector<double> values = load_values(in);
    elfstar::CountDistribution lead;
    elfstar::CountDistribution trail;
    gather_distributions(values, lead, trail);
    std::printf("# lead\n");
    for (int i = 0; i < 64; ++i) {
        std::printf("%d %llu\n", i, static_cast<unsigned long long>(lead.count(i)));
    }
    std::printf("# trail\n");
    for (int i = 0; i < 64; ++i) {
        std::printf("%d %llu\n", i, static_cast<unsigned long long>(trail.count(i)));
    }
    return 0;
}

int cmd_rules(const InputOptions& in) {
    std::vector<double> values = load_values(in);
    elfstar::CountDistribution lead;
    elfstar::CountDistribution trail;
    gather_distributions(values, lead, trail);
    print_rule_line("lead", lead);
    print_rule_line("trail", trail);
    return 0;
}

int cmd_gen(const std::string& out_path, const elfstar::WalkParams& params,
            bool as_csv) {
    std::vector<double> values = elfstar::gen_random_walk(params);
    if (as_csv) {
        std::string text;
        char buf[48];
        for (double v : values) {
            auto res = std::to_chars(buf, buf + sizeof buf, v);
            text.append(buf, res.ptr);
            text += '\n';
        }
        elfstar::write_binary_file(out_path,
                                   std::vector<uint8_t>(text.begin(), text.end()));
    } else {
        elfstar::write_f64_file(out_path, values);
    }
    std::printf("%s: %zu values (alpha=%d seed=%llu)\n", out_path.c_str(),
                values.size(), params.alpha,
                static_cast<unsigned long long>(params.seed));
    return 0;
}

int cmd_bench(const std::vector<std::string>& inputs, int csv_column,
              const elfstar::BenchOptions& options, const std::string& format) {
    std::vector<elfstar::BenchRow> rows;
    int failures = 0;
    for (const auto& path : inputs) {
        std::vector<std::string> files;
        if (std::filesystem::is_directory(path)) {
            for (const auto& entry : std::filesystem::directory_iterator(path)) {
                if (entry.is_regular_file()) {
                    files.push_back(entry.path().string());
                }
            }
            std::sort(files.begin(), files.end());
        } else {
            files.push_back(path);
        }
        for (const auto& file : files) {
            try {
                InputOptions in{file, csv_column, true};
                std::vector<double> values = load_values(in);
                auto got = elfstar::run_bench(
                    std::filesystem::path(file).filename().string(), values,
                    options);
                rows.insert(rows.end(), got.begin(), got.end());
            } catch (const std::exception& e) {
                std::fprintf(stderr, "bench: %s: %s\n", file.c_str(), e.what());
                ++failures;
            }
        }
    }
    std::fputs((format == "csv" ? elfstar::format_bench_csv(rows)
                                : elfstar::format_bench_table(rows))
                   .c_str(),
               stdout);
    return failures > 0 && rows.empty() ? kExitData : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lossless floating-point time series compressor"};
    app.require_subcommand(1);

    // compress
    auto* compress = app.add_subcommand("compress", "compress a series file");
    InputOptions cin_opts;
    std::string c_out;
    std::string c_mode = "batch";
    uint32_t c_block = 1000;
    uint32_t c_window = 1000;
    std::string c_rule_mode = "adaptive";
    std::string c_share = "adaptive";
    compress->add_option("input", cin_opts.path, "input .f64 or .csv")->required();
    compress->add_option("output", c_out, "output container")->required();
    compress->add_option("--mode", c_mode, "batch|stream")
        ->check(CLI::IsMember({"batch", "stream"}));
    compress->add_option("--block", c_block, "batch block size");
    compress->add_option("--window", c_window, "stream window size");
    compress->add_option("--column", cin_opts.csv_column, "1-based CSV column");
    compress->add_flag("--skip-bad", cin_opts.skip_bad, "skip unparsable CSV cells");
    compress->add_option("--rule-mode", c_rule_mode, "adaptive|fixed");
    compress->add_option("--share", c_share, "adaptive|legacy");

    // decompress
    auto* decompress = app.add_subcommand("decompress", "restore a container to .f64");
    std::string d_in;
    std::string d_out;
    decompress->add_option("input", d_in, "input container")->required();
    decompress->add_option("output", d_out, "output .f64")->required();

    // stats
    auto* stats = app.add_subcommand("stats", "print lead/trail distributions");
    InputOptions s_opts;
    stats->add_option("input", s_opts.path, "input .f64 or .csv")->required();
    stats->add_option("--column", s_opts.csv_column, "1-based CSV column");
    stats->add_flag("--skip-bad", s_opts.skip_bad, "skip unparsable CSV cells");

    // rules
    auto* rules = app.add_subcommand("rules", "print globally best rules");
    InputOptions r_opts;
    rules->add_option("input", r_opts.path, "input .f64 or .csv")->required();
    rules->add_option("--column", r_opts.csv_column, "1-based CSV column");
    rules->add_flag("--skip-bad", r_opts.skip_bad, "skip unparsable CSV cells");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic random walk");
    std::string g_out;
    elfstar::WalkParams g_params;
    bool g_csv = false;
    gen->add_option("output", g_out, "output path")->required();
    gen->add_option("--alpha", g_params.alpha, "decimal places of the lattice");
    gen->add_option("--start", g_params.start, "starting value");
    gen->add_option("--step", g_params.max_step, "maximum absolute step");
    gen->add_option("--length", g_params.length, "number of values");
    gen->add_option("--seed", g_params.seed, "rng seed");
    gen->add_flag("--csv", g_csv, "write CSV instead of .f64");

    // bench
    auto* bench = app.add_subcommand("bench", "benchmark codec configurations");
    std::vector<std::string> b_inputs;
    elfstar::BenchOptions b_options;
    int b_column = 1;
    std::string b_format = "table";
    bench->add_option("inputs", b_inputs, "files or directories")->required();
    bench->add_option("--block", b_options.block_size, "block/window size");
    bench->add_option("--blocks", b_options.max_blocks, "max blocks per input");
    bench->add_option("--reps", b_options.repetitions, "timing repetitions");
    bench->add_option("--configs", b_options.configs,
                      "subset of adaptive fixed legacy-share stream");
    bench->add_option("--column", b_column, "1-based CSV column");
    bench->add_option("--format", b_format, "table|csv")
        ->check(CLI::IsMember({"table", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;  // 0 is --help/--version
    }

    try {
        if (compress->parsed()) {
            return cmd_compress(cin_opts, c_out, c_mode, c_block, c_window,
                                c_rule_mode, c_share);
        }
        if (decompress->parsed()) {
            return cmd_decompress(d_in, d_out);
        }
        if (stats->parsed()) {
            return cmd_stats(s_opts);
        }
        if (rules->parsed()) {
            return cmd_rules(r_opts);
        }
        if (gen->parsed()) {
            return cmd_gen(g_out, g_params, g_csv);
        }
        if (bench->parsed()) {
            return cmd_bench(b_inputs, b_column, b_options, b_format);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const elfstar::decode_error& e) {
        std::fprintf(stderr, "error: %s (bit offset %zu)\n", e.what(),
                     e.bit_offset());
        return kExitFormat;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
    return kExitUsage;
}
