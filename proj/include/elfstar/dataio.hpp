#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace elfstar {

// Raw little-endian 8-byte doubles (.f64), the fixture/golden format.
std::vector<double> read_f64_file(const std::string& path);
void write_f64_file(const std::string& path, const std::vector<double>& values);

// One column of a CSV file parsed as doubles. `column` is 1-based. Cells
// that fail to parse abort with std::runtime_error unless skip_bad is set.
// A non-numeric first line is treated as a header and skipped.
std::vector<double> read_csv_column(const std::string& path, int column,
                                    bool skip_bad = false);
std::vector<double> parse_csv_column(const std::string& text, int column,
                                     bool skip_bad = false);

// Random walk on the 10^-alpha lattice: every value is (an exactly rounded
// double of) an integer multiple of 10^-alpha, steps are uniform in
// [-max_step, max_step] on the same lattice.
struct WalkParams {
    int alpha = 2;
    double start = 100.0;
    double max_step = 0.05;
    size_t length = 1000;
    uint64_t seed = 1;
};
std::vector<double> gen_random_walk(const WalkParams& params);

std::vector<uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace elfstar
