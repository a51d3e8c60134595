#include "elfstar/dataio.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace elfstar {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error(what);
}

bool parse_double(const char* first, const char* last, double& out) {
    while (first != last && (*first == ' ' || *first == '\t')) {
        ++first;
    }
    while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) {
        --last;
    }
    if (first == last) {
        return false;
    }
    auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

std::vector<uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("cannot open " + path);
    }
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return bytes;
}

void write_binary_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail("cannot write " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        fail("write failed for " + path);
    }
}

std::vector<double> read_f64_file(const std::string& path) {
    std::vector<uint8_t> bytes = read_binary_file(path);
    if (bytes.size() % 8 != 0) {
        fail(path + ": size is not a multiple of 8");
    }
    std::vector<double> values(bytes.size() / 8);
    std::memcpy(values.data(), bytes.data(), bytes.size());
    return values;
}

void write_f64_file(const std::string& path, const std::vector<double>& values) {
    std::vector<uint8_t> bytes(values.size() * 8);
    std::memcpy(bytes.data(), values.data(), bytes.size());
    write_binary_file(path, bytes);
}

std::vector<double> parse_csv_column(const std::string& text, int column,
                                     bool skip_bad) {
    if (column < 1) {
        fail("csv column must be >= 1");
    }
    std::vector<double> values;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) {
            continue;
        }
        // split on commas, pick the requested field
        int field = 1;
        size_t begin = 0;
        size_t end = line.size();
        const char* cell_first = nullptr;
        const char* cell_last = nullptr;
        for (size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field == column) {
                    cell_first = line.data() + begin;
                    cell_last = line.data() + i;
                    break;
                }
                ++field;
                begin = i + 1;
            }
        }
        (void)end;
        if (cell_first == nullptr) {
            if (lineno == 1 || skip_bad) {
                continue;  // short line; tolerate headers and ragged tails
            }
            fail("line " + std::to_string(lineno) + ": no column " +
                 std::to_string(column));
        }
        double v = 0.0;
        if (!parse_double(cell_first, cell_last, v)) {
            if (lineno == 1) {
                continue;  // header row
            }
            if (skip_bad) {
                continue;
            }
            fail("line " + std::to_string(lineno) + ": bad float cell '" +
                 std::string(cell_first, cell_last) + "'");
        }
        values.push_back(v);
    }
    return values;
}

std::vector<double> read_csv_column(const std::string& path, int column,
                                    bool skip_bad) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail("cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_csv_column(buf.str(), column, skip_bad);
}

std::vector<double> gen_random_walk(const WalkParams& params) {
    if (params.alpha < 0 || params.alpha > 14) {
        fail("walk alpha must be in [0, 14]");
    }
    if (params.length == 0) {
        fail("walk length must be positive");
    }
    double scale = 1.0;
    for (int i = 0; i < params.alpha; ++i) {
        scale *= 10.0;  // exact: 10^14 is well under 2^53
    }
    int64_t pos = std::llround(params.start * scale);
    int64_t step_units = std::llround(std::fabs(params.max_step) * scale);
    if (step_units < 1) {
        step_units = 1;
    }
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<int64_t> step(-step_units, step_units);
    std::vector<double> values;
    values.reserve(params.length);
    for (size_t i = 0; i < params.length; ++i) {
        values.push_back(static_cast<double>(pos) / scale);
        pos += step(rng);
    }
    return values;
}

}  // namespace elfstar
