#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "elfstar/error.hpp"
#include "elfstar/streamcodec.hpp"
#include "testutil.hpp"

using namespace elfstar;

namespace {

std::vector<uint8_t> encode_stream(const std::vector<double>& values,
                                   uint32_t window = 1000) {
    StreamEncoder enc(window);
    for (double v : values) {
        enc.feed(v);
    }
    return enc.finish();
}

double payload_ratio(const std::vector<uint8_t>& container, size_t n) {
    return static_cast<double>(container.size() - kContainerHeaderSize - 4) /
           (8.0 * static_cast<double>(n));
}

}  // namespace

TEST_CASE("single value stream") {
    std::vector<double> one{3.17};
    auto container = encode_stream(one);
    CHECK(testutil::same_bits(stream_decompress(container), one));
}

TEST_CASE("window boundary cases") {
    auto exact = testutil::walk(2, 1000, 61);
    auto plus_one = testutil::walk(2, 1001, 61);

    auto c1 = encode_stream(exact, 1000);
    CHECK(testutil::same_bits(stream_decompress(c1), exact));
    StreamDecoder d1(c1);
    d1.read_all();
    CHECK(d1.windows().size() == 1);
    CHECK_FALSE(d1.windows()[0].rules_changed);

    auto c2 = encode_stream(plus_one, 1000);
    CHECK(testutil::same_bits(stream_decompress(c2), plus_one));
    StreamDecoder d2(c2);
    d2.read_all();
    REQUIRE(d2.windows().size() == 2);
    // the window after window 0 always gets recomputed rules
    CHECK(d2.windows()[1].rules_changed);
    CHECK(d2.windows()[1].value_count == 1);
}

TEST_CASE("roundtrip across window counts and value classes") {
    std::mt19937_64 seeds(67);
    for (size_t n : {1ul, 999ul, 1000ul, 1001ul, 5000ul}) {
        auto values = testutil::walk(2, n, seeds());
        CHECK(testutil::same_bits(stream_decompress(encode_stream(values)), values));
    }
    auto mixed = testutil::random_bit_patterns(3000, seeds());
    auto specials = testutil::special_values(500, seeds());
    mixed.insert(mixed.end(), specials.begin(), specials.end());
    CHECK(testutil::same_bits(stream_decompress(encode_stream(mixed, 512)), mixed));
}

TEST_CASE("precision jump triggers a rule refresh") {
    // windows 0-1 on a coarse lattice, then a fine lattice from window 2 on;
    // window 2 runs with stale rules, compresses worse, so window 3 opens
    // with fresh ones
    auto coarse = testutil::walk(2, 2000, 71);
    auto fine = testutil::walk(6, 2000, 72, 100.0, 0.000005);
    auto values = coarse;
    values.insert(values.end(), fine.begin(), fine.end());

    auto container = encode_stream(values, 1000);
    CHECK(testutil::same_bits(stream_decompress(container), values));
    StreamDecoder dec(container);
    dec.read_all();
    REQUIRE(dec.windows().size() == 4);
    CHECK_FALSE(dec.windows()[0].rules_changed);
    CHECK(dec.windows()[1].rules_changed);
    CHECK(dec.windows()[3].rules_changed);
}

TEST_CASE("deterministic output") {
    auto values = testutil::walk(3, 2500, 73);
    CHECK(encode_stream(values) == encode_stream(values));
}

TEST_CASE("xor chain is not reset at window boundaries") {
    // constant series: every xor after the first is zero; if the chain reset
    // per window, each window would re-emit the full first record
    std::vector<double> values(3000, 3.17);
    auto container = encode_stream(values, 1000);
    // window 0: flag + first record + 999 zero records; later windows:
    // flag + optional tiny rules + 1000 zero records (4 bits each)
    double ratio = payload_ratio(container, values.size());
    CHECK(ratio < 0.07);
    CHECK(testutil::same_bits(stream_decompress(container), values));
}

TEST_CASE("streaming tracks batch on stationary data") {
    auto values = testutil::walk(2, 20000, 79);
    auto stream = encode_stream(values, 1000);
    auto batch = compress_batch(values, 1000);
    double cr_stream = payload_ratio(stream, values.size());
    double cr_batch =
        static_cast<double>(batch.size() - kContainerHeaderSize) /
        (8.0 * static_cast<double>(values.size()));
    CHECK(std::fabs(cr_stream - cr_batch) <= 0.02);
}

TEST_CASE("encoder misuse") {
    StreamEncoder enc(100);
    CHECK_THROWS_AS(enc.finish(), std::logic_error);
    StreamEncoder enc2(100);
    enc2.feed(1.5);
    auto bytes = enc2.finish();
    CHECK_THROWS_AS(enc2.feed(2.5), std::logic_error);
    CHECK_THROWS_AS(enc2.finish(), std::logic_error);
    CHECK_THROWS_AS(StreamEncoder(0), std::invalid_argument);
}

TEST_CASE("malformed stream containers") {
    auto values = testutil::walk(2, 50, 83);
    auto container = encode_stream(values, 25);

    auto wrong_mode = container;
    wrong_mode[5] = kModeBatch;
    CHECK_THROWS_AS(stream_decompress(wrong_mode), decode_error);

    auto truncated = container;
    truncated.resize(kContainerHeaderSize + 2);
    CHECK_THROWS_AS(stream_decompress(truncated), decode_error);

    // flip the window-0 rule flag: the decoder now parses rules from record
    // bits, which must end in an error or a mismatch, never silent success
    auto flipped = container;
    flipped[kContainerHeaderSize + 4] ^= 0x80;
    bool caught = false;
    try {
        caught = !testutil::same_bits(stream_decompress(flipped), values);
    } catch (const decode_error&) {
        caught = true;
    }
    CHECK(caught);
}

TEST_CASE("mode dispatch") {
    auto values = testutil::walk(2, 1500, 89);
    CHECK(testutil::same_bits(decompress(encode_stream(values)), values));
    CHECK(testutil::same_bits(decompress(compress_batch(values, 500)), values));
}
