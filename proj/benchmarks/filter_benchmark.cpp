#include <benchmark/benchmark.h>

#include <cstddef>
#include <random>
#include <string>

#include "sagecell/model.hpp"
#include "sagecell/normalizer.hpp"
#include "sagecell/pipeline.hpp"
#include "sagecell/sanitizer.hpp"
#include "sagecell/scanner.hpp"

namespace {

std::string prose(std::size_t length, std::uint32_t seed) {
    static const std::string alphabet =
        "abcdefg hijklmno pqrs tuv wxyz., ()=+<>&\n";
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        out += alphabet[pick(rng)];
    }
    return out;
}

std::string document_with_blocks(std::size_t count) {
    std::string doc = prose(256, 7);
    for (std::size_t i = 0; i < count; ++i) {
        doc += "[sage]x = " + std::to_string(i) +
               "\nplot(sin(x), x, 0, 2*pi)[/sage]";
        doc += prose(256, static_cast<std::uint32_t>(i));
    }
    return doc;
}

std::string editor_text(std::size_t paragraphs) {
    std::string out;
    for (std::size_t i = 0; i < paragraphs; ++i) {
        out += "<p>x&nbsp;=&nbsp;" + std::to_string(i) +
               " &lt; 100 &amp;&amp; y &gt; 0<br />next\xC2\xA0line</p>";
    }
    return out;
}

std::string hostile_text(std::size_t repeats) {
    std::string out;
    for (std::size_t i = 0; i < repeats; ++i) {
        out += "print('ok') </scRipt> <!-- hidden --> \r\nplot(x)\n";
    }
    return out;
}

void BM_passthrough(benchmark::State& state) {
    const sagecell::FilterConfig config = sagecell::make_config({});
    const std::string doc = prose(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sagecell::filter_document(doc, config));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(doc.size()));
}
BENCHMARK(BM_passthrough)->Range(1 << 12, 1 << 20);

void BM_filter_document(benchmark::State& state) {
    const sagecell::FilterConfig config = sagecell::make_config({});
    const std::string doc =
        document_with_blocks(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sagecell::filter_document(doc, config));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(doc.size()));
}
BENCHMARK(BM_filter_document)->Arg(1)->Arg(8)->Arg(64);

void BM_extract_blocks(benchmark::State& state) {
    const sagecell::FilterConfig config = sagecell::make_config({});
    const std::string doc =
        document_with_blocks(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sagecell::extract_blocks(doc, config));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(doc.size()));
}
BENCHMARK(BM_extract_blocks)->Arg(1)->Arg(8)->Arg(64);

void BM_normalize(benchmark::State& state) {
    const std::string text =
        editor_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sagecell::normalize(text));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_normalize)->Range(8, 4096);

void BM_sanitize(benchmark::State& state) {
    const std::string text =
        hostile_text(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sagecell::sanitize(text));
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_sanitize)->Range(8, 4096);

} // namespace

BENCHMARK_MAIN();
