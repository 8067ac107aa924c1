#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "sagecell/model.hpp"
#include "sagecell/scanner.hpp"
#include "support/oracle.hpp"

using namespace sagecell;
using testsupport::ifind;
using testsupport::naive_extract;

namespace {

void check_against_oracle(const std::string& content,
                          const FilterConfig& config) {
    const auto got = extract_blocks(content, config);
    const auto want = naive_extract(content, config.tag_name);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CAPTURE(content);
        CAPTURE(i);
        CHECK(got[i].span_start == want[i].span_start);
        CHECK(got[i].span_end == want[i].span_end);
        CHECK(got[i].raw == want[i].raw);
    }
}

} // namespace

TEST_CASE("fast path needs a non-empty document with the literal open token") {
    const FilterConfig config = make_config();
    CHECK_FALSE(has_candidate("", config));
    CHECK_FALSE(has_candidate("plain paragraph", config));
    CHECK(has_candidate("a[sage]b", config));
    CHECK(has_candidate("[sage]", config));
}

TEST_CASE("fast path is case-sensitive while the pattern is not") {
    const FilterConfig config = make_config();
    CHECK_FALSE(has_candidate("[SAGE]x[/SAGE]", config));
    CHECK_FALSE(has_candidate("[Sage]x[/sage]", config));

    const auto blocks = extract_blocks("[SAGE]x[/SAGE]", config);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].raw == "x");
}

TEST_CASE("a single exact block covers the whole string") {
    const FilterConfig config = make_config();
    const std::string content = "[sage]1+1[/sage]";
    const auto blocks = extract_blocks(content, config);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].span_start == 0);
    CHECK(blocks[0].span_end == content.size());
    CHECK(blocks[0].raw == "1+1");
    CHECK_FALSE(blocks[0].normalized.has_value());
    CHECK_FALSE(blocks[0].sanitized.has_value());
}

TEST_CASE("two blocks with surrounding text agree with the reference scanner") {
    const FilterConfig config = make_config();
    const std::string content = "a[sage]x[/sage]b[sage]y[/sage]c";
    check_against_oracle(content, config);
    const auto blocks = extract_blocks(content, config);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].raw == "x");
    CHECK(blocks[1].raw == "y");
}

TEST_CASE("an unclosed tag yields nothing") {
    const FilterConfig config = make_config();
    check_against_oracle("[sage]x", config);
    CHECK(extract_blocks("[sage]x", config).empty());
    CHECK(extract_blocks("x[/sage]", config).empty());
}

TEST_CASE("a nested open token belongs to the capture") {
    const FilterConfig config = make_config();
    const std::string content = "[sage]a[sage]b[/sage]";
    check_against_oracle(content, config);
    const auto blocks = extract_blocks(content, config);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].raw == "a[sage]b");
}

TEST_CASE("captures may span newlines") {
    const FilterConfig config = make_config();
    const auto blocks = extract_blocks("[sage]a\nb\r\nc[/sage]", config);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].raw == "a\nb\r\nc");
}

TEST_CASE("mixed-case tags match and keep original bytes in the capture") {
    const FilterConfig config = make_config();
    const std::string content = "[sAgE]Code[/SaGe]";
    check_against_oracle(content, config);
    const auto blocks = extract_blocks(content, config);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].raw == "Code");
}

TEST_CASE("tag names with metacharacters match only themselves") {
    ConfigOverrides overrides;
    overrides.tag_name = "a.b";
    const FilterConfig config = make_config(overrides);
    CHECK(extract_blocks("[a.b]x[/a.b]", config).size() == 1);
    // An unescaped dot would let any character match here.
    CHECK(extract_blocks("[aXb]x[/aXb]", config).empty());
    check_against_oracle("[a.b]x[/a.b] [axb]y[/ayb]", config);
}

TEST_CASE("randomized tag soup agrees with the reference scanner") {
    const FilterConfig config = make_config();
    const std::vector<std::string> fragments = {
        "[sage]",  "[/sage]", "[SAGE]",  "[/SAGE]", "[sAge]", "[/saGe]",
        "[sage",   "sage]",   "[/sage",  "/sage]",  "[",      "]",
        "[sagex]", "[page]",  "x=1\n",   "plot(t)", " text ", "a[sageb",
    };
    std::mt19937 rng(20151029);
    std::uniform_int_distribution<std::size_t> pick(0, fragments.size() - 1);
    std::uniform_int_distribution<int> length(0, 24);
    for (int doc = 0; doc < 300; ++doc) {
        std::string content;
        const int parts = length(rng);
        for (int i = 0; i < parts; ++i) {
            content += fragments[pick(rng)];
        }
        check_against_oracle(content, config);

        // Structural invariants on whatever was extracted.
        const auto blocks = extract_blocks(content, config);
        std::size_t previous_end = 0;
        for (const auto& block : blocks) {
            REQUIRE(block.span_start >= previous_end);
            REQUIRE(block.span_start < block.span_end);
            REQUIRE(block.span_end <= content.size());
            const std::string_view span(content.data() + block.span_start,
                                        block.span_end - block.span_start);
            CHECK(ifind(span, config.open_token()) == 0);
            CHECK(ifind(span, config.close_token()) ==
                  span.size() - config.close_token().size());
            CHECK(content.substr(block.span_start + config.open_token().size(),
                                 block.raw.size()) == block.raw);
            previous_end = block.span_end;
        }
    }
}

TEST_CASE("large captures extract without recursion limits") {
    const FilterConfig config = make_config();
    std::string content = "[sage]";
    content.append(1 << 20, 'x');
    content += "[/sage]";
    const auto blocks = extract_blocks(content, config);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].raw.size() == std::size_t(1 << 20));
    CHECK(blocks[0].span_end == content.size());
}
