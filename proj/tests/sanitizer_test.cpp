#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "sagecell/sanitizer.hpp"
#include "support/html_checker.hpp"
#include "support/oracle.hpp"

using sagecell::contains_script_close;
using sagecell::sanitize;
using testsupport::ifind;

TEST_CASE("clean code passes through byte-identical") {
    CHECK(sanitize("print(1+1)") == "print(1+1)");
    CHECK(sanitize("") == "");
    CHECK(sanitize("a\tb\nc") == "a\tb\nc");
    CHECK(sanitize("x = '<script>'") == "x = '<script>'");
    CHECK(sanitize("a <!- b --> c") == "a <!- b --> c");
}

TEST_CASE("closing script tags get a space wedged in") {
    CHECK(sanitize("</script><script>alert(1)") == "< /script><script>alert(1)");
    CHECK(sanitize("</script>") == "< /script>");
    CHECK(sanitize("</script") == "< /script");
    CHECK(sanitize("a</scriptb") == "a< /scriptb");
}

TEST_CASE("case is preserved while the tag is broken") {
    CHECK(sanitize("</ScRiPt") == "< /ScRiPt");
    CHECK(sanitize("</SCRIPT>") == "< /SCRIPT>");
}

TEST_CASE("comment openers get a space wedged in") {
    CHECK(sanitize("x<!--y") == "x<! --y");
    CHECK(sanitize("<!--") == "<! --");
    CHECK(sanitize("<!--<!--") == "<! --<! --");
}

TEST_CASE("control bytes vanish before tag scanning") {
    const std::string input = std::string("a\0b\r\nc", 6);
    CHECK(sanitize(input) == "ab\nc");
    CHECK(sanitize("a\x01\x02\x1F"
                   "b") == "ab");
    // A carriage return inside a split tag must not let the pieces
    // reassemble into a live closing tag.
    const std::string split = "</scri\rpt>";
    const std::string out = sanitize(split);
    CHECK(out == "< /script>");
    CHECK(ifind(out, "</script") == std::string::npos);
}

TEST_CASE("script close detection is case-insensitive") {
    CHECK(contains_script_close("abc</script>def"));
    CHECK(contains_script_close("</SCRIPT"));
    CHECK(contains_script_close("</sCrIpT x"));
    CHECK_FALSE(contains_script_close("<script>"));
    CHECK_FALSE(contains_script_close("< /script>"));
    CHECK_FALSE(contains_script_close(""));
}

TEST_CASE("sanitized output is inert and sanitizing is idempotent") {
    std::mt19937 rng(404);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> length(0, 120);
    std::uniform_int_distribution<int> coin(0, 3);
    const std::vector<std::string> payloads = {
        "</ScRiPt", "</script>", "<!--", "<!-", "</scr", "\r", "<", "--",
    };
    std::uniform_int_distribution<std::size_t> pick(0, payloads.size() - 1);

    for (int i = 0; i < 2000; ++i) {
        std::string input;
        const int n = length(rng);
        for (int j = 0; j < n; ++j) {
            if (coin(rng) == 0) {
                input += payloads[pick(rng)];
            } else {
                input.push_back(static_cast<char>(byte(rng)));
            }
        }
        const std::string out = sanitize(input);
        CAPTURE(input);
        CHECK(ifind(out, "</script") == std::string::npos);
        CHECK(out.find("<!--") == std::string::npos);
        for (char c : out) {
            const auto u = static_cast<unsigned char>(c);
            REQUIRE((u >= 0x20 || u == '\t' || u == '\n'));
        }
        CHECK(sanitize(out) == out);

        // Embedding the result in a raw-text script element must close
        // exactly at the wrapper's own closing tag.
        const std::string page =
            "<script type=\"text/x-sage\">" + out + "</script>";
        std::string why;
        CHECK_MESSAGE(testsupport::html_balanced(page, &why), why);
    }
}
