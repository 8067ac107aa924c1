#include "sagecell/sanitizer.hpp"

#include <cctype>
#include <cstddef>

namespace sagecell {

namespace {

bool matches_icase(std::string_view text, std::size_t pos, std::string_view word) {
    if (pos + word.size() > text.size()) {
        return false;
    }
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != word[i]) {
            return false;
        }
    }
    return true;
}

std::string strip_control_bytes(std::string_view code) {
    std::string out;
    out.reserve(code.size());
    for (char c : code) {
        const auto uc = static_cast<unsigned char>(c);
        if (uc < 0x20 && c != '\t' && c != '\n') {
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::string break_script_close(std::string_view code) {
    std::string out;
    out.reserve(code.size() + 8);
    std::size_t i = 0;
    while (i < code.size()) {
        if (matches_icase(code, i, "</script")) {
            out.push_back('<');
            out.push_back(' ');
            out.append(code.substr(i + 1, 7)); // keep the author's casing
            i += 8;
            continue;
        }
        out.push_back(code[i]);
        ++i;
    }
    return out;
}

std::string break_comment_open(std::string_view code) {
    std::string out;
    out.reserve(code.size() + 4);
    std::size_t i = 0;
    while (i < code.size()) {
        if (code.compare(i, 4, "<!--") == 0) {
            out.append("<! --");
            i += 4;
            continue;
        }
        out.push_back(code[i]);
        ++i;
    }
    return out;
}

} // namespace

std::string sanitize(std::string_view code) {
    return break_comment_open(break_script_close(strip_control_bytes(code)));
}

bool contains_script_close(std::string_view text) noexcept {
    if (text.size() < 8) {
        return false;
    }
    for (std::size_t i = 0; i + 8 <= text.size(); ++i) {
        if (matches_icase(text, i, "</script")) {
            return true;
        }
    }
    return false;
}

} // namespace sagecell
