#include "sagecell/normalizer.hpp"

#include <array>
#include <cctype>
#include <cstddef>

namespace sagecell {

namespace {

bool is_name_end(char c) {
    return c == '>' || c == '/' || std::isspace(static_cast<unsigned char>(c)) != 0;
}

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool iequals(std::string_view text, std::string_view word) {
    if (text.size() != word.size()) {
        return false;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (lower(text[i]) != word[i]) {
            return false;
        }
    }
    return true;
}

// Byte length of a structural tag starting at pos (pointing at '<'), or 0
// when the text there is not one. The recognized set is closed: opening
// p/div with any attributes, closing </p> and </div>, and br in any form.
// Anything else, "<p" with no terminating '>' included, is left alone so
// code like "a<b" cannot be mangled.
std::size_t structural_tag_length(std::string_view s, std::size_t pos) {
    const std::size_t n = s.size();
    std::size_t i = pos + 1;
    if (i >= n) {
        return 0;
    }
    const bool closing = s[i] == '/';
    if (closing) {
        ++i;
    }
    const std::size_t name_start = i;
    while (i < n && !is_name_end(s[i])) {
        ++i;
    }
    const std::string_view name = s.substr(name_start, i - name_start);
    const bool is_break = iequals(name, "br");
    if (!iequals(name, "p") && !iequals(name, "div") && !is_break) {
        return 0;
    }
    if (closing) {
        if (is_break) {
            return 0;
        }
        while (i < n && std::isspace(static_cast<unsigned char>(s[i])) != 0) {
            ++i;
        }
        return (i < n && s[i] == '>') ? i + 1 - pos : 0;
    }
    // Opening form: attributes may follow; '>' inside a quoted attribute
    // value does not end the tag.
    char quote = 0;
    while (i < n) {
        const char c = s[i];
        if (quote != 0) {
            if (c == quote) {
                quote = 0;
            }
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            return i + 1 - pos;
        }
        ++i;
    }
    return 0;
}

std::string tags_to_newlines(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        if (raw[i] == '<') {
            if (const std::size_t len = structural_tag_length(raw, i); len != 0) {
                out.push_back('\n');
                i += len;
                continue;
            }
        }
        out.push_back(raw[i]);
        ++i;
    }
    return out;
}

std::string plain_spaces(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\xC2' && i + 1 < text.size() && text[i + 1] == '\xA0') {
            out.push_back(' ');
            i += 2;
            continue;
        }
        if (text.compare(i, 6, "&nbsp;") == 0) {
            out.push_back(' ');
            i += 6;
            continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

struct Entity {
    std::string_view name;
    char value;
};

constexpr std::array<Entity, 4> kEntities = {{
    {"&lt;", '<'},
    {"&gt;", '>'},
    {"&quot;", '"'},
    {"&#39;", '\''},
}};

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '&') {
            bool replaced = false;
            for (const Entity& entity : kEntities) {
                if (text.compare(i, entity.name.size(), entity.name) == 0) {
                    out.push_back(entity.value);
                    i += entity.name.size();
                    replaced = true;
                    break;
                }
            }
            if (replaced) {
                continue;
            }
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

// &amp; runs as its own final pass; decoding it earlier would let
// "&amp;lt;" collapse all the way down to "<".
std::string decode_amp(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text.compare(i, 5, "&amp;") == 0) {
            out.push_back('&');
            i += 5;
            continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

std::string trim(std::string text) {
    const char* ws = " \t\n\r\v\f";
    const auto first = text.find_first_not_of(ws);
    if (first == std::string::npos) {
        return std::string();
    }
    const auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

} // namespace

std::string normalize(std::string_view raw) {
    return trim(decode_amp(decode_entities(plain_spaces(tags_to_newlines(raw)))));
}

} // namespace sagecell
