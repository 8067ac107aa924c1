#include "sagecell/scanner.hpp"

#include <boost/regex.hpp>

namespace sagecell {

namespace {

// Escapes everything that is not alphanumeric so a tag like "a.b" only
// matches itself inside the pattern.
std::string escape_for_pattern(const std::string& text) {
    std::string out;
    out.reserve(text.size() * 2);
    for (char c : text) {
        const auto uc = static_cast<unsigned char>(c);
        const bool plain = (uc >= 'a' && uc <= 'z') || (uc >= 'A' && uc <= 'Z') ||
                           (uc >= '0' && uc <= '9');
        if (!plain) {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    return out;
}

boost::regex block_pattern(const FilterConfig& config) {
    const std::string tag = escape_for_pattern(config.tag_name);
    // mod_s gives '.' newline matching, matching the original /is flags.
    return boost::regex("\\[" + tag + "\\](.*?)\\[/" + tag + "\\]",
                        boost::regex::perl | boost::regex::icase |
                            boost::regex::mod_s);
}

} // namespace

bool has_candidate(std::string_view content, const FilterConfig& config) {
    if (content.empty()) {
        return false;
    }
    return content.find(config.open_token()) != std::string_view::npos;
}

std::vector<CodeBlock> extract_blocks(std::string_view content,
                                      const FilterConfig& config) {
    std::vector<CodeBlock> blocks;
    const boost::regex pattern = block_pattern(config);
    const char* begin = content.data();
    const char* end = begin + content.size();
    for (boost::cregex_iterator it(begin, end, pattern), last; it != last; ++it) {
        const boost::cmatch& match = *it;
        CodeBlock block;
        block.span_start = static_cast<std::size_t>(match[0].first - begin);
        block.span_end = static_cast<std::size_t>(match[0].second - begin);
        block.raw.assign(match[1].first, match[1].second);
        blocks.push_back(std::move(block));
    }
    return blocks;
}

} // namespace sagecell
