#include "sagecell/pipeline.hpp"

#include "sagecell/emitter.hpp"
#include "sagecell/normalizer.hpp"
#include "sagecell/sanitizer.hpp"
#include "sagecell/scanner.hpp"

namespace sagecell {

RenderedOutput filter_document(std::string_view content,
                               const FilterConfig& config) {
    RenderedOutput out;
    if (!has_candidate(content, config)) {
        out.html.assign(content);
        return out;
    }
    std::vector<CodeBlock> blocks = extract_blocks(content, config);
    if (blocks.empty()) {
        out.html.assign(content);
        return out;
    }

    std::string html;
    html.reserve(content.size() + 320 * blocks.size());
    std::size_t cursor = 0;
    std::size_t index = 0;
    for (CodeBlock& block : blocks) {
        ++index;
        // normalize before sanitize: decoding entities can surface '<'
        // characters the sanitizer must still see.
        block.normalized = normalize(block.raw);
        block.sanitized = sanitize(*block.normalized);

        html.append(content.substr(cursor, block.span_start - cursor));
        if (index == 1) {
            html += render_header(config);
        }
        html += render_cell(*block.sanitized, index, config);
        out.cells.push_back({cell_id(index, config), *block.sanitized});
        cursor = block.span_end;
    }
    html.append(content.substr(cursor));
    out.html = std::move(html);
    return out;
}

RenderedOutput filter_document(const Document& document,
                               const FilterConfig& config) {
    return filter_document(std::string_view(document.content), config);
}

} // namespace sagecell
