#pragma once

#include <string_view>

#include "sagecell/model.hpp"

namespace sagecell {

// Runs the full filter over one document: fast rejection, block
// extraction, normalization, sanitization, emission.
//
// Documents failing the fast path (or containing no complete tag pair)
// come back byte-identical with zero cells. Otherwise every block's full
// span, pseudotags included, is replaced by its rendered cell fragment,
// the runtime header is spliced in exactly once immediately before the
// first fragment, and all bytes outside the spans are preserved exactly.
// cells lists (id, sanitized code) in document order.
//
// Pure function; filtering many documents concurrently is fine.
RenderedOutput filter_document(std::string_view content,
                               const FilterConfig& config);

RenderedOutput filter_document(const Document& document,
                               const FilterConfig& config);

} // namespace sagecell
