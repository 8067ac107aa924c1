#pragma once

#include <string_view>
#include <vector>

#include "sagecell/model.hpp"

namespace sagecell {

// Fast rejection check: true iff content is non-empty and contains the
// literal open token ("[" + tag_name + "]"), case-sensitively. The block
// pattern itself matches case-insensitively; the asymmetry is deliberate
// and mirrors the original filter, so e.g. "[SAGE]..." never reaches
// extraction through the pipeline.
bool has_candidate(std::string_view content, const FilterConfig& config);

// Extracts every non-overlapping block matching
//   \[tag\](.*?)\[/tag\]
// case-insensitively, with '.' matching newlines and a minimal capture,
// scanning left to right. Blocks come back ordered by span_start with raw
// set and the later stage fields unset. Unclosed or malformed tags simply
// yield no match for that region.
std::vector<CodeBlock> extract_blocks(std::string_view content,
                                      const FilterConfig& config);

} // namespace sagecell
