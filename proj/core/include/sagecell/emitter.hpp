#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sagecell/model.hpp"

namespace sagecell {

// The DOM id of cell number `index` (1-based), e.g. "sagecell-1".
std::string cell_id(std::size_t index, const FilterConfig& config);

// Once-per-document runtime includes, two '\n'-terminated lines:
//
//   <script src="{server_url}/static/jquery.min.js"></script>
//   <script src="{server_url}/static/embedded_sagecell.js"></script>
std::string render_header(const FilterConfig& config);

// The embedded cell fragment for one sanitized block, two '\n'-terminated
// lines: the compute div carrying the code in a text/x-sage script
// element, then the per-cell init script. The init options are serialized
// with a fixed key order (inputLocation, hide, autoeval) so the output is
// bit-stable.
//
// index is 1-based. Code still containing a case-insensitive "</script"
// violates the sanitizer's postcondition and raises contract_error; the
// pipeline never lets that happen.
std::string render_cell(std::string_view sanitized_code, std::size_t index,
                        const FilterConfig& config);

} // namespace sagecell
