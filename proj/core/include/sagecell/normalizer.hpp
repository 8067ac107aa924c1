#pragma once

#include <string>
#include <string_view>

namespace sagecell {

// Undoes the structural damage a WYSIWYG editor inflicts on code typed
// into it. Applied in order:
//
//   1. opening <p ...> / <div ...> tags, closing </p> / </div>, and <br>
//      in any form (any case, any attributes) each become a single '\n';
//   2. UTF-8 non-breaking spaces (0xC2 0xA0) and "&nbsp;" become ' ';
//   3. the entities &lt; &gt; &quot; &#39; decode, then &amp; decodes
//      last so it cannot cascade into a double decode;
//   4. the whole result is trimmed of leading/trailing whitespace.
//
// Interior blank lines and indentation survive untouched; the target
// language is indentation-sensitive. Tags outside the closed set above
// pass through as-is.
std::string normalize(std::string_view raw);

} // namespace sagecell
