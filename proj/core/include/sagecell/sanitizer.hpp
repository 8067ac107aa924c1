#pragma once

#include <string>
#include <string_view>

namespace sagecell {

// Neutralizes the only sequences that can break out of the raw-text
// script element the emitter wraps code in:
//
//   - control bytes below 0x20 other than tab and newline are dropped
//     (carriage returns included);
//   - every case-insensitive "</script" becomes "< /script";
//   - every "<!--" becomes "<! --".
//
// Control bytes go first: "</scr\rript" must not reassemble into a
// closing tag after the CR is removed. The one-space perturbation keeps
// the author's code visible instead of silently deleting it; the result
// may be broken Sage but is safe to embed. Total and idempotent.
std::string sanitize(std::string_view code);

// True when text contains "</script" in any letter case. The emitter uses
// this to enforce its precondition.
bool contains_script_close(std::string_view text) noexcept;

} // namespace sagecell
