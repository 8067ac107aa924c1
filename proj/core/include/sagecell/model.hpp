#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sagecell {

// Input text under filtering. Content is treated as raw bytes: stray
// non-UTF-8 sequences pass through untouched and round-trip exactly.
struct Document {
    std::string content;
};

// Filter settings. All types in this header are immutable by convention
// once built; sharing them across threads is safe.
struct FilterConfig {
    std::string tag_name = "sage";
    std::string server_url = "https://sagecell.sagemath.org";
    std::string cell_class = "compute";
    std::vector<std::string> hide_items = {"editor", "evalButton"};
    bool autoeval = true;
    std::string id_prefix = "sagecell";

    std::string open_token() const { return "[" + tag_name + "]"; }
    std::string close_token() const { return "[/" + tag_name + "]"; }
};

// Partial FilterConfig for make_config. Unset fields keep their defaults.
struct ConfigOverrides {
    std::optional<std::string> tag_name;
    std::optional<std::string> server_url;
    std::optional<std::string> cell_class;
    std::optional<std::vector<std::string>> hide_items;
    std::optional<bool> autoeval;
    std::optional<std::string> id_prefix;
};

// Builds a validated FilterConfig from defaults plus overrides.
//
// tag_name must be a non-empty lowercase ASCII token with no '[', ']',
// '/' or whitespace; server_url loses any trailing slashes. Violations
// raise config_error naming the offending field.
FilterConfig make_config(const ConfigOverrides& overrides = {});

// One extracted pseudotag block. Spans are byte offsets into the source
// document and cover the full match including both tags; raw is the text
// strictly between them. normalized/sanitized stay empty until the
// corresponding stages run.
struct CodeBlock {
    std::size_t span_start = 0;
    std::size_t span_end = 0;
    std::string raw;
    std::optional<std::string> normalized;
    std::optional<std::string> sanitized;
};

// One emitted cell: its DOM id and the sanitized code it carries.
struct CellRecord {
    std::string id;
    std::string code;
};

// Result of filtering one document. When no cell was emitted, html is
// byte-identical to the input.
struct RenderedOutput {
    std::string html;
    std::vector<CellRecord> cells;

    std::size_t cell_count() const noexcept { return cells.size(); }
};

// Decoded reply of one compute-service call. stdout_text is empty when
// the reply carries no stdout field; raw_response keeps the reply bytes
// verbatim for diagnostics.
struct ExecutionResult {
    bool success = false;
    std::string stdout_text;
    std::string raw_response;
};

enum class Maturity { alpha, beta, rc, stable };

// Token the host platform expects in version.php, e.g. MATURITY_STABLE.
std::string_view maturity_token(Maturity maturity) noexcept;

// Plugin identification data rendered into the packaged manifest files.
// version is a 10-digit YYYYMMDDSS integer (date plus 2-digit sequence);
// requires_version is the minimum host platform version and stays
// caller-supplied.
struct PluginManifest {
    std::string component = "filter_sagecell";
    std::int64_t version = 0;
    Maturity maturity = Maturity::stable;
    std::int64_t requires_version = 0;
    std::string display_name = "SageCell";
};

// True when the rendered decimal form is exactly 10 digits whose first
// 8 digits parse as a valid calendar date.
bool is_valid_version_number(std::int64_t version) noexcept;

// Builds a manifest and validates the version format, raising
// config_error on violations.
PluginManifest make_manifest(std::int64_t version, std::int64_t requires_version,
                             Maturity maturity = Maturity::stable);

} // namespace sagecell
