#include "sagecell/emitter.hpp"

#include "sagecell/errors.hpp"
#include "sagecell/sanitizer.hpp"

namespace sagecell {

std::string cell_id(std::size_t index, const FilterConfig& config) {
    return config.id_prefix + "-" + std::to_string(index);
}

std::string render_header(const FilterConfig& config) {
    std::string out;
    out.reserve(config.server_url.size() * 2 + 128);
    out += "<script src=\"";
    out += config.server_url;
    out += "/static/jquery.min.js\"></script>\n";
    out += "<script src=\"";
    out += config.server_url;
    out += "/static/embedded_sagecell.js\"></script>\n";
    return out;
}

std::string render_cell(std::string_view sanitized_code, std::size_t index,
                        const FilterConfig& config) {
    if (index < 1) {
        throw contract_error("render_cell: index must be >= 1");
    }
    if (contains_script_close(sanitized_code)) {
        throw contract_error(
            "render_cell: code contains \"</script\"; sanitize it first");
    }
    const std::string id = cell_id(index, config);

    std::string out;
    out.reserve(sanitized_code.size() + 256);
    out += "<div class=\"";
    out += config.cell_class;
    out += "\" id=\"";
    out += id;
    out += "\"><script type=\"text/x-sage\">";
    out += sanitized_code;
    out += "</script></div>\n";

    out += "<script>sagecell.makeSagecell({\"inputLocation\": \"#";
    out += id;
    out += "\", \"hide\": [";
    for (std::size_t i = 0; i < config.hide_items.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += '"';
        out += config.hide_items[i];
        out += '"';
    }
    out += "], \"autoeval\": ";
    out += config.autoeval ? "true" : "false";
    out += "});</script>\n";
    return out;
}

} // namespace sagecell
