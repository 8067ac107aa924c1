#include "sagecell/model.hpp"

#include <algorithm>
#include <cctype>

#include "sagecell/errors.hpp"

namespace sagecell {

namespace {

bool is_lower_token_char(char c) {
    const auto uc = static_cast<unsigned char>(c);
    return (uc >= 'a' && uc <= 'z') || (uc >= '0' && uc <= '9') || uc == '_' ||
           uc == '-' || uc == '.';
}

void check_tag_name(const std::string& tag) {
    if (tag.empty()) {
        throw config_error("tag_name: must not be empty");
    }
    for (char c : tag) {
        if (c == '[' || c == ']' || c == '/') {
            throw config_error("tag_name: must not contain '[', ']' or '/'");
        }
        if (std::isspace(static_cast<unsigned char>(c)) != 0) {
            throw config_error("tag_name: must not contain whitespace");
        }
        if (!is_lower_token_char(c)) {
            throw config_error("tag_name: must be a lowercase ASCII token");
        }
    }
}

void check_ascii_token(const std::string& value, const char* field) {
    if (value.empty()) {
        throw config_error(std::string(field) + ": must not be empty");
    }
    const bool ok = std::all_of(value.begin(), value.end(), [](char c) {
        const auto uc = static_cast<unsigned char>(c);
        return (uc >= 'a' && uc <= 'z') || (uc >= 'A' && uc <= 'Z') ||
               (uc >= '0' && uc <= '9') || uc == '_' || uc == '-';
    });
    if (!ok) {
        throw config_error(std::string(field) +
                           ": must be an ASCII token of [A-Za-z0-9_-]");
    }
}

void check_server_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || scheme_end == 0 ||
        scheme_end + 3 >= url.size()) {
        throw config_error("server_url: must be an absolute URL");
    }
}

std::string strip_trailing_slashes(std::string url) {
    while (!url.empty() && url.back() == '/') {
        url.pop_back();
    }
    return url;
}

} // namespace

FilterConfig make_config(const ConfigOverrides& overrides) {
    FilterConfig config;
    if (overrides.tag_name) {
        config.tag_name = *overrides.tag_name;
    }
    if (overrides.server_url) {
        config.server_url = *overrides.server_url;
    }
    if (overrides.cell_class) {
        config.cell_class = *overrides.cell_class;
    }
    if (overrides.hide_items) {
        config.hide_items = *overrides.hide_items;
    }
    if (overrides.autoeval) {
        config.autoeval = *overrides.autoeval;
    }
    if (overrides.id_prefix) {
        config.id_prefix = *overrides.id_prefix;
    }

    check_tag_name(config.tag_name);
    config.server_url = strip_trailing_slashes(std::move(config.server_url));
    check_server_url(config.server_url);
    check_ascii_token(config.cell_class, "cell_class");
    check_ascii_token(config.id_prefix, "id_prefix");
    for (const auto& item : config.hide_items) {
        // Hide names are opaque to us but land inside a double-quoted
        // list in the emitted init script.
        if (item.empty() || item.find('"') != std::string::npos ||
            item.find('\\') != std::string::npos ||
            std::any_of(item.begin(), item.end(), [](char c) {
                return static_cast<unsigned char>(c) < 0x20;
            })) {
            throw config_error("hide_items: entries must be non-empty and "
                               "free of quotes, backslashes and control bytes");
        }
    }
    return config;
}

std::string_view maturity_token(Maturity maturity) noexcept {
    switch (maturity) {
    case Maturity::alpha:
        return "MATURITY_ALPHA";
    case Maturity::beta:
        return "MATURITY_BETA";
    case Maturity::rc:
        return "MATURITY_RC";
    case Maturity::stable:
        break;
    }
    return "MATURITY_STABLE";
}

namespace {

bool is_valid_date(int year, int month, int day) {
    if (month < 1 || month > 12 || day < 1) {
        return false;
    }
    static constexpr int days_in_month[12] = {31, 28, 31, 30, 31, 30,
                                              31, 31, 30, 31, 30, 31};
    int limit = days_in_month[month - 1];
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) {
        limit = 29;
    }
    return day <= limit;
}

} // namespace

bool is_valid_version_number(std::int64_t version) noexcept {
    // Exactly 10 decimal digits, i.e. YYYYMMDD plus a 2-digit sequence.
    if (version < 1000000000LL || version > 9999999999LL) {
        return false;
    }
    const auto date = version / 100;
    const int year = static_cast<int>(date / 10000);
    const int month = static_cast<int>((date / 100) % 100);
    const int day = static_cast<int>(date % 100);
    return is_valid_date(year, month, day);
}

PluginManifest make_manifest(std::int64_t version, std::int64_t requires_version,
                             Maturity maturity) {
    if (!is_valid_version_number(version)) {
        throw config_error("version: must be a 10-digit YYYYMMDDSS value with "
                           "a valid calendar date");
    }
    if (requires_version <= 0) {
        throw config_error("requires_version: must be positive");
    }
    PluginManifest manifest;
    manifest.version = version;
    manifest.requires_version = requires_version;
    manifest.maturity = maturity;
    return manifest;
}

} // namespace sagecell
