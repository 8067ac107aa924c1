#include "sagecell/packager.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>

#include "sagecell/errors.hpp"
#include "zip_archive.hpp"

namespace sagecell {

namespace {

bool is_control_byte(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x20 || u == 0x7F;
}

bool valid_relative_path(std::string_view path) {
    if (path.empty() || path.front() == '/' || path.back() == '/') {
        return false;
    }
    for (char c : path) {
        if (c == '\\' || is_control_byte(c)) {
            return false;
        }
    }
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t slash = path.find('/', start);
        const std::size_t end = slash == std::string_view::npos ? path.size() : slash;
        const std::string_view segment = path.substr(start, end - start);
        if (segment.empty() || segment == "..") {
            return false;
        }
        if (slash == std::string_view::npos) {
            break;
        }
        start = slash + 1;
    }
    return true;
}

// A root directory name is a single path segment.
void check_root_token(std::string_view root, const char* what) {
    if (root.empty() || root == "." || root == "..") {
        throw config_error(std::string(what) + " must be a directory name");
    }
    for (char c : root) {
        if (c == '/' || c == '\\' || is_control_byte(c)) {
            throw config_error(std::string(what) +
                               " may not contain separators or control bytes");
        }
    }
}

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const std::string& name : names) {
        if (!out.empty()) {
            out += ", ";
        }
        out += name;
    }
    return out;
}

std::size_t skip_blanks(std::string_view text, std::size_t pos) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
        ++pos;
    }
    return pos;
}

// Finds `key = <digits>;` in PHP source and returns the digit run.
std::optional<std::string> php_int_value(std::string_view content,
                                         std::string_view key) {
    const std::size_t at = content.find(key);
    if (at == std::string_view::npos) {
        return std::nullopt;
    }
    std::size_t pos = skip_blanks(content, at + key.size());
    if (pos >= content.size() || content[pos] != '=') {
        return std::nullopt;
    }
    pos = skip_blanks(content, pos + 1);
    const std::size_t start = pos;
    while (pos < content.size() &&
           std::isdigit(static_cast<unsigned char>(content[pos]))) {
        ++pos;
    }
    if (pos == start) {
        return std::nullopt;
    }
    const std::string digits(content.substr(start, pos - start));
    pos = skip_blanks(content, pos);
    if (pos >= content.size() || content[pos] != ';') {
        return std::nullopt;
    }
    return digits;
}

// Finds `key = '<value>';` in PHP source and returns the quoted value.
std::optional<std::string> php_string_value(std::string_view content,
                                            std::string_view key) {
    const std::size_t at = content.find(key);
    if (at == std::string_view::npos) {
        return std::nullopt;
    }
    std::size_t pos = skip_blanks(content, at + key.size());
    if (pos >= content.size() || content[pos] != '=') {
        return std::nullopt;
    }
    pos = skip_blanks(content, pos + 1);
    if (pos >= content.size() || content[pos] != '\'') {
        return std::nullopt;
    }
    const std::size_t start = pos + 1;
    const std::size_t close = content.find('\'', start);
    if (close == std::string_view::npos) {
        return std::nullopt;
    }
    return std::string(content.substr(start, close - start));
}

bool digits_form_valid_version(const std::string& digits) {
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        return false;
    }
    return is_valid_version_number(value);
}

} // namespace

void FileSet::add(std::string path, std::string content) {
    if (!valid_relative_path(path)) {
        throw contract_error("file path '" + path +
                             "' is not a valid relative path");
    }
    if (contains(path)) {
        throw contract_error("file path '" + path + "' was already added");
    }
    entries_.push_back({std::move(path), std::move(content)});
}

const std::string* FileSet::find(std::string_view path) const noexcept {
    for (const FileEntry& entry : entries_) {
        if (entry.path == path) {
            return &entry.content;
        }
    }
    return nullptr;
}

bool ValidationReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ValidationCheck& c) { return c.passed; });
}

FileSet gen_manifest(const PluginManifest& manifest) {
    if (!is_valid_version_number(manifest.version)) {
        throw config_error("plugin version " + std::to_string(manifest.version) +
                           " is not a ten-digit date-based version number");
    }
    if (manifest.requires_version <= 0) {
        throw config_error("minimum platform version must be positive");
    }
    if (manifest.component.empty()) {
        throw config_error("plugin component name must not be empty");
    }
    if (manifest.display_name.find('\'') != std::string::npos) {
        throw config_error("plugin display name may not contain single quotes");
    }

    std::string version_php;
    version_php += "<?php\n";
    version_php += "defined('MOODLE_INTERNAL') || die();\n";
    version_php += "$plugin->version = " + std::to_string(manifest.version) + ";\n";
    version_php +=
        "$plugin->requires = " + std::to_string(manifest.requires_version) + ";\n";
    version_php += "$plugin->component = '" + manifest.component + "';\n";
    version_php += "$plugin->maturity = " +
                   std::string(maturity_token(manifest.maturity)) + ";\n";

    std::string lang_php;
    lang_php += "<?php\n";
    lang_php += "$string['filtername'] = '" + manifest.display_name + "';\n";

    FileSet files;
    files.add("version.php", std::move(version_php));
    files.add("settings.php", "<?php\ndefined('MOODLE_INTERNAL') || die();\n");
    files.add("lang/en/filter_sagecell.php", std::move(lang_php));
    return files;
}

std::string repack_archive(std::string_view archive,
                           std::string_view target_root) {
    check_root_token(target_root, "target root");
    std::vector<detail::ZipEntry> entries = detail::read_zip(archive);

    std::vector<std::string> roots;
    std::vector<std::string> loose_files;
    for (const detail::ZipEntry& entry : entries) {
        const std::size_t slash = entry.name.find('/');
        if (slash == std::string::npos) {
            if (std::find(loose_files.begin(), loose_files.end(), entry.name) ==
                loose_files.end()) {
                loose_files.push_back(entry.name);
            }
            continue;
        }
        std::string root = entry.name.substr(0, slash);
        if (std::find(roots.begin(), roots.end(), root) == roots.end()) {
            roots.push_back(std::move(root));
        }
    }
    if (!loose_files.empty()) {
        throw structure_error(
            "archive is not rooted in a single directory; top-level files: " +
            join_names(loose_files));
    }
    if (roots.empty()) {
        throw structure_error("archive has no top-level directory");
    }
    if (roots.size() > 1) {
        throw structure_error("archive has multiple top-level directories: " +
                              join_names(roots));
    }

    const std::string& root = roots.front();
    for (detail::ZipEntry& entry : entries) {
        entry.name = std::string(target_root) + entry.name.substr(root.size());
    }
    return detail::write_zip(entries);
}

ValidationReport validate_plugin(const FileSet& files) {
    ValidationReport report;
    const auto add_check = [&report](std::string name, bool passed,
                                     std::string detail) {
        report.checks.push_back(
            {std::move(name), passed, passed ? std::string() : std::move(detail)});
    };

    const std::string* version_php = files.find("version.php");
    add_check("version.php present", version_php != nullptr,
              "version.php is missing");

    {
        bool ok = false;
        std::string detail = "version.php is missing";
        if (version_php != nullptr) {
            const auto digits = php_int_value(*version_php, "$plugin->version");
            if (!digits) {
                detail = "version.php declares no $plugin->version integer";
            } else if (!digits_form_valid_version(*digits)) {
                detail = "version " + *digits +
                         " is not a ten-digit date-based number";
            } else {
                ok = true;
            }
        }
        add_check("version number format", ok, std::move(detail));
    }

    {
        bool ok = false;
        std::string detail = "version.php is missing";
        if (version_php != nullptr) {
            const auto component =
                php_string_value(*version_php, "$plugin->component");
            if (!component) {
                detail = "version.php declares no $plugin->component string";
            } else if (*component != "filter_sagecell") {
                detail = "component is '" + *component +
                         "', expected 'filter_sagecell'";
            } else {
                ok = true;
            }
        }
        add_check("component name", ok, std::move(detail));
    }

    const std::string* lang = files.find("lang/en/filter_sagecell.php");
    add_check("language file present", lang != nullptr,
              "lang/en/filter_sagecell.php is missing");

    {
        bool ok = false;
        std::string detail = "lang/en/filter_sagecell.php is missing";
        if (lang != nullptr) {
            const auto name = php_string_value(*lang, "$string['filtername']");
            if (!name) {
                detail = "language file declares no filtername string";
            } else if (name->empty()) {
                detail = "filtername string is empty";
            } else {
                ok = true;
            }
        }
        add_check("filter name string", ok, std::move(detail));
    }

    add_check("filter.php present", files.contains("filter.php"),
              "filter.php is missing");
    return report;
}

std::string pack_fileset(const FileSet& files, std::string_view root) {
    check_root_token(root, "archive root");
    std::vector<detail::ZipEntry> entries;
    entries.reserve(files.size());
    for (const FileEntry& file : files.entries()) {
        entries.push_back(detail::make_stored_entry(
            std::string(root) + "/" + file.path, file.content));
    }
    return detail::write_zip(entries);
}

FileSet unpack_archive(std::string_view archive) {
    const std::vector<detail::ZipEntry> entries = detail::read_zip(archive);

    std::optional<std::string> shared_root;
    bool strippable = true;
    for (const detail::ZipEntry& entry : entries) {
        if (entry.is_directory()) {
            continue;
        }
        const std::size_t slash = entry.name.find('/');
        if (slash == std::string::npos) {
            strippable = false;
            break;
        }
        std::string root = entry.name.substr(0, slash + 1);
        if (!shared_root) {
            shared_root = std::move(root);
        } else if (*shared_root != root) {
            strippable = false;
            break;
        }
    }
    if (!shared_root) {
        strippable = false;
    }

    FileSet files;
    for (const detail::ZipEntry& entry : entries) {
        if (entry.is_directory()) {
            continue;
        }
        std::string path =
            strippable ? entry.name.substr(shared_root->size()) : entry.name;
        files.add(std::move(path), detail::entry_content(entry));
    }
    return files;
}

} // namespace sagecell
