#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sagecell/model.hpp"

namespace sagecell {

// One plugin file: a relative path with '/' separators plus its bytes.
struct FileEntry {
    std::string path;
    std::string content;
};

// Ordered collection of plugin files. Paths must stay inside the plugin
// root: relative, '/' separated, no empty or '..' segments, no duplicates.
class FileSet {
public:
    // Appends a file, raising contract_error on an invalid or duplicate path.
    void add(std::string path, std::string content);

    const std::vector<FileEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    // Returns the content of the file at path, or nullptr when absent.
    const std::string* find(std::string_view path) const noexcept;
    bool contains(std::string_view path) const noexcept {
        return find(path) != nullptr;
    }

private:
    std::vector<FileEntry> entries_;
};

// Outcome of one plugin check. detail is empty when the check passed.
struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;

    bool all_passed() const noexcept;
};

// Renders the three manifest files the host platform requires:
// version.php, settings.php and lang/en/filter_sagecell.php, each with
// '\n' line ends. Raises config_error when the manifest fields violate
// their invariants.
FileSet gen_manifest(const PluginManifest& manifest);

// Renames the single top-level directory of a plugin zip to target_root,
// keeping entry order, contents, compression and timestamps unchanged.
// Raises structure_error when the archive has zero or multiple top-level
// directories or loose top-level files, decode_error on a corrupt
// archive and config_error on an invalid target_root.
std::string repack_archive(std::string_view archive,
                           std::string_view target_root = "sagecell");

// Checks a file set against the plugin layout the host platform expects:
// version.php with a valid version number and component name, the English
// language file with a filtername string, and filter.php. Findings go in
// the report; this never throws on missing or malformed files.
ValidationReport validate_plugin(const FileSet& files);

// Writes the file set into a zip whose entries all live under root/.
std::string pack_fileset(const FileSet& files, std::string_view root);

// Reads every file entry of a zip into a FileSet. When all files share
// one top-level directory that prefix is stripped, so rooted and flat
// plugin archives validate the same way.
FileSet unpack_archive(std::string_view archive);

} // namespace sagecell
