#pragma once

// Minimal zip container support: enough to list entries, pull their
// payloads, and write an archive back out. Compressed data is carried
// opaquely, so rewriting entry names never recompresses anything.
// No zip64, no multi-disk archives, no encryption.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sagecell::detail {

struct ZipEntry {
    std::string name;
    std::uint16_t version_made = 20;
    std::uint16_t version_needed = 20;
    std::uint16_t flags = 0;
    std::uint16_t method = 0; // 0 = stored, 8 = deflate
    std::uint16_t mod_time = 0;
    std::uint16_t mod_date = 0x0021; // 1980-01-01 when synthesized
    std::uint32_t crc = 0;
    std::uint32_t uncompressed_size = 0;
    std::uint16_t internal_attrs = 0;
    std::uint32_t external_attrs = 0;
    std::string extra_local;
    std::string extra_central;
    std::string comment;
    std::string compressed; // raw payload bytes, still compressed

    bool is_directory() const {
        return !name.empty() && name.back() == '/';
    }
};

// Parses an archive into entries preserving central-directory order.
// Throws decode_error on anything that is not a well-formed small zip.
std::vector<ZipEntry> read_zip(std::string_view bytes);

// Serializes entries back into a single archive. Data-descriptor flags
// are cleared since exact sizes are written into each local header.
std::string write_zip(const std::vector<ZipEntry>& entries);

// Builds a stored (uncompressed) entry with its CRC filled in.
ZipEntry make_stored_entry(std::string name, std::string_view content);

// Inflates one entry's payload (stored or deflate).
std::string entry_content(const ZipEntry& entry);

} // namespace sagecell::detail
