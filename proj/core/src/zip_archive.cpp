#include "zip_archive.hpp"

#include <zlib.h>

#include "sagecell/errors.hpp"

namespace sagecell::detail {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEocdSig = 0x06054b50;
constexpr std::size_t kEocdSize = 22;
constexpr std::size_t kLocalHeaderSize = 30;
constexpr std::uint16_t kDataDescriptorFlag = 0x0008;

class Reader {
public:
    Reader(std::string_view bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

    std::uint16_t u16() {
        require(2);
        const auto a = static_cast<unsigned char>(bytes_[pos_]);
        const auto b = static_cast<unsigned char>(bytes_[pos_ + 1]);
        pos_ += 2;
        return static_cast<std::uint16_t>(a | (b << 8));
    }

    std::uint32_t u32() {
        const std::uint32_t lo = u16();
        const std::uint32_t hi = u16();
        return lo | (hi << 16);
    }

    std::string_view take(std::size_t n) {
        require(n);
        std::string_view out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }

private:
    void require(std::size_t n) const {
        if (pos_ + n > bytes_.size()) {
            throw decode_error("truncated zip archive");
        }
    }

    std::string_view bytes_;
    std::size_t pos_;
};

void put_u16(std::string& out, std::uint16_t value) {
    out.push_back(static_cast<char>(value & 0xFF));
    out.push_back(static_cast<char>((value >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t value) {
    put_u16(out, static_cast<std::uint16_t>(value & 0xFFFF));
    put_u16(out, static_cast<std::uint16_t>((value >> 16) & 0xFFFF));
}

std::uint16_t narrow_u16(std::size_t value, const char* what) {
    if (value > 0xFFFF) {
        throw structure_error(std::string(what) + " exceeds plain zip limits");
    }
    return static_cast<std::uint16_t>(value);
}

std::uint32_t narrow_u32(std::size_t value, const char* what) {
    if (value > 0xFFFFFFFFull) {
        throw structure_error(std::string(what) + " exceeds plain zip limits");
    }
    return static_cast<std::uint32_t>(value);
}

// Locates the end-of-central-directory record: last kEocdSize bytes when
// there is no archive comment, scanned backwards otherwise.
std::size_t find_eocd(std::string_view bytes) {
    if (bytes.size() < kEocdSize) {
        throw decode_error("zip archive too small");
    }
    const std::size_t upper = bytes.size() - kEocdSize;
    const std::size_t lower = upper > 0xFFFF ? upper - 0xFFFF : 0;
    for (std::size_t pos = upper;; --pos) {
        Reader r(bytes, pos);
        if (r.u32() == kEocdSig) {
            Reader c(bytes, pos + 20);
            const std::size_t comment_len = c.u16();
            if (pos + kEocdSize + comment_len == bytes.size()) {
                return pos;
            }
        }
        if (pos == lower) {
            break;
        }
    }
    throw decode_error("zip end-of-central-directory record not found");
}

} // namespace

std::vector<ZipEntry> read_zip(std::string_view bytes) {
    const std::size_t eocd = find_eocd(bytes);
    Reader r(bytes, eocd + 4);
    const std::uint16_t disk = r.u16();
    const std::uint16_t cd_disk = r.u16();
    const std::uint16_t entries_on_disk = r.u16();
    const std::uint16_t entries_total = r.u16();
    r.u32(); // central directory size; offsets below are validated directly
    const std::uint32_t cd_offset = r.u32();
    if (disk != 0 || cd_disk != 0 || entries_on_disk != entries_total) {
        throw decode_error("multi-disk zip archives are not supported");
    }
    if (entries_total == 0xFFFF || cd_offset == 0xFFFFFFFF) {
        throw decode_error("zip64 archives are not supported");
    }

    std::vector<ZipEntry> entries;
    entries.reserve(entries_total);
    Reader cd(bytes, cd_offset);
    for (std::uint16_t i = 0; i < entries_total; ++i) {
        if (cd.u32() != kCentralSig) {
            throw decode_error("malformed zip central directory");
        }
        ZipEntry entry;
        entry.version_made = cd.u16();
        entry.version_needed = cd.u16();
        entry.flags = cd.u16();
        entry.method = cd.u16();
        entry.mod_time = cd.u16();
        entry.mod_date = cd.u16();
        entry.crc = cd.u32();
        const std::uint32_t compressed_size = cd.u32();
        entry.uncompressed_size = cd.u32();
        const std::uint16_t name_len = cd.u16();
        const std::uint16_t extra_len = cd.u16();
        const std::uint16_t comment_len = cd.u16();
        cd.u16(); // disk number start
        entry.internal_attrs = cd.u16();
        entry.external_attrs = cd.u32();
        const std::uint32_t local_offset = cd.u32();
        if (compressed_size == 0xFFFFFFFF || entry.uncompressed_size == 0xFFFFFFFF ||
            local_offset == 0xFFFFFFFF) {
            throw decode_error("zip64 archives are not supported");
        }
        entry.name.assign(cd.take(name_len));
        entry.extra_central.assign(cd.take(extra_len));
        entry.comment.assign(cd.take(comment_len));

        Reader local(bytes, local_offset);
        if (local.u32() != kLocalSig) {
            throw decode_error("zip entry '" + entry.name +
                               "' has a malformed local header");
        }
        Reader fields(bytes, local_offset + 26);
        const std::uint16_t local_name_len = fields.u16();
        const std::uint16_t local_extra_len = fields.u16();
        Reader payload(bytes,
                       local_offset + kLocalHeaderSize + local_name_len);
        entry.extra_local.assign(payload.take(local_extra_len));
        entry.compressed.assign(payload.take(compressed_size));
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::string write_zip(const std::vector<ZipEntry>& entries) {
    const std::uint16_t count = narrow_u16(entries.size(), "entry count");

    std::string out;
    std::vector<std::uint32_t> offsets;
    offsets.reserve(entries.size());
    for (const ZipEntry& entry : entries) {
        offsets.push_back(narrow_u32(out.size(), "archive size"));
        const auto flags =
            static_cast<std::uint16_t>(entry.flags & ~kDataDescriptorFlag);
        put_u32(out, kLocalSig);
        put_u16(out, entry.version_needed);
        put_u16(out, flags);
        put_u16(out, entry.method);
        put_u16(out, entry.mod_time);
        put_u16(out, entry.mod_date);
        put_u32(out, entry.crc);
        put_u32(out, narrow_u32(entry.compressed.size(), "entry size"));
        put_u32(out, entry.uncompressed_size);
        put_u16(out, narrow_u16(entry.name.size(), "entry name length"));
        put_u16(out, narrow_u16(entry.extra_local.size(), "extra field length"));
        out += entry.name;
        out += entry.extra_local;
        out += entry.compressed;
    }

    const std::uint32_t cd_offset = narrow_u32(out.size(), "archive size");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const ZipEntry& entry = entries[i];
        const auto flags =
            static_cast<std::uint16_t>(entry.flags & ~kDataDescriptorFlag);
        put_u32(out, kCentralSig);
        put_u16(out, entry.version_made);
        put_u16(out, entry.version_needed);
        put_u16(out, flags);
        put_u16(out, entry.method);
        put_u16(out, entry.mod_time);
        put_u16(out, entry.mod_date);
        put_u32(out, entry.crc);
        put_u32(out, narrow_u32(entry.compressed.size(), "entry size"));
        put_u32(out, entry.uncompressed_size);
        put_u16(out, narrow_u16(entry.name.size(), "entry name length"));
        put_u16(out, narrow_u16(entry.extra_central.size(), "extra field length"));
        put_u16(out, narrow_u16(entry.comment.size(), "comment length"));
        put_u16(out, 0); // disk number start
        put_u16(out, entry.internal_attrs);
        put_u32(out, entry.external_attrs);
        put_u32(out, offsets[i]);
        out += entry.name;
        out += entry.extra_central;
        out += entry.comment;
    }
    const std::uint32_t cd_size =
        narrow_u32(out.size() - cd_offset, "central directory size");

    put_u32(out, kEocdSig);
    put_u16(out, 0);
    put_u16(out, 0);
    put_u16(out, count);
    put_u16(out, count);
    put_u32(out, cd_size);
    put_u32(out, cd_offset);
    put_u16(out, 0);
    return out;
}

ZipEntry make_stored_entry(std::string name, std::string_view content) {
    ZipEntry entry;
    entry.name = std::move(name);
    entry.method = 0;
    entry.crc = static_cast<std::uint32_t>(
        crc32_z(0L, reinterpret_cast<const Bytef*>(content.data()),
                content.size()));
    entry.uncompressed_size = narrow_u32(content.size(), "entry size");
    entry.compressed.assign(content);
    return entry;
}

std::string entry_content(const ZipEntry& entry) {
    if (entry.method == 0) {
        return entry.compressed;
    }
    if (entry.method != 8) {
        throw decode_error("zip entry '" + entry.name +
                           "' uses an unsupported compression method");
    }

    std::string out;
    out.resize(entry.uncompressed_size);
    z_stream stream{};
    if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) {
        throw decode_error("zlib initialization failed");
    }
    stream.next_in =
        reinterpret_cast<Bytef*>(const_cast<char*>(entry.compressed.data()));
    stream.avail_in = static_cast<uInt>(entry.compressed.size());
    stream.next_out = reinterpret_cast<Bytef*>(out.data());
    stream.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&stream, Z_FINISH);
    inflateEnd(&stream);
    if (rc != Z_STREAM_END || stream.total_out != entry.uncompressed_size) {
        throw decode_error("zip entry '" + entry.name +
                           "' failed to decompress");
    }
    return out;
}

} // namespace sagecell::detail
