#include "fairkit/embeddings.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <unordered_set>

#include "fairkit/error.hpp"
#include "fairkit/io.hpp"

namespace fairkit {

EmbeddingTable::EmbeddingTable(std::vector<std::string> ids, std::size_t dim, std::vector<float> values)
    : ids_(std::move(ids)), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) {
        throw DataError("embedding dim must be at least 1");
    }
    if (ids_.size() * dim_ != values_.size()) {
        throw DataError("embedding id count does not match row count");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_) {
        if (!seen.insert(id).second) {
            throw DataError("duplicate embedding id \"" + id + "\"");
        }
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("non-finite embedding value in row " + std::to_string(i / dim_) + " (id \"" +
                            ids_[i / dim_] + "\")");
        }
    }
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
    }
    return v;
}

}  // namespace

std::vector<std::uint8_t> encode_femb(const EmbeddingTable& table) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + table.values().size() * 4);
    out.insert(out.end(), std::begin(kFembMagic), std::end(kFembMagic));
    put_u32(out, kFembVersion);
    put_u32(out, static_cast<std::uint32_t>(table.size()));
    put_u32(out, static_cast<std::uint32_t>(table.dim()));
    for (float f : table.values()) {
        std::uint32_t bits = 0;
        std::memcpy(&bits, &f, sizeof bits);
        put_u32(out, bits);
    }
    return out;
}

EmbeddingTable decode_femb(std::span<const std::uint8_t> bytes, std::vector<std::string> ids) {
    if (bytes.size() < 16) {
        throw DataError("FEMB header truncated");
    }
    if (std::memcmp(bytes.data(), kFembMagic, 4) != 0) {
        throw DataError("bad magic: not a FEMB file");
    }
    const std::uint32_t version = get_u32(bytes, 4);
    if (version != kFembVersion) {
        throw DataError("unsupported FEMB version " + std::to_string(version));
    }
    const std::uint64_t count = get_u32(bytes, 8);
    const std::uint64_t dim = get_u32(bytes, 12);
    if (dim == 0) {
        throw DataError("FEMB dim must be at least 1");
    }
    if (bytes.size() - 16 != count * dim * 4) {
        throw DataError("payload length mismatch: header says " + std::to_string(count) + "x" +
                        std::to_string(dim) + " floats, payload has " + std::to_string(bytes.size() - 16) +
                        " bytes");
    }
    if (ids.size() != count) {
        throw DataError("id count mismatch: " + std::to_string(ids.size()) + " ids for " +
                        std::to_string(count) + " rows");
    }
    std::vector<float> values(count * dim);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::uint32_t bits = get_u32(bytes, 16 + 4 * i);
        std::memcpy(&values[i], &bits, sizeof bits);
    }
    return EmbeddingTable(std::move(ids), dim, std::move(values));
}

EmbeddingTable load_embeddings(const std::filesystem::path& bin_path, const std::filesystem::path& ids_path) {
    const auto bytes = io::read_bytes(bin_path);
    std::istringstream in(io::read_text(ids_path));
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        auto id = io::trim(line);
        if (id.empty()) {
            continue;
        }
        ids.emplace_back(id);
    }
    return decode_femb(bytes, std::move(ids));
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& bin_path,
                     const std::filesystem::path& ids_path) {
    io::write_bytes(bin_path, encode_femb(table));
    std::string text;
    for (const auto& id : table.ids()) {
        text += id;
        text += '\n';
    }
    io::write_text(ids_path, text);
}

}  // namespace fairkit
