#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fairkit {

/// Identifier-aligned row-major matrix of float32 feature vectors.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    /// Validates: ids.size() * dim == values.size(), dim >= 1, ids unique,
    /// all values finite. Throws DataError otherwise.
    EmbeddingTable(std::vector<std::string> ids, std::size_t dim, std::vector<float> values);

    std::size_t size() const noexcept { return ids_.size(); }
    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return ids_.empty(); }

    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<float>& values() const noexcept { return values_; }

    std::span<const float> row(std::size_t i) const noexcept {
        return {values_.data() + i * dim_, dim_};
    }

    bool operator==(const EmbeddingTable&) const = default;

private:
    std::vector<std::string> ids_;
    std::size_t dim_ = 1;
    std::vector<float> values_;
};

inline constexpr char kFembMagic[4] = {'F', 'E', 'M', 'B'};
inline constexpr std::uint32_t kFembVersion = 1;

/// Reads a FEMB binary file plus its sidecar id list (one id per line).
EmbeddingTable load_embeddings(const std::filesystem::path& bin_path,
                               const std::filesystem::path& ids_path);

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& bin_path,
                     const std::filesystem::path& ids_path);

/// In-memory FEMB encoding; the on-disk format is exactly these bytes.
std::vector<std::uint8_t> encode_femb(const EmbeddingTable& table);
EmbeddingTable decode_femb(std::span<const std::uint8_t> bytes, std::vector<std::string> ids);

}  // namespace fairkit
