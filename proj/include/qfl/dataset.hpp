#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qfl/types.hpp"

namespace qfl {

/// Raw IDX image/label pair as stored on disk: 28x28 u8 pixels per example.
struct RawDataset {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels; // count * rows * cols
    std::vector<std::uint8_t> labels; // count

    std::size_t count() const { return labels.size(); }
};

/// Parses the big-endian IDX pair (images magic 0x00000803, labels magic
/// 0x00000801). Throws IngestError with the offending byte offset on bad
/// magic, truncation, or an image/label count mismatch.
RawDataset load_idx(const std::filesystem::path& images_path,
                    const std::filesystem::path& labels_path);

/// One client's local shard. Examples never leave this container; the
/// aggregator only ever sees parameter vectors.
struct ClientDataset {
    int client_id = 0;
    std::vector<Example> examples;
};

/// Keeps only the listed classes (relabeled to 0..k-1 in sorted order),
/// average-pools each 28x28 image over 7x7 blocks to 16 values, and maps
/// intensity to rotation angles: pixel/255 * pi, so features lie in [0, pi].
std::vector<Example> preprocess(const RawDataset& raw, const std::vector<int>& classes);

enum class PartitionScheme { IID, LabelShards };

struct PartitionSpec {
    PartitionScheme scheme = PartitionScheme::IID;
    int shards_per_client = 2; // LabelShards only
    int n_clients = 5;
    std::uint64_t seed = 0;
};

/// Splits examples into disjoint client shards covering the input.
/// IID: seeded shuffle, then contiguous splits whose sizes differ by <= 1.
/// LabelShards: stable sort by label, cut into n_clients*shards_per_client
/// contiguous shards, deal shards_per_client to each client by seeded draw.
std::vector<ClientDataset> partition(const std::vector<Example>& examples,
                                     const PartitionSpec& spec);

} // namespace qfl
