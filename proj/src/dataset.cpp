#include "qfl/dataset.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>

#include "qfl/errors.hpp"
#include "qfl/rng.hpp"

namespace qfl {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

// Big-endian u32 reader over a byte buffer, tracking its offset for errors.
struct Cursor {
    const std::vector<std::uint8_t>& bytes;
    const std::string name;
    std::size_t pos = 0;

    std::uint32_t read_u32() {
        if (pos + 4 > bytes.size())
            throw IngestError(name + " truncated in header",
                              static_cast<long long>(pos));
        const std::uint32_t v = (std::uint32_t{bytes[pos]} << 24) |
                                (std::uint32_t{bytes[pos + 1]} << 16) |
                                (std::uint32_t{bytes[pos + 2]} << 8) |
                                std::uint32_t{bytes[pos + 3]};
        pos += 4;
        return v;
    }

    void require_payload(std::size_t n, const char* what) {
        if (pos + n > bytes.size())
            throw IngestError(name + " truncated: expected " + std::to_string(n) + " " +
                              what + " bytes, file ends early",
                              static_cast<long long>(bytes.size()));
    }
};

} // namespace

RawDataset load_idx(const std::filesystem::path& images_path,
                    const std::filesystem::path& labels_path) {
    const std::vector<std::uint8_t> image_bytes = read_file(images_path);
    const std::vector<std::uint8_t> label_bytes = read_file(labels_path);

    Cursor img{image_bytes, images_path.filename().string()};
    const std::uint32_t img_magic = img.read_u32();
    if (img_magic != kImagesMagic)
        throw IngestError(img.name + ": bad images magic 0x" + [&] {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%08x", img_magic);
            return std::string(buf);
        }(), 0);
    const std::uint32_t n_images = img.read_u32();
    const std::uint32_t rows = img.read_u32();
    const std::uint32_t cols = img.read_u32();
    if (rows != 28 || cols != 28)
        throw IngestError(img.name + ": expected 28x28 images, got " +
                          std::to_string(rows) + "x" + std::to_string(cols), 8);
    img.require_payload(std::size_t{n_images} * rows * cols, "pixel");

    Cursor lab{label_bytes, labels_path.filename().string()};
    const std::uint32_t lab_magic = lab.read_u32();
    if (lab_magic != kLabelsMagic)
        throw IngestError(lab.name + ": bad labels magic", 0);
    const std::uint32_t n_labels = lab.read_u32();
    if (n_labels != n_images)
        throw IngestError(lab.name + ": " + std::to_string(n_labels) +
                          " labels for " + std::to_string(n_images) + " images", 4);
    lab.require_payload(n_labels, "label");

    RawDataset raw;
    raw.rows = static_cast<int>(rows);
    raw.cols = static_cast<int>(cols);
    raw.pixels.assign(image_bytes.begin() + static_cast<std::ptrdiff_t>(img.pos),
                      image_bytes.begin() +
                          static_cast<std::ptrdiff_t>(img.pos + std::size_t{n_images} * rows * cols));
    raw.labels.assign(label_bytes.begin() + static_cast<std::ptrdiff_t>(lab.pos),
                      label_bytes.begin() + static_cast<std::ptrdiff_t>(lab.pos + n_labels));
    return raw;
}

std::vector<Example> preprocess(const RawDataset& raw, const std::vector<int>& classes) {
    if (classes.empty()) throw ContractError("preprocess requires a non-empty class set");
    std::vector<int> sorted = classes;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    // class value -> new dense label
    std::array<int, 256> relabel;
    relabel.fill(-1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] > 255) throw ContractError("class value out of range");
        relabel[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
    }

    constexpr int kBlock = 7; // 28 -> 4 per axis
    const int grid = raw.rows / kBlock;
    std::vector<Example> out;
    for (std::size_t n = 0; n < raw.count(); ++n) {
        const int label = relabel[raw.labels[n]];
        if (label < 0) continue;
        Example ex;
        ex.label = label;
        ex.features.resize(static_cast<std::size_t>(grid) * grid);
        const std::uint8_t* image = raw.pixels.data() + n * static_cast<std::size_t>(raw.rows) * raw.cols;
        for (int br = 0; br < grid; ++br) {
            for (int bc = 0; bc < grid; ++bc) {
                double sum = 0.0;
                for (int r = 0; r < kBlock; ++r)
                    for (int c = 0; c < kBlock; ++c)
                        sum += image[(br * kBlock + r) * raw.cols + (bc * kBlock + c)];
                const double mean = sum / (kBlock * kBlock);
                ex.features[static_cast<std::size_t>(br) * grid + bc] =
                    mean / 255.0 * std::numbers::pi;
            }
        }
        out.push_back(std::move(ex));
    }
    return out;
}

std::vector<ClientDataset> partition(const std::vector<Example>& examples,
                                     const PartitionSpec& spec) {
    if (spec.n_clients < 1) throw ConfigError("n_clients must be >= 1");
    if (examples.size() < static_cast<std::size_t>(spec.n_clients))
        throw ConfigError("fewer examples than clients");

    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), 0);

    std::vector<ClientDataset> clients(static_cast<std::size_t>(spec.n_clients));
    for (int i = 0; i < spec.n_clients; ++i) clients[static_cast<std::size_t>(i)].client_id = i;

    Rng rng(derive_seed(spec.seed, {static_cast<std::uint64_t>(spec.scheme)}));

    if (spec.scheme == PartitionScheme::IID) {
        rng.shuffle(order);
        // contiguous near-equal cuts: the first (n mod k) clients get one extra
        const std::size_t n = order.size();
        const std::size_t k = static_cast<std::size_t>(spec.n_clients);
        std::size_t pos = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t take = n / k + (i < n % k ? 1 : 0);
            for (std::size_t j = 0; j < take; ++j)
                clients[i].examples.push_back(examples[order[pos++]]);
        }
        return clients;
    }

    // LabelShards: stable sort by label, cut into equal-ish contiguous shards,
    // deal shards_per_client to each client in a seeded shard order.
    if (spec.shards_per_client < 1) throw ConfigError("shards_per_client must be >= 1");
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return examples[a].label < examples[b].label;
    });
    const std::size_t n_shards =
        static_cast<std::size_t>(spec.n_clients) * static_cast<std::size_t>(spec.shards_per_client);
    if (examples.size() < n_shards) throw ConfigError("fewer examples than shards");

    std::vector<std::size_t> shard_ids(n_shards);
    std::iota(shard_ids.begin(), shard_ids.end(), 0);
    rng.shuffle(shard_ids);

    const std::size_t n = order.size();
    std::size_t next = 0;
    for (ClientDataset& client : clients) {
        for (int d = 0; d < spec.shards_per_client; ++d) {
            const std::size_t s = shard_ids[next++];
            const std::size_t begin = s * n / n_shards;
            const std::size_t end = (s + 1) * n / n_shards;
            for (std::size_t j = begin; j < end; ++j)
                client.examples.push_back(examples[order[j]]);
        }
    }
    return clients;
}

} // namespace qfl
