#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "mbinv/blur_spec.hpp"
#include "mbinv/shapes.hpp"

namespace mbinv {

struct ManifestEntry {
  std::string id;
  std::string class_label;
  std::filesystem::path path;  // relative paths resolve against the manifest directory
  BlurSpec blur;
  std::uint64_t seed = 0;

  bool is_gallery() const noexcept { return blur.kind == BlurKind::None; }
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path root;

  // Throws Error when ids repeat or a query class has no gallery exemplar.
  void validate() const;
  std::filesystem::path resolve(const ManifestEntry& entry) const;
  std::size_t gallery_size() const noexcept;
  std::size_t query_count() const noexcept;
  // Copy keeping every gallery entry and only the queries blurred by `kind`.
  DatasetManifest with_queries_of(BlurKind kind) const;
};

nlohmann::json to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& root);
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

// Three linear settings (displacement <= 8 px) and three rotational settings
// (omega T <= 0.3 rad) about the image center.
std::vector<BlurSpec> default_blur_grid();
std::vector<BlurSpec> blur_grid_from_json(const nlohmann::json& j);

struct DatasetOptions {
  TimeSampling sampling{};
  // Optional zero-mean Gaussian noise added after blurring, clipped to [0,1].
  double noise_sigma = 0.0;
  unsigned maxval = 65535;
};

struct GeneratedDataset {
  DatasetManifest manifest;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Writes `count` seeded blob images named base_XX.pgm into out_dir.
std::vector<std::filesystem::path> write_synthetic_corpus(const std::filesystem::path& out_dir, int count,
                                                          const BlobSpec& spec, std::uint64_t seed);

// Gallery = every PGM in base_dir (sorted by name, copied to out_dir/gallery);
// queries = every (base image x grid cell) blurred variant in out_dir/queries.
// The manifest is also written to out_dir/manifest.json. Margin violations skip
// the offending query and are counted.
GeneratedDataset generate_dataset(const std::filesystem::path& base_dir, const std::vector<BlurSpec>& blur_grid,
                                  const std::filesystem::path& out_dir, std::uint64_t seed,
                                  const DatasetOptions& options = {});

}  // namespace mbinv
