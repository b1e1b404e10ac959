#include "mbinv/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

namespace mbinv {

namespace fs = std::filesystem;

void DatasetManifest::validate() const {
  std::set<std::string> ids;
  std::set<std::string> gallery_classes;
  for (const auto& e : entries) {
    if (!ids.insert(e.id).second) throw Error("duplicate manifest id: " + e.id);
    if (e.is_gallery()) gallery_classes.insert(e.class_label);
  }
  for (const auto& e : entries) {
    if (!e.is_gallery() && !gallery_classes.count(e.class_label))
      throw Error("class without gallery exemplar: " + e.class_label);
  }
}

fs::path DatasetManifest::resolve(const ManifestEntry& entry) const {
  return entry.path.is_absolute() ? entry.path : root / entry.path;
}

std::size_t DatasetManifest::gallery_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.is_gallery(); }));
}

std::size_t DatasetManifest::query_count() const noexcept { return entries.size() - gallery_size(); }

DatasetManifest DatasetManifest::with_queries_of(BlurKind kind) const {
  DatasetManifest out;
  out.root = root;
  for (const auto& e : entries) {
    if (e.is_gallery() || e.blur.kind == kind) out.entries.push_back(e);
  }
  return out;
}

nlohmann::json to_json(const DatasetManifest& manifest) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : manifest.entries) {
    entries.push_back({{"id", e.id},
                       {"class_label", e.class_label},
                       {"path", e.path.generic_string()},
                       {"blur_kind", std::string(to_string(e.blur.kind))},
                       {"params", blur_params_to_json(e.blur)},
                       {"seed", e.seed}});
  }
  return {{"entries", entries}};
}

DatasetManifest manifest_from_json(const nlohmann::json& j, const fs::path& root) {
  DatasetManifest m;
  m.root = root;
  for (const auto& e : j.at("entries")) {
    ManifestEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.class_label = e.at("class_label").get<std::string>();
    entry.path = e.at("path").get<std::string>();
    const BlurKind kind = parse_blur_kind(e.value("blur_kind", std::string("none")));
    entry.blur = blur_spec_from_json(kind, e.value("params", nlohmann::json::object()));
    entry.seed = e.value("seed", std::uint64_t{0});
    m.entries.push_back(std::move(entry));
  }
  m.validate();
  return m;
}

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw Error("invalid manifest JSON in " + path.string() + ": " + ex.what());
  }
  return manifest_from_json(j, path.parent_path());
}

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << to_json(manifest).dump(2) << '\n';
}

std::vector<BlurSpec> default_blur_grid() {
  return {
      BlurSpec::make_linear(8.0, 0.0, 1.0),
      BlurSpec::make_linear(0.0, 6.0, 1.0),
      BlurSpec::make_linear(2.4, -3.2, 2.0),  // 8 px diagonal
      BlurSpec::make_rotational(0.1, 1.0),
      BlurSpec::make_rotational(0.2, 1.0),
      BlurSpec::make_rotational(-0.3, 1.0),
  };
}

std::vector<BlurSpec> blur_grid_from_json(const nlohmann::json& j) {
  std::vector<BlurSpec> grid;
  for (const auto& cell : j) {
    grid.push_back(blur_spec_from_json(parse_blur_kind(cell.at("blur_kind").get<std::string>()),
                                       cell.value("params", nlohmann::json::object())));
  }
  return grid;
}

std::vector<fs::path> write_synthetic_corpus(const fs::path& out_dir, int count, const BlobSpec& spec,
                                             std::uint64_t seed) {
  fs::create_directories(out_dir);
  std::vector<fs::path> paths;
  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "base_%02d.pgm", i);
    const fs::path path = out_dir / name;
    save_pgm(generate_blob_image(spec, seed * 7919 + static_cast<std::uint64_t>(i)), path);
    paths.push_back(path);
  }
  return paths;
}

GeneratedDataset generate_dataset(const fs::path& base_dir, const std::vector<BlurSpec>& blur_grid,
                                  const fs::path& out_dir, std::uint64_t seed, const DatasetOptions& options) {
  std::vector<fs::path> bases;
  for (const auto& item : fs::directory_iterator(base_dir)) {
    if (item.is_regular_file() && item.path().extension() == ".pgm") bases.push_back(item.path());
  }
  std::sort(bases.begin(), bases.end());
  if (bases.size() < 2) throw Error("dataset generation needs at least 2 PGM images in " + base_dir.string());

  fs::create_directories(out_dir / "gallery");
  fs::create_directories(out_dir / "queries");
  GeneratedDataset result;
  result.manifest.root = out_dir;

  for (std::size_t i = 0; i < bases.size(); ++i) {
    const std::string stem = bases[i].stem().string();
    const Image base = load_pgm(bases[i]);
    const fs::path gallery_rel = fs::path("gallery") / (stem + ".pgm");
    fs::copy_file(bases[i], out_dir / gallery_rel, fs::copy_options::overwrite_existing);
    result.manifest.entries.push_back({stem, stem, gallery_rel, BlurSpec::none(), seed});

    for (std::size_t j = 0; j < blur_grid.size(); ++j) {
      const std::uint64_t entry_seed = seed * 1000003 + i * 1009 + j;
      const std::string id = stem + "_b" + std::to_string(j);
      Image blurred = base;
      try {
        blurred = apply_blur(base, blur_grid[j], options.sampling);
      } catch (const MarginError& ex) {
        ++result.skipped;
        result.warnings.push_back(id + ": " + ex.what());
        continue;
      }
      if (options.noise_sigma > 0.0) {
        std::mt19937_64 rng(entry_seed);
        std::normal_distribution<double> noise(0.0, options.noise_sigma);
        std::vector<double> px(blurred.pixels().begin(), blurred.pixels().end());
        for (double& v : px) v = std::clamp(v + noise(rng), 0.0, 1.0);
        blurred = Image(blurred.width(), blurred.height(), std::move(px));
      }
      const fs::path rel = fs::path("queries") / (id + ".pgm");
      save_pgm(Image(blurred.width(), blurred.height(),
                     [&] {
                       std::vector<double> px(blurred.pixels().begin(), blurred.pixels().end());
                       for (double& v : px) v = std::min(v, 1.0);
                       return px;
                     }()),
               out_dir / rel, options.maxval);
      result.manifest.entries.push_back({id, stem, rel, blur_grid[j], entry_seed});
    }
  }
  result.manifest.validate();
  save_manifest(result.manifest, out_dir / "manifest.json");
  return result;
}

}  // namespace mbinv
