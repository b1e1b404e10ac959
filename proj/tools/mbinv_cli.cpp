// Command-line front end: moments, blur synthesis, prediction, verification,
// feature extraction and the retrieval experiments.
//
// Exit codes: 0 success, 2 usage error, 1 data error.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mbinv/blur_spec.hpp"
#include "mbinv/blur_theory.hpp"
#include "mbinv/dataset.hpp"
#include "mbinv/invariants.hpp"
#include "mbinv/moments.hpp"
#include "mbinv/retrieval.hpp"
#include "mbinv/template_match.hpp"
#include "mbinv/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Format { Json, Csv };

struct BlurOptions {
  std::string kind;
  std::optional<double> a, b, omega;
  double T = 1.0;
  double cx = 0.0, cy = 0.0;
};

void add_blur_options(CLI::App* cmd, BlurOptions& o) {
  cmd->add_option("--kind", o.kind, "linear | rotational")->required()->check(CLI::IsMember({"linear", "rotational"}));
  cmd->add_option("--a", o.a, "horizontal velocity (px per unit time)");
  cmd->add_option("--b", o.b, "vertical velocity (px per unit time, y up)");
  cmd->add_option("--omega", o.omega, "angular velocity (rad per unit time, clockwise sweep)");
  cmd->add_option("--T", o.T, "exposure time")->capture_default_str();
  cmd->add_option("--cx", o.cx, "rotation center x in the centered frame")->capture_default_str();
  cmd->add_option("--cy", o.cy, "rotation center y in the centered frame")->capture_default_str();
}

mbinv::BlurSpec blur_spec_of(const BlurOptions& o) {
  if (o.kind == "linear") {
    if (!o.a && !o.b) throw UsageError("linear blur needs --a and/or --b");
    if (o.omega) throw UsageError("--omega applies to rotational blur only");
    return mbinv::BlurSpec::make_linear(o.a.value_or(0.0), o.b.value_or(0.0), o.T);
  }
  if (!o.omega) throw UsageError("rotational blur needs --omega");
  if (o.a || o.b) throw UsageError("--a/--b apply to linear blur only");
  return mbinv::BlurSpec::make_rotational(*o.omega, o.T, {o.cx, o.cy});
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit(Format format, const json& j, const std::string& csv) {
  if (format == Format::Json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << csv;
  }
}

std::string moment_csv(const mbinv::MomentSet& ms) {
  std::string out = "p,q,value\n";
  for (int n = 0; n <= ms.max_order(); ++n)
    for (int q = 0; q <= n; ++q) out += std::to_string(n - q) + ',' + std::to_string(q) + ',' + num(ms.at(n - q, q)) + '\n';
  return out;
}

std::string feature_csv(const mbinv::FeatureVector& fv) {
  std::string out = "name,value,valid\n";
  for (std::size_t i = 0; i < fv.size(); ++i)
    out += fv.names[i] + ',' + (fv.valid[i] ? num(fv.values[i]) : std::string()) + ',' + (fv.valid[i] ? "1" : "0") + '\n';
  return out;
}

json image_summary(const fs::path& path, const mbinv::Image& img) {
  return {{"output", path.string()}, {"width", img.width()}, {"height", img.height()}, {"mass", img.total_mass()}};
}

std::string image_summary_csv(const fs::path& path, const mbinv::Image& img) {
  return "output,width,height,mass\n" + path.string() + ',' + std::to_string(img.width()) + ',' +
         std::to_string(img.height()) + ',' + num(img.total_mass()) + '\n';
}

mbinv::MomentSet load_moment_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw mbinv::IoError("cannot open " + path.string());
  return mbinv::moment_set_from_json(json::parse(in));
}

// The manifest, optionally restricted to the queries of one blur kind.
mbinv::DatasetManifest load_queries(const fs::path& path, const std::string& kind) {
  const mbinv::DatasetManifest manifest = mbinv::load_manifest(path);
  if (kind == "all") return manifest;
  const mbinv::BlurKind parsed = mbinv::parse_blur_kind(kind);
  if (parsed == mbinv::BlurKind::None) throw UsageError("--queries takes all, linear or rotational");
  return manifest.with_queries_of(parsed);
}

int run(int argc, char** argv) {
  CLI::App app{"Motion-blur invariant moment features"};
  app.require_subcommand(1);
  std::optional<std::string> format_override;
  app.add_option("--format", format_override, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  // The flag is accepted before or after the subcommand name.
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_override, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  };

  int samples = mbinv::kDefaultTimeSamples;
  int order = 4;

  // moments
  auto* moments_cmd = app.add_subcommand("moments", "moment set of a PGM image");
  std::string moments_kind = "raw";
  std::string moments_in;
  double ox = 0.0, oy = 0.0;
  moments_cmd->add_option("--order", order, "maximum order p+q (<= 8)")->capture_default_str();
  moments_cmd->add_option("--kind", moments_kind, "raw | central | normalized")->capture_default_str();
  moments_cmd->add_option("--origin-x", ox, "origin x for raw moments");
  moments_cmd->add_option("--origin-y", oy, "origin y for raw moments");
  moments_cmd->add_option("image", moments_in)->required();
  add_format(moments_cmd);

  // blur
  auto* blur_cmd = app.add_subcommand("blur", "synthesize motion blur");
  BlurOptions blur_opts;
  std::string blur_in, blur_out;
  add_blur_options(blur_cmd, blur_opts);
  blur_cmd->add_option("--samples", samples, "time samples")->capture_default_str();
  blur_cmd->add_option("input", blur_in)->required();
  blur_cmd->add_option("output", blur_out)->required();
  add_format(blur_cmd);

  // rotate
  auto* rotate_cmd = app.add_subcommand("rotate", "rotate content counter-clockwise about the center");
  double angle = 0.0;
  std::string rotate_in, rotate_out;
  rotate_cmd->add_option("--angle", angle, "angle in radians")->required();
  rotate_cmd->add_option("input", rotate_in)->required();
  rotate_cmd->add_option("output", rotate_out)->required();
  add_format(rotate_cmd);

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "predict blurred moments from a moment set");
  BlurOptions predict_opts;
  std::string predict_in;
  add_blur_options(predict_cmd, predict_opts);
  predict_cmd->add_option("--moments", predict_in, "MomentSet JSON (central for linear, raw for rotational)")
      ->required();
  std::optional<int> predict_order;
  predict_cmd->add_option("--order", predict_order, "maximum order (defaults to the input's)");
  add_format(predict_cmd);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "compare predicted and synthesized blurred moments");
  BlurOptions verify_opts;
  std::string verify_in;
  add_blur_options(verify_cmd, verify_opts);
  verify_cmd->add_option("--samples", samples, "time samples")->capture_default_str();
  verify_cmd->add_option("--order", order, "maximum order")->capture_default_str();
  verify_cmd->add_option("image", verify_in)->required();
  add_format(verify_cmd);

  // features
  auto* features_cmd = app.add_subcommand("features", "invariant feature vector of an image");
  std::string family_text = "hu6";
  std::string features_in;
  double px = 0.0, py = 0.0;
  features_cmd->add_option("--family", family_text, "hu6 | linear | rmbmi")->capture_default_str();
  features_cmd->add_option("--pivot-x", px, "rotation pivot x (rmbmi)");
  features_cmd->add_option("--pivot-y", py, "rotation pivot y (rmbmi)");
  features_cmd->add_option("image", features_in)->required();
  add_format(features_cmd);

  // dataset
  auto* dataset_cmd = app.add_subcommand("dataset", "generate a blurred query set and manifest");
  std::string base_dir, out_dir, grid_file;
  std::uint64_t seed = 1;
  int synthetic = 0;
  double noise = 0.0;
  dataset_cmd->add_option("--base-dir", base_dir, "directory of sharp PGM images");
  dataset_cmd->add_option("--synthetic", synthetic, "generate this many blob images into <out>/base first");
  dataset_cmd->add_option("--out", out_dir, "output directory")->required();
  dataset_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  dataset_cmd->add_option("--grid", grid_file, "blur grid JSON: [{blur_kind, params}, ...]");
  dataset_cmd->add_option("--noise", noise, "Gaussian noise sigma added to queries");
  dataset_cmd->add_option("--samples", samples, "time samples")->capture_default_str();
  add_format(dataset_cmd);

  // retrieve / classify
  auto* retrieve_cmd = app.add_subcommand("retrieve", "rank the gallery for every query of a manifest");
  std::string manifest_path;
  retrieve_cmd->add_option("--family", family_text, "hu6 | linear | rmbmi")->capture_default_str();
  std::string query_kind = "all";
  retrieve_cmd->add_option("--queries", query_kind, "all | linear | rotational")->capture_default_str();
  retrieve_cmd->add_option("manifest", manifest_path)->required();
  add_format(retrieve_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "k-nearest-neighbour classification of the queries");
  int k = 1;
  classify_cmd->add_option("--family", family_text, "hu6 | linear | rmbmi")->capture_default_str();
  classify_cmd->add_option("--k", k, "neighbours")->capture_default_str();
  classify_cmd->add_option("--queries", query_kind, "all | linear | rotational")->capture_default_str();
  classify_cmd->add_option("manifest", manifest_path)->required();
  add_format(classify_cmd);

  // match
  auto* match_cmd = app.add_subcommand("match", "locate a template in a scene");
  std::string scene_path, template_path;
  int stride = 1;
  match_cmd->add_option("--family", family_text, "hu6 | linear | rmbmi")->capture_default_str();
  match_cmd->add_option("--stride", stride, "window stride")->capture_default_str();
  match_cmd->add_option("scene", scene_path)->required();
  match_cmd->add_option("template", template_path)->required();
  add_format(match_cmd);

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  auto format_for = [&](Format fallback) {
    if (!format_override) return fallback;
    return *format_override == "csv" ? Format::Csv : Format::Json;
  };
  const mbinv::TimeSampling sampling{samples};
  if (samples < 1) throw UsageError("--samples must be at least 1");

  if (*moments_cmd) {
    const mbinv::Image img = mbinv::load_pgm(moments_in);
    const mbinv::MomentKind kind = mbinv::parse_moment_kind(moments_kind);
    const mbinv::MomentSet ms = kind == mbinv::MomentKind::Raw && (ox != 0.0 || oy != 0.0)
                                    ? mbinv::moments_about(img, {ox, oy}, order)
                                    : mbinv::moment_set(img, kind, order);
    emit(format_for(Format::Json), mbinv::to_json(ms), moment_csv(ms));
  } else if (*blur_cmd) {
    const mbinv::Image out = mbinv::apply_blur(mbinv::load_pgm(blur_in), blur_spec_of(blur_opts), sampling);
    mbinv::save_pgm(out, blur_out);
    emit(format_for(Format::Json), image_summary(blur_out, out), image_summary_csv(blur_out, out));
  } else if (*rotate_cmd) {
    const mbinv::Image out = mbinv::synthesize_rotation(mbinv::load_pgm(rotate_in), angle);
    mbinv::save_pgm(out, rotate_out);
    emit(format_for(Format::Json), image_summary(rotate_out, out), image_summary_csv(rotate_out, out));
  } else if (*predict_cmd) {
    const mbinv::BlurSpec spec = blur_spec_of(predict_opts);
    const mbinv::MomentSet src = load_moment_json(predict_in);
    const int max_order = predict_order.value_or(src.max_order());
    const mbinv::MomentSet out = spec.kind == mbinv::BlurKind::Linear
                                     ? mbinv::predict_linear_blur_central_moments(src, spec.linear, max_order)
                                     : mbinv::predict_rotational_blur_raw_moments(src, spec.rotational, max_order);
    emit(format_for(Format::Json), mbinv::to_json(out), moment_csv(out));
  } else if (*verify_cmd) {
    const mbinv::VerifyReport report =
        mbinv::verify_blur_prediction(mbinv::load_pgm(verify_in), blur_spec_of(verify_opts), sampling, order);
    json rows = json::array();
    for (const auto& r : report.rows)
      rows.push_back({{"p", r.p}, {"q", r.q}, {"predicted", r.predicted}, {"measured", r.measured},
                      {"rel_error", r.rel_error}});
    json j = {{"kind", std::string(mbinv::to_string(report.kind))},
              {"n_samples", report.n_samples},
              {"max_error", report.max_error()},
              {"median_error", report.median_error()},
              {"mass_rel_change", report.mass_rel_change()},
              {"rows", rows}};
    emit(format_for(Format::Csv), j, mbinv::to_csv(report));
  } else if (*features_cmd) {
    const mbinv::FeatureVector fv =
        mbinv::extract_features(mbinv::load_pgm(features_in), mbinv::parse_feature_family(family_text), {px, py});
    emit(format_for(Format::Json), mbinv::to_json(fv), feature_csv(fv));
  } else if (*dataset_cmd) {
    if (base_dir.empty() == (synthetic <= 0)) throw UsageError("dataset needs exactly one of --base-dir or --synthetic");
    if (noise < 0.0) throw UsageError("--noise must be non-negative");
    fs::path bases = base_dir;
    if (synthetic > 0) {
      bases = fs::path(out_dir) / "base";
      mbinv::write_synthetic_corpus(bases, synthetic, mbinv::BlobSpec{}, seed);
    }
    std::vector<mbinv::BlurSpec> grid = mbinv::default_blur_grid();
    if (!grid_file.empty()) {
      std::ifstream in(grid_file);
      if (!in) throw mbinv::IoError("cannot open " + grid_file);
      grid = mbinv::blur_grid_from_json(json::parse(in));
    }
    mbinv::DatasetOptions options;
    options.sampling = sampling;
    options.noise_sigma = noise;
    const mbinv::GeneratedDataset ds = mbinv::generate_dataset(bases, grid, out_dir, seed, options);
    for (const auto& w : ds.warnings) std::cerr << "warning: skipped " << w << '\n';
    const fs::path manifest = fs::path(out_dir) / "manifest.json";
    json j = {{"manifest", manifest.string()},
              {"gallery", ds.manifest.gallery_size()},
              {"queries", ds.manifest.query_count()},
              {"skipped", ds.skipped}};
    emit(format_for(Format::Json), j,
         "manifest,gallery,queries,skipped\n" + manifest.string() + ',' + std::to_string(ds.manifest.gallery_size()) +
             ',' + std::to_string(ds.manifest.query_count()) + ',' + std::to_string(ds.skipped) + '\n');
  } else if (*retrieve_cmd) {
    const auto report = mbinv::run_retrieval(load_queries(manifest_path, query_kind),
                                             mbinv::parse_feature_family(family_text));
    emit(format_for(Format::Json), mbinv::to_json(report), mbinv::to_csv(report));
  } else if (*classify_cmd) {
    const auto report =
        mbinv::run_classification(load_queries(manifest_path, query_kind), mbinv::parse_feature_family(family_text), k);
    emit(format_for(Format::Json), mbinv::to_json(report), mbinv::to_csv(report));
  } else if (*match_cmd) {
    const auto best = mbinv::template_match(mbinv::load_pgm(scene_path), mbinv::load_pgm(template_path), stride,
                                            mbinv::parse_feature_family(family_text));
    json j = {{"row", best.row}, {"col", best.col}, {"distance", best.distance}, {"windows", best.windows_scored}};
    emit(format_for(Format::Json), j,
         "row,col,distance,windows\n" + std::to_string(best.row) + ',' + std::to_string(best.col) + ',' +
             num(best.distance) + ',' + std::to_string(best.windows_scored) + '\n');
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
