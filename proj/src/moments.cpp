#include "mbinv/moments.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace mbinv {

namespace {

struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) noexcept {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const noexcept { return sum + comp; }
};

std::string point_text(Point p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", p.x, p.y);
  return buf;
}

void require_order(int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("moment indices must be non-negative");
  if (p + q > simd::kMaxPower) throw std::invalid_argument("moment order too large");
}

}  // namespace

std::string_view to_string(MomentKind kind) noexcept {
  switch (kind) {
    case MomentKind::Raw:
      return "raw";
    case MomentKind::Central:
      return "central";
    case MomentKind::Normalized:
      return "normalized";
  }
  return "raw";
}

MomentKind parse_moment_kind(std::string_view text) {
  if (text == "raw") return MomentKind::Raw;
  if (text == "central") return MomentKind::Central;
  if (text == "normalized") return MomentKind::Normalized;
  throw std::invalid_argument("unknown moment kind: " + std::string(text));
}

MomentSet::MomentSet(MomentKind kind, int max_order, Point origin, std::string frame_note)
    : kind_(kind), max_order_(max_order), origin_(origin), frame_note_(std::move(frame_note)) {
  if (max_order < 0 || max_order > simd::kMaxPower) throw std::invalid_argument("max_order out of range");
  values_.assign(entry_count(max_order), 0.0);
}

void MomentSet::check(int p, int q) const {
  if (p < 0 || q < 0 || p + q > max_order_)
    throw std::out_of_range("moment (" + std::to_string(p) + "," + std::to_string(q) +
                            ") outside max_order " + std::to_string(max_order_));
}

double MomentSet::at(int p, int q) const {
  check(p, q);
  return values_[index(p, q)];
}

void MomentSet::set(int p, int q, double value) {
  check(p, q);
  values_[index(p, q)] = value;
}

MomentSet moments_about(const Image& img, Point origin, int max_order, const simd::KernelTable& kernels) {
  MomentSet out(MomentKind::Raw, max_order, origin, "raw moments about " + point_text(origin) +
                                                        " in the centered image frame");
  std::vector<NeumaierSum> acc(MomentSet::entry_count(max_order));
  std::array<double, simd::kMaxPower + 1> row_sums{};
  const CoordinateFrame& frame = img.frame();
  const double x0 = frame.x_of_col(0.0) - origin.x;

  for (std::size_t r = 0; r < img.height(); ++r) {
    const auto row = img.row(r);
    kernels.row_power_sums(row.data(), row.size(), x0, max_order, row_sums.data());
    const double y = frame.y_of_row(static_cast<double>(r)) - origin.y;
    for (int p = 0; p <= max_order; ++p) {
      double yq = 1.0;
      for (int q = 0; p + q <= max_order; ++q) {
        acc[MomentSet::index(p, q)].add(yq * row_sums[p]);
        yq *= y;
      }
    }
  }
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) out.set(n - q, q, acc[MomentSet::index(n - q, q)].value());
  }
  return out;
}

MomentSet moments_about(const Image& img, Point origin, int max_order) {
  return moments_about(img, origin, max_order, simd::active_kernels());
}

double raw_moment(const Image& img, int p, int q) {
  require_order(p, q);
  return moments_about(img, Point{}, p + q).at(p, q);
}

Centroid centroid(const Image& img) {
  const MomentSet m = moments_about(img, Point{}, 1);
  const double m00 = m.at(0, 0);
  if (!(m00 > 0.0)) throw DegenerateImageError();
  return {m.at(1, 0) / m00, m.at(0, 1) / m00};
}

double central_moment(const Image& img, int p, int q) {
  require_order(p, q);
  const Centroid c = centroid(img);
  if (p + q == 1) return 0.0;
  return moments_about(img, Point{c.xc, c.yc}, p + q).at(p, q);
}

double normalized_central_moment(const Image& img, int p, int q) {
  require_order(p, q);
  if (p + q < 2) throw std::invalid_argument("normalized moments are defined for order >= 2");
  const Centroid c = centroid(img);
  const MomentSet m = moments_about(img, Point{c.xc, c.yc}, p + q);
  return m.at(p, q) / std::pow(m.at(0, 0), (p + q) / 2.0 + 1.0);
}

MomentSet moment_set(const Image& img, MomentKind kind, int max_order) {
  if (max_order < 0 || max_order > kMaxMomentSetOrder)
    throw std::invalid_argument("moment_set supports max_order in [0, 8]");
  if (kind == MomentKind::Raw) {
    MomentSet raw = moments_about(img, Point{}, max_order);
    if (!(raw.at(0, 0) > 0.0)) throw DegenerateImageError();
    return raw;
  }
  const Centroid c = centroid(img);
  const Point origin{c.xc, c.yc};
  const MomentSet about = moments_about(img, origin, max_order);
  MomentSet central(MomentKind::Central, max_order, origin,
                    "central moments about the centroid " + point_text(origin) + " in the centered image frame");
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) central.set(n - q, q, n == 1 ? 0.0 : about.at(n - q, q));
  }
  return kind == MomentKind::Central ? central : normalize(central);
}

MomentSet normalize(const MomentSet& central) {
  if (central.kind() != MomentKind::Central) throw std::invalid_argument("normalize expects central moments");
  const double u00 = central.at(0, 0);
  if (!(u00 > 0.0)) throw DegenerateImageError();
  MomentSet out(MomentKind::Normalized, central.max_order(), central.origin(),
                "normalized central moments; " + central.frame_note());
  for (int n = 0; n <= central.max_order(); ++n) {
    const double scale = std::pow(u00, n / 2.0 + 1.0);
    for (int q = 0; q <= n; ++q) out.set(n - q, q, central.at(n - q, q) / scale);
  }
  return out;
}

nlohmann::json to_json(const MomentSet& ms) {
  nlohmann::json values = nlohmann::json::object();
  for (int n = 0; n <= ms.max_order(); ++n) {
    for (int q = 0; q <= n; ++q) values[std::to_string(n - q) + "," + std::to_string(q)] = ms.at(n - q, q);
  }
  return {
      {"kind", std::string(to_string(ms.kind()))},
      {"max_order", ms.max_order()},
      {"origin", {ms.origin().x, ms.origin().y}},
      {"frame_note", ms.frame_note()},
      {"values", values},
  };
}

MomentSet moment_set_from_json(const nlohmann::json& j) {
  const MomentKind kind = parse_moment_kind(j.at("kind").get<std::string>());
  const int max_order = j.at("max_order").get<int>();
  Point origin{};
  if (j.contains("origin")) origin = {j["origin"].at(0).get<double>(), j["origin"].at(1).get<double>()};
  MomentSet ms(kind, max_order, origin, j.value("frame_note", std::string{}));
  const auto& values = j.at("values");
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) {
      const std::string key = std::to_string(n - q) + "," + std::to_string(q);
      if (!values.contains(key)) throw std::invalid_argument("moment JSON missing entry " + key);
      ms.set(n - q, q, values.at(key).get<double>());
    }
  }
  return ms;
}

}  // namespace mbinv
