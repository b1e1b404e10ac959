#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mbinv/raster.hpp"
#include "mbinv/simd/kernels.hpp"

namespace mbinv {

enum class MomentKind { Raw, Central, Normalized };

std::string_view to_string(MomentKind kind) noexcept;
MomentKind parse_moment_kind(std::string_view text);

inline constexpr int kMaxMomentSetOrder = 8;

// Table of moments m_pq (or u_pq, eta_pq) for every p+q <= max_order, stored
// by total order then by q. `origin` is the point the monomials are taken
// about, in the image's centered frame.
class MomentSet {
 public:
  MomentSet(MomentKind kind, int max_order, Point origin, std::string frame_note);

  MomentKind kind() const noexcept { return kind_; }
  int max_order() const noexcept { return max_order_; }
  Point origin() const noexcept { return origin_; }
  const std::string& frame_note() const noexcept { return frame_note_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  static std::size_t index(int p, int q) noexcept {
    const auto n = static_cast<std::size_t>(p + q);
    return n * (n + 1) / 2 + static_cast<std::size_t>(q);
  }
  static std::size_t entry_count(int max_order) noexcept { return index(0, max_order) + 1; }

  // Throws std::out_of_range for p+q > max_order or negative indices.
  double at(int p, int q) const;
  void set(int p, int q, double value);

  friend bool operator==(const MomentSet&, const MomentSet&) = default;

 private:
  void check(int p, int q) const;

  MomentKind kind_;
  int max_order_;
  Point origin_;
  std::string frame_note_;
  std::vector<double> values_;
};

struct Centroid {
  double xc = 0.0;
  double yc = 0.0;
};

double raw_moment(const Image& img, int p, int q);
Centroid centroid(const Image& img);
double central_moment(const Image& img, int p, int q);
// u_pq / u00^((p+q)/2 + 1); requires p+q >= 2.
double normalized_central_moment(const Image& img, int p, int q);

MomentSet moment_set(const Image& img, MomentKind kind, int max_order);

// Raw moments with monomials taken about `origin` (x - ox)^p (y - oy)^q.
MomentSet moments_about(const Image& img, Point origin, int max_order);
MomentSet moments_about(const Image& img, Point origin, int max_order, const simd::KernelTable& kernels);

// Normalized set from a central one: eta_pq = u_pq / u00^((p+q)/2 + 1).
MomentSet normalize(const MomentSet& central);

nlohmann::json to_json(const MomentSet& ms);
MomentSet moment_set_from_json(const nlohmann::json& j);

}  // namespace mbinv
