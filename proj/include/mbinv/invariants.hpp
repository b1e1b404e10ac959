#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mbinv/moments.hpp"

namespace mbinv {

enum class FeatureFamily { Hu6, LinearBlur, Rmbmi };

std::string_view to_string(FeatureFamily family) noexcept;
// Accepts "hu6", "linear", "linear_blur", "rmbmi".
FeatureFamily parse_feature_family(std::string_view text);

struct FeatureVector {
  FeatureFamily family;
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<bool> valid;

  std::size_t size() const noexcept { return values.size(); }
  bool any_valid() const noexcept;
};

nlohmann::json to_json(const FeatureVector& fv);

// phi1..phi6 of Hu's system over eta_pq (normalized) or u_pq (central); with
// include_phi7 a seventh entry "phi7" is appended.
FeatureVector hu_invariants(const MomentSet& ms, bool include_phi7 = false);

// |phi7^2 - (phi3 phi4^3 - phi5^2)| / max(phi7^2, |phi3 phi4^3|, phi5^2, floor)
double hu_dependency_residual(const MomentSet& ms);

// (u30, u21, u12, u03): untouched by linear motion blur.
FeatureVector linear_blur_invariants(const MomentSet& ms);

// Relative denominator threshold below which a ratio invariant is masked.
inline constexpr double kDenominatorEpsilon = 1e-9;

// The seven rotational-motion-blur invariants over raw moments taken about
// the rotation center. RMBMI-3..7 are ratios and are masked invalid when
// their denominator is negligible against its natural magnitude scale.
FeatureVector rmbmi(const MomentSet& ms);
// Same, first checking that the moments were taken about `pivot`.
FeatureVector rmbmi(const MomentSet& ms, Point pivot);

// Mean over jointly valid entries of |u_i - v_i| / (|u_i| + |v_i| + eps);
// +infinity when no entry is valid in both.
double feature_distance(const FeatureVector& u, const FeatureVector& v);

}  // namespace mbinv
