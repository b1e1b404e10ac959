#include "mbinv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mbinv {

namespace {

struct HuTerms {
  double phi[7];
};

// Hu's seven invariants. phi6 and phi7 use the standard forms:
//   phi6 = (e20 - e02)[(e30 + e12)^2 - (e21 + e03)^2] + 4 e11 (e30 + e12)(e21 + e03)
//   phi7 = (3e21 - e03)(e30 + e12)[...] - (e30 - 3e12)(e21 + e03)[...]
HuTerms hu_terms(const MomentSet& ms) {
  if (ms.kind() == MomentKind::Raw)
    throw std::invalid_argument("Hu invariants need central or normalized moments");
  if (ms.max_order() < 3) throw std::invalid_argument("Hu invariants need moments up to order 3");
  const double e20 = ms.at(2, 0), e11 = ms.at(1, 1), e02 = ms.at(0, 2);
  const double e30 = ms.at(3, 0), e21 = ms.at(2, 1), e12 = ms.at(1, 2), e03 = ms.at(0, 3);

  const double a = e30 - 3.0 * e12;  // real part of the spin-3 term
  const double b = 3.0 * e21 - e03;  // imaginary part of the spin-3 term
  const double s = e30 + e12;
  const double t = e21 + e03;
  const double s2 = s * s;
  const double t2 = t * t;

  HuTerms h{};
  h.phi[0] = e20 + e02;
  h.phi[1] = (e20 - e02) * (e20 - e02) + 4.0 * e11 * e11;
  h.phi[2] = a * a + b * b;
  h.phi[3] = s2 + t2;
  h.phi[4] = a * s * (s2 - 3.0 * t2) + b * t * (3.0 * s2 - t2);
  h.phi[5] = (e20 - e02) * (s2 - t2) + 4.0 * e11 * s * t;
  h.phi[6] = b * s * (s2 - 3.0 * t2) - a * t * (3.0 * s2 - t2);
  return h;
}

void require_order(const MomentSet& ms, int order) {
  if (ms.max_order() < order)
    throw std::invalid_argument("moment set must reach order " + std::to_string(order));
}

}  // namespace

std::string_view to_string(FeatureFamily family) noexcept {
  switch (family) {
    case FeatureFamily::Hu6:
      return "hu6";
    case FeatureFamily::LinearBlur:
      return "linear";
    case FeatureFamily::Rmbmi:
      return "rmbmi";
  }
  return "hu6";
}

FeatureFamily parse_feature_family(std::string_view text) {
  if (text == "hu6") return FeatureFamily::Hu6;
  if (text == "linear" || text == "linear_blur") return FeatureFamily::LinearBlur;
  if (text == "rmbmi") return FeatureFamily::Rmbmi;
  throw std::invalid_argument("unknown feature family: " + std::string(text));
}

bool FeatureVector::any_valid() const noexcept {
  return std::any_of(valid.begin(), valid.end(), [](bool v) { return v; });
}

nlohmann::json to_json(const FeatureVector& fv) {
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    values.push_back({{"name", fv.names[i]},
                      {"value", fv.valid[i] ? nlohmann::json(fv.values[i]) : nlohmann::json(nullptr)},
                      {"valid", static_cast<bool>(fv.valid[i])}});
  }
  return {{"family", std::string(to_string(fv.family))}, {"values", values}};
}

FeatureVector hu_invariants(const MomentSet& ms, bool include_phi7) {
  const HuTerms h = hu_terms(ms);
  FeatureVector fv{FeatureFamily::Hu6, {}, {}, {}};
  const int count = include_phi7 ? 7 : 6;
  for (int i = 0; i < count; ++i) {
    fv.names.push_back("phi" + std::to_string(i + 1));
    fv.values.push_back(h.phi[i]);
    fv.valid.push_back(true);
  }
  return fv;
}

double hu_dependency_residual(const MomentSet& ms) {
  const HuTerms h = hu_terms(ms);
  constexpr double kFloor = 1e-300;
  const double phi7_sq = h.phi[6] * h.phi[6];
  const double phi5_sq = h.phi[4] * h.phi[4];
  const double product = h.phi[2] * h.phi[3] * h.phi[3] * h.phi[3];
  const double scale = std::max({phi7_sq, std::abs(product), phi5_sq, kFloor});
  return std::abs(phi7_sq - (product - phi5_sq)) / scale;
}

FeatureVector linear_blur_invariants(const MomentSet& ms) {
  if (ms.kind() != MomentKind::Central) throw std::invalid_argument("linear blur invariants need central moments");
  require_order(ms, 3);
  return FeatureVector{FeatureFamily::LinearBlur,
                       {"u30", "u21", "u12", "u03"},
                       {ms.at(3, 0), ms.at(2, 1), ms.at(1, 2), ms.at(0, 3)},
                       {true, true, true, true}};
}

FeatureVector rmbmi(const MomentSet& ms) {
  if (ms.kind() != MomentKind::Raw) throw std::invalid_argument("RMBMI need raw moments about the rotation center");
  require_order(ms, 4);
  const double m00 = ms.at(0, 0);
  const double m10 = ms.at(1, 0), m01 = ms.at(0, 1);
  const double m20 = ms.at(2, 0), m11 = ms.at(1, 1), m02 = ms.at(0, 2);
  const double m30 = ms.at(3, 0), m21 = ms.at(2, 1), m12 = ms.at(1, 2), m03 = ms.at(0, 3);
  const double m40 = ms.at(4, 0), m31 = ms.at(3, 1), m22 = ms.at(2, 2), m13 = ms.at(1, 3), m04 = ms.at(0, 4);

  const double first_sq = m10 * m10 + m01 * m01;
  const double spread = m20 + m02;
  const double den3 = first_sq;
  const double den6 = (m20 - m02) * (m20 - m02) + 4.0 * m11 * m11;
  const double den7 = m01 * m01 * m11 - m01 * m02 * m10 + m01 * m10 * m20 - m10 * m10 * m11;

  // Magnitude scales with the same dimensions as each denominator.
  const double scale3 = std::abs(m00 * spread);
  const double scale6 = spread * spread;
  const double scale7 = first_sq * std::abs(spread);
  auto usable = [](double den, double scale) {
    return scale > 0.0 && std::isfinite(den) && std::abs(den) > kDenominatorEpsilon * scale;
  };

  FeatureVector fv{FeatureFamily::Rmbmi, {}, {}, {}};
  auto push = [&fv](int index, double value, bool ok) {
    fv.names.push_back("rmbmi" + std::to_string(index));
    fv.values.push_back(ok ? value : 0.0);
    fv.valid.push_back(ok);
  };
  const bool ok3 = usable(den3, scale3);
  const bool ok6 = usable(den6, scale6);
  const bool ok7 = usable(den7, scale7);

  push(1, m20 + m02, true);
  push(2, m40 + 2.0 * m22 + m04, true);
  push(3, ok3 ? (m01 * m03 + m01 * m21 + m10 * m12 + m10 * m30) / den3 : 0.0, ok3);
  push(4, ok3 ? (m01 * m12 + m01 * m30 - m10 * m03 - m10 * m21) / den3 : 0.0, ok3);
  push(5, ok3 ? ((m30 + m12) * (m30 + m12) + (m21 + m03) * (m21 + m03)) / den3 : 0.0, ok3);
  push(6, ok6 ? (m02 * m13 + m02 * m31 - m04 * m11 + m40 * m11 - m13 * m20 - m20 * m31) / den6 : 0.0, ok6);
  push(7,
       ok7 ? (m01 * m01 * m13 + m01 * m01 * m31 - m01 * m04 * m10 + m01 * m10 * m40 - m10 * m10 * m13 -
              m10 * m10 * m31) /
                 den7
           : 0.0,
       ok7);
  return fv;
}

FeatureVector rmbmi(const MomentSet& ms, Point pivot) {
  constexpr double kFrameTolerance = 1e-9;
  if (std::abs(ms.origin().x - pivot.x) > kFrameTolerance || std::abs(ms.origin().y - pivot.y) > kFrameTolerance)
    throw FrameMismatchError();
  return rmbmi(ms);
}

double feature_distance(const FeatureVector& u, const FeatureVector& v) {
  if (u.family != v.family || u.size() != v.size())
    throw std::invalid_argument("feature_distance needs vectors of the same family");
  constexpr double kEps = std::numeric_limits<double>::min();
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u.valid[i] || !v.valid[i]) continue;
    total += std::abs(u.values[i] - v.values[i]) / (std::abs(u.values[i]) + std::abs(v.values[i]) + kEps);
    ++count;
  }
  if (count == 0) return std::numeric_limits<double>::infinity();
  return total / static_cast<double>(count);
}

}  // namespace mbinv
