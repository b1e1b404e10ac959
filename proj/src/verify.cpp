#include "mbinv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbinv {

double VerifyReport::max_error() const noexcept {
  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.rel_error);
  return worst;
}

double VerifyReport::median_error() const {
  if (rows.empty()) throw std::logic_error("empty verify report");
  std::vector<double> errs;
  errs.reserve(rows.size());
  for (const auto& row : rows) errs.push_back(row.rel_error);
  std::sort(errs.begin(), errs.end());
  const std::size_t mid = errs.size() / 2;
  return errs.size() % 2 ? errs[mid] : 0.5 * (errs[mid - 1] + errs[mid]);
}

double VerifyReport::mass_rel_change() const noexcept {
  return std::abs(blurred_mass - source_mass) / source_mass;
}

double relative_moment_error(double predicted, double measured, double order_scale) noexcept {
  return std::abs(predicted - measured) / std::max(std::abs(measured), order_scale);
}

std::vector<double> order_scales(const MomentSet& ms) {
  const double m00 = ms.at(0, 0);
  if (!(m00 > 0.0)) throw DegenerateImageError();
  const double rho = ms.max_order() >= 2 ? std::sqrt((ms.at(2, 0) + ms.at(0, 2)) / m00) : 1.0;
  std::vector<double> scales(static_cast<std::size_t>(ms.max_order()) + 1);
  for (int n = 0; n <= ms.max_order(); ++n) scales[static_cast<std::size_t>(n)] = m00 * std::pow(rho, n);
  return scales;
}

VerifyReport verify_blur_prediction(const Image& img, const BlurSpec& spec, TimeSampling sampling, int max_order) {
  if (spec.kind == BlurKind::None) throw std::invalid_argument("verify needs a linear or rotational blur");
  if (max_order < 2) throw std::invalid_argument("verify needs max_order >= 2");
  const Image blurred = apply_blur(img, spec, sampling);

  MomentSet predicted(MomentKind::Raw, 0, {}, "");
  MomentSet measured(MomentKind::Raw, 0, {}, "");
  if (spec.kind == BlurKind::Linear) {
    predicted = predict_linear_blur_central_moments(moment_set(img, MomentKind::Central, max_order), spec.linear,
                                                    max_order);
    measured = moment_set(blurred, MomentKind::Central, max_order);
  } else {
    const Point pivot = spec.rotational.center;
    predicted = predict_rotational_blur_raw_moments(moments_about(img, pivot, max_order), spec.rotational,
                                                    max_order);
    measured = moments_about(blurred, pivot, max_order);
  }

  VerifyReport report{spec.kind, sampling.n_samples, img.total_mass(), blurred.total_mass(), {}};
  const auto scales = order_scales(measured);
  for (int n = 0; n <= max_order; ++n) {
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      const double pr = predicted.at(p, q);
      const double me = measured.at(p, q);
      report.rows.push_back({p, q, pr, me, relative_moment_error(pr, me, scales[static_cast<std::size_t>(n)])});
    }
  }
  return report;
}

std::string to_csv(const VerifyReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "kind,p,q,predicted,measured,rel_error\n";
  for (const auto& row : report.rows) {
    out << to_string(report.kind) << ',' << row.p << ',' << row.q << ',' << row.predicted << ',' << row.measured
        << ',' << row.rel_error << '\n';
  }
  return out.str();
}

}  // namespace mbinv
