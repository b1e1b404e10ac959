#include "mbinv/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mbinv {

namespace {

struct Item {
  const ManifestEntry* entry;
  FeatureVector features;
};

struct Split {
  std::vector<Item> gallery;
  std::vector<Item> queries;
  std::vector<std::string> excluded;
};

Split load_features(const DatasetManifest& manifest, FeatureFamily family) {
  Split split;
  for (const auto& entry : manifest.entries) {
    const Image img = load_pgm(manifest.resolve(entry));
    FeatureVector fv = extract_features(img, family);
    if (entry.is_gallery()) {
      split.gallery.push_back({&entry, std::move(fv)});
    } else if (!fv.any_valid()) {
      split.excluded.push_back(entry.id);
    } else {
      split.queries.push_back({&entry, std::move(fv)});
    }
  }
  if (split.gallery.empty()) throw Error("manifest has no gallery entries");
  return split;
}

std::vector<RankedMatch> rank(const Item& query, const std::vector<Item>& gallery) {
  std::vector<RankedMatch> ranking;
  ranking.reserve(gallery.size());
  for (const auto& g : gallery)
    ranking.push_back({g.entry->id, g.entry->class_label, feature_distance(query.features, g.features)});
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const RankedMatch& l, const RankedMatch& r) { return l.distance < r.distance; });
  return ranking;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

FeatureVector extract_features(const Image& img, FeatureFamily family, Point pivot) {
  switch (family) {
    case FeatureFamily::Hu6:
      return hu_invariants(moment_set(img, MomentKind::Normalized, 3));
    case FeatureFamily::LinearBlur:
      return linear_blur_invariants(moment_set(img, MomentKind::Central, 3));
    case FeatureFamily::Rmbmi:
      return rmbmi(moments_about(img, pivot, 4), pivot);
  }
  throw std::invalid_argument("unknown feature family");
}

RetrievalReport run_retrieval(const DatasetManifest& manifest, FeatureFamily family) {
  const Split split = load_features(manifest, family);
  RetrievalReport report;
  report.family = family;
  report.excluded = split.excluded;
  const std::size_t top5 = std::min<std::size_t>(5, split.gallery.size());
  double hits1 = 0.0, hits5 = 0.0, rr = 0.0;
  for (const auto& q : split.queries) {
    QueryResult result{q.entry->id, q.entry->class_label, rank(q, split.gallery), 0};
    for (std::size_t i = 0; i < result.ranking.size(); ++i) {
      if (result.ranking[i].class_label == result.class_label) {
        result.first_correct_rank = i + 1;
        break;
      }
    }
    std::size_t correct5 = 0;
    for (std::size_t i = 0; i < top5; ++i) correct5 += result.ranking[i].class_label == result.class_label;
    hits1 += result.first_correct_rank == 1 ? 1.0 : 0.0;
    hits5 += static_cast<double>(correct5) / static_cast<double>(top5);
    rr += result.first_correct_rank ? 1.0 / static_cast<double>(result.first_correct_rank) : 0.0;
    report.queries.push_back(std::move(result));
  }
  if (!report.queries.empty()) {
    const double n = static_cast<double>(report.queries.size());
    report.precision_at_1 = hits1 / n;
    report.precision_at_5 = hits5 / n;
    report.mean_reciprocal_rank = rr / n;
  }
  return report;
}

ClassificationReport run_classification(const DatasetManifest& manifest, FeatureFamily family, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (static_cast<std::size_t>(k) > manifest.gallery_size())
    throw std::invalid_argument("k exceeds the gallery size");
  const Split split = load_features(manifest, family);
  ClassificationReport report;
  report.family = family;
  report.k = k;
  report.excluded = split.excluded;
  std::size_t correct = 0;
  for (const auto& q : split.queries) {
    const auto ranking = rank(q, split.gallery);
    struct Tally {
      int votes = 0;
      double distance_sum = 0.0;
    };
    std::map<std::string, Tally> tallies;  // ordered by label for the final tie break
    for (int i = 0; i < k; ++i) {
      auto& t = tallies[ranking[i].class_label];
      ++t.votes;
      t.distance_sum += ranking[i].distance;
    }
    const std::string* best = nullptr;
    double best_mean = 0.0;
    int best_votes = 0;
    for (const auto& [label, t] : tallies) {
      const double mean = t.distance_sum / t.votes;
      if (!best || t.votes > best_votes || (t.votes == best_votes && mean < best_mean)) {
        best = &label;
        best_votes = t.votes;
        best_mean = mean;
      }
    }
    correct += *best == q.entry->class_label;
    report.predictions.push_back({q.entry->id, q.entry->class_label, *best});
  }
  if (!report.predictions.empty())
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.predictions.size());
  return report;
}

nlohmann::json to_json(const RetrievalReport& report) {
  nlohmann::json queries = nlohmann::json::array();
  for (const auto& q : report.queries) {
    nlohmann::json ranking = nlohmann::json::array();
    for (const auto& m : q.ranking) {
      ranking.push_back({{"id", m.id},
                         {"class_label", m.class_label},
                         {"distance", std::isfinite(m.distance) ? nlohmann::json(m.distance) : nlohmann::json(nullptr)}});
    }
    queries.push_back({{"query_id", q.query_id},
                       {"class_label", q.class_label},
                       {"first_correct_rank", q.first_correct_rank},
                       {"ranking", ranking}});
  }
  return {{"family", std::string(to_string(report.family))},
          {"scored", report.scored()},
          {"excluded", report.excluded},
          {"precision_at_1", report.precision_at_1},
          {"precision_at_5", report.precision_at_5},
          {"mean_reciprocal_rank", report.mean_reciprocal_rank},
          {"queries", queries}};
}

nlohmann::json to_json(const ClassificationReport& report) {
  nlohmann::json predictions = nlohmann::json::array();
  for (const auto& p : report.predictions) {
    predictions.push_back(
        {{"query_id", p.query_id}, {"true_label", p.true_label}, {"predicted_label", p.predicted_label}});
  }
  return {{"family", std::string(to_string(report.family))},
          {"k", report.k},
          {"scored", report.predictions.size()},
          {"excluded", report.excluded},
          {"accuracy", report.accuracy},
          {"predictions", predictions}};
}

std::string to_csv(const RetrievalReport& report) {
  std::ostringstream os;
  os << "query_id,class_label,rank,gallery_id,gallery_label,distance\n";
  for (const auto& q : report.queries) {
    for (std::size_t i = 0; i < q.ranking.size(); ++i) {
      const auto& m = q.ranking[i];
      os << q.query_id << ',' << q.class_label << ',' << i + 1 << ',' << m.id << ',' << m.class_label << ','
         << format_double(m.distance) << '\n';
    }
  }
  return os.str();
}

std::string to_csv(const ClassificationReport& report) {
  std::ostringstream os;
  os << "query_id,true_label,predicted_label,correct\n";
  for (const auto& p : report.predictions)
    os << p.query_id << ',' << p.true_label << ',' << p.predicted_label << ','
       << (p.true_label == p.predicted_label ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace mbinv
