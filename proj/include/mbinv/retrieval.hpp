#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mbinv/dataset.hpp"
#include "mbinv/invariants.hpp"

namespace mbinv {

// Feature vector of a whole image:
//   hu6    -> Hu invariants over normalized central moments up to order 3
//   linear -> (u30, u21, u12, u03) of the central moments
//   rmbmi  -> RMBMI over raw moments about `pivot` up to order 4
FeatureVector extract_features(const Image& img, FeatureFamily family, Point pivot = {});

struct RankedMatch {
  std::string id;
  std::string class_label;
  double distance = 0.0;
};

struct QueryResult {
  std::string query_id;
  std::string class_label;
  std::vector<RankedMatch> ranking;  // ascending distance, manifest order on ties
  std::size_t first_correct_rank = 0;  // 1-based; 0 when no gallery entry shares the class
};

struct RetrievalReport {
  FeatureFamily family = FeatureFamily::Hu6;
  std::vector<QueryResult> queries;
  std::vector<std::string> excluded;  // queries without any valid feature entry
  double precision_at_1 = 0.0;
  double precision_at_5 = 0.0;
  double mean_reciprocal_rank = 0.0;

  std::size_t scored() const noexcept { return queries.size(); }
};

// Ranks every gallery entry for every query entry of the manifest. Queries
// are taken about the image center, which is also the rotation pivot used by
// the dataset generator.
RetrievalReport run_retrieval(const DatasetManifest& manifest, FeatureFamily family);

struct Classification {
  std::string query_id;
  std::string true_label;
  std::string predicted_label;
};

struct ClassificationReport {
  FeatureFamily family = FeatureFamily::Hu6;
  int k = 1;
  std::vector<Classification> predictions;
  std::vector<std::string> excluded;
  double accuracy = 0.0;
};

// k-nearest-neighbour vote over the gallery. Vote ties go to the class with
// the smallest mean distance among its voters, then to the smaller label.
ClassificationReport run_classification(const DatasetManifest& manifest, FeatureFamily family, int k);

nlohmann::json to_json(const RetrievalReport& report);
nlohmann::json to_json(const ClassificationReport& report);
// Header: query_id,class_label,rank,gallery_id,gallery_label,distance
std::string to_csv(const RetrievalReport& report);
// Header: query_id,true_label,predicted_label,correct
std::string to_csv(const ClassificationReport& report);

}  // namespace mbinv
