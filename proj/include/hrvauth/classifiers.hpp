#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hrvauth/pca.hpp"

namespace hrvauth::modeling {

enum class ClassifierKind { Knn, Lda, Rf, Mlp };

std::string classifier_name(ClassifierKind k);
ClassifierKind classifier_from_name(const std::string& name);

/// PCA-space rows labeled genuine (1) / imposter (0) for one subject.
struct BinaryLabeledSet {
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  std::string genuine_subject;

  void validate() const;  // both classes present, consistent dims
  size_t dim() const { return x.empty() ? 0 : x[0].size(); }
};

struct Hyperparams {
  int knn_k = 3;
  int rf_trees = 100;
  int mlp_hidden = 5;
  double mlp_learning_rate = 0.3;
  double mlp_momentum = 0.2;
  int mlp_epochs = 500;
  int mlp_batch = 16;
  double lda_ridge_factor = 1e-6;  // times trace/d, applied when singular
};

struct KnnParams {
  int k = 3;
  std::vector<std::vector<double>> train_x;
  std::vector<int> train_y;
};

struct LdaParams {
  std::vector<double> w;
  double b = 0.0;
};

// Flat node list per tree; leaves have feature < 0 and carry the vote.
struct RfNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int vote = 0;
};

struct RfParams {
  std::vector<std::vector<RfNode>> forest;
};

struct MlpParams {
  std::vector<double> input_mean, input_scale;        // train-set standardization
  std::vector<std::vector<double>> w_hidden;          // hidden x input
  std::vector<double> b_hidden;
  std::vector<double> w_out;
  double b_out = 0.0;
};

/// A fitted one-vs-all authenticator: PCA front-end plus classifier,
/// scoring raw feature vectors to a genuine-probability in [0,1].
/// Immutable after fit; safe to score from multiple threads.
struct TrainedModel {
  ClassifierKind kind = ClassifierKind::Knn;
  PCAModel pca;
  Hyperparams hp;
  std::uint64_t seed = 0;
  std::string subject_id;
  double enroll_threshold = std::numeric_limits<double>::quiet_NaN();
  std::variant<KnnParams, LdaParams, RfParams, MlpParams> params;

  /// Scores an already PCA-transformed vector.
  double score_transformed(const std::vector<double>& z) const;

  /// Standardize + project + score a raw feature vector.
  double score(const std::vector<double>& raw_features) const;
};

TrainedModel train_knn(const BinaryLabeledSet& set, const Hyperparams& hp, PCAModel pca);
TrainedModel train_lda(const BinaryLabeledSet& set, const Hyperparams& hp, PCAModel pca);
TrainedModel train_rf(const BinaryLabeledSet& set, const Hyperparams& hp,
                      std::uint64_t seed, PCAModel pca);
TrainedModel train_mlp(const BinaryLabeledSet& set, const Hyperparams& hp,
                       std::uint64_t seed, PCAModel pca);

TrainedModel train_classifier(ClassifierKind kind, const BinaryLabeledSet& set,
                              const Hyperparams& hp, std::uint64_t seed, PCAModel pca);

}  // namespace hrvauth::modeling
