#pragma once

#include <vector>

#include "hrvauth/error.hpp"

namespace hrvauth::modeling {

/// Standardizing PCA front-end: columns are centered and scaled to unit
/// variance on the training rows, then projected onto the leading
/// eigenvectors of the resulting covariance. Keeps the minimal number
/// of components whose cumulative explained variance reaches the
/// threshold.
struct PCAModel {
  std::vector<double> mean;
  std::vector<double> scale;
  std::vector<std::vector<double>> components;  // retained count x input_dim
  std::vector<double> explained_ratio;          // all input_dim ratios
  int retained = 0;
  int input_dim = 0;
  bool constant_column_warning = false;

  std::vector<double> transform(const std::vector<double>& row) const;
  double cumulative_explained() const;
};

PCAModel fit_pca(const std::vector<std::vector<double>>& rows,
                 double variance_threshold = 0.9);

}  // namespace hrvauth::modeling
