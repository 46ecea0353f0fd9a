#include "hrvauth/classifiers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "hrvauth/rng.hpp"

namespace hrvauth::modeling {

std::string classifier_name(ClassifierKind k) {
  switch (k) {
    case ClassifierKind::Knn: return "knn";
    case ClassifierKind::Lda: return "lda";
    case ClassifierKind::Rf: return "rf";
    case ClassifierKind::Mlp: return "mlp";
  }
  return "knn";
}

ClassifierKind classifier_from_name(const std::string& name) {
  if (name == "knn" || name == "kNN") return ClassifierKind::Knn;
  if (name == "lda" || name == "LDA") return ClassifierKind::Lda;
  if (name == "rf" || name == "RF") return ClassifierKind::Rf;
  if (name == "mlp" || name == "MLP") return ClassifierKind::Mlp;
  throw ConfigError("unknown classifier '" + name + "'");
}

void BinaryLabeledSet::validate() const {
  if (x.size() != y.size()) throw ValidationError("labeled set: x/y size mismatch");
  if (x.empty()) throw InsufficientDataError("labeled set is empty");
  const size_t d = x[0].size();
  long genuine = 0, imposter = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != d) throw ValidationError("labeled set: ragged rows");
    if (y[i] != 0 && y[i] != 1) throw ValidationError("labels must be 0 or 1");
    (y[i] == 1 ? genuine : imposter)++;
  }
  if (genuine == 0 || imposter == 0)
    throw InsufficientDataError("training needs both classes present (genuine=" +
                                std::to_string(genuine) + ", imposter=" +
                                std::to_string(imposter) + ")");
}

namespace {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// ---- random forest ----------------------------------------------------

struct TreeBuilder {
  const std::vector<std::vector<double>>& x;
  const std::vector<int>& y;
  int n_try;  // features examined per split
  Rng& rng;
  std::vector<RfNode> nodes;

  int build(std::vector<int>& rows) {
    const int node_id = static_cast<int>(nodes.size());
    nodes.emplace_back();

    long positives = 0;
    for (int r : rows) positives += y[static_cast<size_t>(r)];
    const long n = static_cast<long>(rows.size());

    if (positives == 0 || positives == n) {
      nodes[static_cast<size_t>(node_id)].vote = positives == n ? 1 : 0;
      return node_id;
    }

    const int dim = static_cast<int>(x[0].size());
    std::vector<size_t> feats =
        rng.sample_without_replacement(static_cast<size_t>(dim),
                                       static_cast<size_t>(n_try));
    std::sort(feats.begin(), feats.end());  // deterministic scan order

    int best_feat = -1;
    double best_thresh = 0.0;
    double best_gini = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> vals(rows.size());
    for (size_t f : feats) {
      for (size_t i = 0; i < rows.size(); ++i)
        vals[i] = {x[static_cast<size_t>(rows[i])][f], y[static_cast<size_t>(rows[i])]};
      std::sort(vals.begin(), vals.end());
      long left_n = 0, left_pos = 0;
      for (size_t i = 0; i + 1 < vals.size(); ++i) {
        ++left_n;
        left_pos += vals[i].second;
        if (vals[i].first == vals[i + 1].first) continue;
        const long right_n = n - left_n;
        const long right_pos = positives - left_pos;
        const double pl = static_cast<double>(left_pos) / static_cast<double>(left_n);
        const double pr = static_cast<double>(right_pos) / static_cast<double>(right_n);
        const double gini = static_cast<double>(left_n) * 2.0 * pl * (1.0 - pl) +
                            static_cast<double>(right_n) * 2.0 * pr * (1.0 - pr);
        if (gini < best_gini) {
          best_gini = gini;
          best_feat = static_cast<int>(f);
          best_thresh = 0.5 * (vals[i].first + vals[i + 1].first);
        }
      }
    }

    if (best_feat < 0) {
      // no usable split in the sampled features: majority leaf, ties -> imposter
      nodes[static_cast<size_t>(node_id)].vote = 2 * positives > n ? 1 : 0;
      return node_id;
    }

    std::vector<int> left_rows, right_rows;
    for (int r : rows) {
      if (x[static_cast<size_t>(r)][static_cast<size_t>(best_feat)] <= best_thresh)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    if (left_rows.empty() || right_rows.empty()) {
      nodes[static_cast<size_t>(node_id)].vote = 2 * positives > n ? 1 : 0;
      return node_id;
    }

    nodes[static_cast<size_t>(node_id)].feature = best_feat;
    nodes[static_cast<size_t>(node_id)].threshold = best_thresh;
    const int left_id = build(left_rows);
    nodes[static_cast<size_t>(node_id)].left = left_id;
    const int right_id = build(right_rows);
    nodes[static_cast<size_t>(node_id)].right = right_id;
    return node_id;
  }
};

int tree_vote(const std::vector<RfNode>& tree, const std::vector<double>& z) {
  int i = 0;
  while (tree[static_cast<size_t>(i)].feature >= 0) {
    const RfNode& nd = tree[static_cast<size_t>(i)];
    i = z[static_cast<size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
  }
  return tree[static_cast<size_t>(i)].vote;
}

// ---- scoring ----------------------------------------------------------

double score_knn(const KnnParams& p, const std::vector<double>& z) {
  // distance ties broken by training-row index: stable sort on distance
  std::vector<std::pair<double, size_t>> dist(p.train_x.size());
  for (size_t i = 0; i < p.train_x.size(); ++i) dist[i] = {sq_dist(p.train_x[i], z), i};
  const size_t k = std::min(static_cast<size_t>(p.k), dist.size());
  std::stable_sort(dist.begin(), dist.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  long genuine = 0;
  for (size_t i = 0; i < k; ++i) genuine += p.train_y[dist[i].second];
  return static_cast<double>(genuine) / static_cast<double>(k);
}

double score_mlp(const MlpParams& p, const std::vector<double>& z) {
  std::vector<double> zs(z.size());
  for (size_t j = 0; j < z.size(); ++j)
    zs[j] = (z[j] - p.input_mean[j]) / p.input_scale[j];
  double out = p.b_out;
  for (size_t h = 0; h < p.w_hidden.size(); ++h) {
    double a = p.b_hidden[h];
    for (size_t j = 0; j < zs.size(); ++j) a += p.w_hidden[h][j] * zs[j];
    out += p.w_out[h] * sigmoid(a);
  }
  return sigmoid(out);
}

}  // namespace

double TrainedModel::score_transformed(const std::vector<double>& z) const {
  if (static_cast<int>(z.size()) != pca.retained)
    throw ValidationError("score: expected " + std::to_string(pca.retained) +
                          " PCA dimensions, got " + std::to_string(z.size()));
  switch (kind) {
    case ClassifierKind::Knn:
      return score_knn(std::get<KnnParams>(params), z);
    case ClassifierKind::Lda: {
      const LdaParams& p = std::get<LdaParams>(params);
      double v = p.b;
      for (size_t j = 0; j < z.size(); ++j) v += p.w[j] * z[j];
      return sigmoid(v);
    }
    case ClassifierKind::Rf: {
      const RfParams& p = std::get<RfParams>(params);
      long votes = 0;
      for (const auto& tree : p.forest) votes += tree_vote(tree, z);
      return static_cast<double>(votes) / static_cast<double>(p.forest.size());
    }
    case ClassifierKind::Mlp:
      return score_mlp(std::get<MlpParams>(params), z);
  }
  return 0.0;
}

double TrainedModel::score(const std::vector<double>& raw_features) const {
  return score_transformed(pca.transform(raw_features));
}

TrainedModel train_knn(const BinaryLabeledSet& set, const Hyperparams& hp, PCAModel pca) {
  set.validate();
  if (hp.knn_k < 1) throw ConfigError("knn_k must be >= 1");
  TrainedModel model;
  model.kind = ClassifierKind::Knn;
  model.pca = std::move(pca);
  model.hp = hp;
  model.subject_id = set.genuine_subject;
  model.params = KnnParams{hp.knn_k, set.x, set.y};
  return model;
}

TrainedModel train_lda(const BinaryLabeledSet& set, const Hyperparams& hp, PCAModel pca) {
  set.validate();
  const size_t d = set.dim();
  const size_t n = set.x.size();

  Eigen::VectorXd mu0 = Eigen::VectorXd::Zero(static_cast<long>(d));
  Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(static_cast<long>(d));
  long n0 = 0, n1 = 0;
  for (size_t i = 0; i < n; ++i) {
    Eigen::Map<const Eigen::VectorXd> row(set.x[i].data(), static_cast<long>(d));
    if (set.y[i] == 1) {
      mu1 += row;
      ++n1;
    } else {
      mu0 += row;
      ++n0;
    }
  }
  mu0 /= static_cast<double>(n0);
  mu1 /= static_cast<double>(n1);

  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(static_cast<long>(d), static_cast<long>(d));
  for (size_t i = 0; i < n; ++i) {
    Eigen::Map<const Eigen::VectorXd> row(set.x[i].data(), static_cast<long>(d));
    const Eigen::VectorXd c = row - (set.y[i] == 1 ? mu1 : mu0);
    pooled += c * c.transpose();
  }
  pooled /= static_cast<double>(n0 + n1 - 2);

  // Ridge fallback for singular pooled covariance (likely with few
  // genuine rows): lambda = factor * trace / d.
  Eigen::LDLT<Eigen::MatrixXd> ldlt(pooled);
  Eigen::VectorXd diff = mu1 - mu0;
  Eigen::VectorXd w;
  bool usable = ldlt.info() == Eigen::Success && ldlt.isPositive();
  if (usable) {
    w = ldlt.solve(diff);
    usable = ((pooled * w - diff).norm() <= 1e-8 * (diff.norm() + 1.0));
  }
  if (!usable) {
    const double lambda =
        hp.lda_ridge_factor * pooled.trace() / static_cast<double>(d) +
        std::numeric_limits<double>::min();
    Eigen::MatrixXd ridged =
        pooled + lambda * Eigen::MatrixXd::Identity(static_cast<long>(d),
                                                    static_cast<long>(d));
    w = ridged.ldlt().solve(diff);
  }

  const double b = -0.5 * (mu0 + mu1).dot(w) +
                   std::log(static_cast<double>(n1) / static_cast<double>(n0));

  TrainedModel model;
  model.kind = ClassifierKind::Lda;
  model.pca = std::move(pca);
  model.hp = hp;
  model.subject_id = set.genuine_subject;
  LdaParams p;
  p.w.assign(w.data(), w.data() + w.size());
  p.b = b;
  model.params = std::move(p);
  return model;
}

TrainedModel train_rf(const BinaryLabeledSet& set, const Hyperparams& hp,
                      std::uint64_t seed, PCAModel pca) {
  set.validate();
  if (hp.rf_trees < 1) throw ConfigError("rf_trees must be >= 1");
  const size_t n = set.x.size();
  const int dim = static_cast<int>(set.dim());
  const int n_try = std::min(
      dim, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(dim)))));

  RfParams forest;
  forest.forest.reserve(static_cast<size_t>(hp.rf_trees));
  for (int t = 0; t < hp.rf_trees; ++t) {
    Rng rng(sub_seed(seed, "tree", static_cast<std::uint64_t>(t)));
    std::vector<int> rows(n);
    for (size_t i = 0; i < n; ++i)
      rows[i] = static_cast<int>(rng.below(n));  // bootstrap resample
    TreeBuilder builder{set.x, set.y, n_try, rng, {}};
    builder.build(rows);
    forest.forest.push_back(std::move(builder.nodes));
  }

  TrainedModel model;
  model.kind = ClassifierKind::Rf;
  model.pca = std::move(pca);
  model.hp = hp;
  model.seed = seed;
  model.subject_id = set.genuine_subject;
  model.params = std::move(forest);
  return model;
}

TrainedModel train_mlp(const BinaryLabeledSet& set, const Hyperparams& hp,
                       std::uint64_t seed, PCAModel pca) {
  set.validate();
  if (hp.mlp_hidden < 1 || hp.mlp_epochs < 1 || hp.mlp_batch < 1)
    throw ConfigError("invalid MLP hyperparameters");
  const size_t n = set.x.size();
  const size_t d = set.dim();
  const size_t h = static_cast<size_t>(hp.mlp_hidden);

  MlpParams p;
  p.input_mean.assign(d, 0.0);
  p.input_scale.assign(d, 1.0);
  for (size_t j = 0; j < d; ++j) {
    double m = 0.0;
    for (size_t i = 0; i < n; ++i) m += set.x[i][j];
    m /= static_cast<double>(n);
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) ss += (set.x[i][j] - m) * (set.x[i][j] - m);
    const double sd = std::sqrt(ss / static_cast<double>(n > 1 ? n - 1 : 1));
    p.input_mean[j] = m;
    p.input_scale[j] = sd > 0.0 ? sd : 1.0;
  }

  std::vector<std::vector<double>> xs(n, std::vector<double>(d));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < d; ++j)
      xs[i][j] = (set.x[i][j] - p.input_mean[j]) / p.input_scale[j];

  Rng rng(sub_seed(seed, "mlp"));
  p.w_hidden.assign(h, std::vector<double>(d));
  p.b_hidden.assign(h, 0.0);
  p.w_out.assign(h, 0.0);
  for (auto& row : p.w_hidden)
    for (double& w : row) w = rng.uniform(-0.5, 0.5);
  for (double& w : p.b_hidden) w = rng.uniform(-0.5, 0.5);
  for (double& w : p.w_out) w = rng.uniform(-0.5, 0.5);
  p.b_out = rng.uniform(-0.5, 0.5);

  // momentum buffers
  std::vector<std::vector<double>> vw1(h, std::vector<double>(d, 0.0));
  std::vector<double> vb1(h, 0.0), vw2(h, 0.0);
  double vb2 = 0.0;

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::vector<double> hidden(h), delta_hidden(h);

  for (int epoch = 0; epoch < hp.mlp_epochs; ++epoch) {
    rng.shuffle(order);
    for (size_t start = 0; start < n; start += static_cast<size_t>(hp.mlp_batch)) {
      const size_t end = std::min(n, start + static_cast<size_t>(hp.mlp_batch));
      const double inv = 1.0 / static_cast<double>(end - start);

      std::vector<std::vector<double>> gw1(h, std::vector<double>(d, 0.0));
      std::vector<double> gb1(h, 0.0), gw2(h, 0.0);
      double gb2 = 0.0;

      for (size_t bi = start; bi < end; ++bi) {
        const std::vector<double>& row = xs[order[bi]];
        const double target = static_cast<double>(set.y[order[bi]]);

        double out_in = p.b_out;
        for (size_t u = 0; u < h; ++u) {
          double a = p.b_hidden[u];
          for (size_t j = 0; j < d; ++j) a += p.w_hidden[u][j] * row[j];
          hidden[u] = sigmoid(a);
          out_in += p.w_out[u] * hidden[u];
        }
        const double out = sigmoid(out_in);

        // squared-error loss: delta = (out - y) * out'(1-out')
        const double delta_out = (out - target) * out * (1.0 - out);
        for (size_t u = 0; u < h; ++u) {
          delta_hidden[u] = delta_out * p.w_out[u] * hidden[u] * (1.0 - hidden[u]);
          gw2[u] += delta_out * hidden[u];
          gb1[u] += delta_hidden[u];
          for (size_t j = 0; j < d; ++j) gw1[u][j] += delta_hidden[u] * row[j];
        }
        gb2 += delta_out;
      }

      for (size_t u = 0; u < h; ++u) {
        vw2[u] = hp.mlp_momentum * vw2[u] - hp.mlp_learning_rate * gw2[u] * inv;
        p.w_out[u] += vw2[u];
        vb1[u] = hp.mlp_momentum * vb1[u] - hp.mlp_learning_rate * gb1[u] * inv;
        p.b_hidden[u] += vb1[u];
        for (size_t j = 0; j < d; ++j) {
          vw1[u][j] = hp.mlp_momentum * vw1[u][j] - hp.mlp_learning_rate * gw1[u][j] * inv;
          p.w_hidden[u][j] += vw1[u][j];
        }
      }
      vb2 = hp.mlp_momentum * vb2 - hp.mlp_learning_rate * gb2 * inv;
      p.b_out += vb2;
    }
  }

  TrainedModel model;
  model.kind = ClassifierKind::Mlp;
  model.pca = std::move(pca);
  model.hp = hp;
  model.seed = seed;
  model.subject_id = set.genuine_subject;
  model.params = std::move(p);
  return model;
}

TrainedModel train_classifier(ClassifierKind kind, const BinaryLabeledSet& set,
                              const Hyperparams& hp, std::uint64_t seed, PCAModel pca) {
  switch (kind) {
    case ClassifierKind::Knn: return train_knn(set, hp, std::move(pca));
    case ClassifierKind::Lda: return train_lda(set, hp, std::move(pca));
    case ClassifierKind::Rf: return train_rf(set, hp, seed, std::move(pca));
    case ClassifierKind::Mlp: return train_mlp(set, hp, seed, std::move(pca));
  }
  throw ConfigError("unknown classifier kind");
}

}  // namespace hrvauth::modeling
