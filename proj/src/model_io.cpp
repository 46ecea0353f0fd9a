#include "hrvauth/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hrvauth::modeling {

using nlohmann::json;

namespace {

json pca_to_json(const PCAModel& p) {
  return json{{"mean", p.mean},
              {"scale", p.scale},
              {"components", p.components},
              {"explained_ratio", p.explained_ratio},
              {"retained", p.retained},
              {"input_dim", p.input_dim},
              {"constant_column_warning", p.constant_column_warning}};
}

PCAModel pca_from_json(const json& j) {
  PCAModel p;
  p.mean = j.at("mean").get<std::vector<double>>();
  p.scale = j.at("scale").get<std::vector<double>>();
  p.components = j.at("components").get<std::vector<std::vector<double>>>();
  p.explained_ratio = j.at("explained_ratio").get<std::vector<double>>();
  p.retained = j.at("retained").get<int>();
  p.input_dim = j.at("input_dim").get<int>();
  p.constant_column_warning = j.at("constant_column_warning").get<bool>();
  return p;
}

json hp_to_json(const Hyperparams& hp) {
  return json{{"knn_k", hp.knn_k},
              {"rf_trees", hp.rf_trees},
              {"mlp_hidden", hp.mlp_hidden},
              {"mlp_learning_rate", hp.mlp_learning_rate},
              {"mlp_momentum", hp.mlp_momentum},
              {"mlp_epochs", hp.mlp_epochs},
              {"mlp_batch", hp.mlp_batch},
              {"lda_ridge_factor", hp.lda_ridge_factor}};
}

Hyperparams hp_from_json(const json& j) {
  Hyperparams hp;
  hp.knn_k = j.at("knn_k").get<int>();
  hp.rf_trees = j.at("rf_trees").get<int>();
  hp.mlp_hidden = j.at("mlp_hidden").get<int>();
  hp.mlp_learning_rate = j.at("mlp_learning_rate").get<double>();
  hp.mlp_momentum = j.at("mlp_momentum").get<double>();
  hp.mlp_epochs = j.at("mlp_epochs").get<int>();
  hp.mlp_batch = j.at("mlp_batch").get<int>();
  hp.lda_ridge_factor = j.at("lda_ridge_factor").get<double>();
  return hp;
}

}  // namespace

std::string serialize_model(const TrainedModel& model) {
  json j;
  j["format"] = "hrvauth-model";
  j["version"] = kModelFormatVersion;
  j["classifier"] = classifier_name(model.kind);
  j["subject_id"] = model.subject_id;
  j["seed"] = model.seed;
  j["pca"] = pca_to_json(model.pca);
  j["hyperparameters"] = hp_to_json(model.hp);
  // JSON has no NaN literal; an unset enrollment threshold is null.
  if (std::isfinite(model.enroll_threshold))
    j["enroll_threshold"] = model.enroll_threshold;
  else
    j["enroll_threshold"] = nullptr;

  json params;
  switch (model.kind) {
    case ClassifierKind::Knn: {
      const auto& p = std::get<KnnParams>(model.params);
      params = json{{"k", p.k}, {"train_x", p.train_x}, {"train_y", p.train_y}};
      break;
    }
    case ClassifierKind::Lda: {
      const auto& p = std::get<LdaParams>(model.params);
      params = json{{"w", p.w}, {"b", p.b}};
      break;
    }
    case ClassifierKind::Rf: {
      const auto& p = std::get<RfParams>(model.params);
      json trees = json::array();
      for (const auto& tree : p.forest) {
        json nodes = json::array();
        for (const RfNode& nd : tree)
          nodes.push_back(json::array({nd.feature, nd.threshold, nd.left, nd.right, nd.vote}));
        trees.push_back(std::move(nodes));
      }
      params = json{{"forest", std::move(trees)}};
      break;
    }
    case ClassifierKind::Mlp: {
      const auto& p = std::get<MlpParams>(model.params);
      params = json{{"input_mean", p.input_mean}, {"input_scale", p.input_scale},
                    {"w_hidden", p.w_hidden},     {"b_hidden", p.b_hidden},
                    {"w_out", p.w_out},           {"b_out", p.b_out}};
      break;
    }
  }
  j["params"] = std::move(params);
  return j.dump(1);
}

TrainedModel deserialize_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (j.value("format", "") != "hrvauth-model")
    throw ParseError("not an hrvauth model file");
  const int version = j.value("version", -1);
  if (version != kModelFormatVersion)
    throw ParseError("model format version " + std::to_string(version) +
                     " not supported; this build reads version " +
                     std::to_string(kModelFormatVersion));

  TrainedModel model;
  model.kind = classifier_from_name(j.at("classifier").get<std::string>());
  model.subject_id = j.at("subject_id").get<std::string>();
  model.seed = j.at("seed").get<std::uint64_t>();
  model.pca = pca_from_json(j.at("pca"));
  model.hp = hp_from_json(j.at("hyperparameters"));
  if (j.at("enroll_threshold").is_null())
    model.enroll_threshold = std::numeric_limits<double>::quiet_NaN();
  else
    model.enroll_threshold = j.at("enroll_threshold").get<double>();

  const json& params = j.at("params");
  switch (model.kind) {
    case ClassifierKind::Knn: {
      KnnParams p;
      p.k = params.at("k").get<int>();
      p.train_x = params.at("train_x").get<std::vector<std::vector<double>>>();
      p.train_y = params.at("train_y").get<std::vector<int>>();
      model.params = std::move(p);
      break;
    }
    case ClassifierKind::Lda: {
      LdaParams p;
      p.w = params.at("w").get<std::vector<double>>();
      p.b = params.at("b").get<double>();
      model.params = std::move(p);
      break;
    }
    case ClassifierKind::Rf: {
      RfParams p;
      for (const json& tree : params.at("forest")) {
        std::vector<RfNode> nodes;
        nodes.reserve(tree.size());
        for (const json& nd : tree) {
          RfNode node;
          node.feature = nd.at(0).get<int>();
          node.threshold = nd.at(1).get<double>();
          node.left = nd.at(2).get<int>();
          node.right = nd.at(3).get<int>();
          node.vote = nd.at(4).get<int>();
          nodes.push_back(node);
        }
        p.forest.push_back(std::move(nodes));
      }
      model.params = std::move(p);
      break;
    }
    case ClassifierKind::Mlp: {
      MlpParams p;
      p.input_mean = params.at("input_mean").get<std::vector<double>>();
      p.input_scale = params.at("input_scale").get<std::vector<double>>();
      p.w_hidden = params.at("w_hidden").get<std::vector<std::vector<double>>>();
      p.b_hidden = params.at("b_hidden").get<std::vector<double>>();
      p.w_out = params.at("w_out").get<std::vector<double>>();
      p.b_out = params.at("b_out").get<double>();
      model.params = std::move(p);
      break;
    }
  }
  return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << serialize_model(model) << "\n";
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace hrvauth::modeling
