#include <fstream>
#include <string>

#include "agan/errors.hpp"
#include "agan/nn.hpp"
#include "json.hpp"

namespace agan {

namespace {

constexpr const char* kMagic = "AGANCKPT1";

nlohmann::json layer_to_json(const DenseLayer& layer) {
  return {
      {"out", layer.weights.rows},
      {"in", layer.weights.cols},
      {"activation", static_cast<int>(layer.activation)},
      {"weights", layer.weights.data},
      {"biases", layer.biases},
  };
}

nlohmann::json moments_to_json(const LayerGradients& g) {
  return {{"weights", g.weights.data}, {"biases", g.biases}};
}

std::vector<double> doubles_from(const nlohmann::json& j) {
  return j.get<std::vector<double>>();
}

}  // namespace

void save_checkpoint(const std::string& path, const MlpNetwork& net,
                     const AdamState* optimizer) {
  nlohmann::json doc;
  doc["layers"] = nlohmann::json::array();
  for (const DenseLayer& layer : net.layers()) {
    doc["layers"].push_back(layer_to_json(layer));
  }
  if (optimizer != nullptr) {
    auto& opt = *const_cast<AdamState*>(optimizer);
    nlohmann::json o;
    o["step_count"] = optimizer->step_count();
    o["learning_rate"] = optimizer->config().learning_rate;
    o["beta1"] = optimizer->config().beta1;
    o["beta2"] = optimizer->config().beta2;
    o["epsilon"] = optimizer->config().epsilon;
    o["m"] = nlohmann::json::array();
    o["v"] = nlohmann::json::array();
    for (const LayerGradients& g : opt.first_moments()) {
      o["m"].push_back(moments_to_json(g));
    }
    for (const LayerGradients& g : opt.second_moments()) {
      o["v"].push_back(moments_to_json(g));
    }
    doc["optimizer"] = o;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw FormatError("cannot open checkpoint for writing: " + path);
  }
  out << kMagic << '\n' << doc.dump() << '\n';
}

void load_checkpoint(const std::string& path, MlpNetwork& net,
                     AdamState* optimizer) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FormatError("cannot open checkpoint: " + path);
  }
  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic) {
    throw FormatError("bad checkpoint magic string");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception&) {
    throw FormatError("truncated or unparseable checkpoint payload");
  }

  try {
    std::vector<DenseLayer> layers;
    for (const auto& jl : doc.at("layers")) {
      DenseLayer layer;
      layer.weights = Matrix(jl.at("out").get<std::size_t>(),
                             jl.at("in").get<std::size_t>());
      layer.weights.data = doubles_from(jl.at("weights"));
      layer.biases = doubles_from(jl.at("biases"));
      layer.activation = static_cast<Activation>(jl.at("activation").get<int>());
      if (layer.weights.data.size() != layer.weights.rows * layer.weights.cols ||
          layer.biases.size() != layer.weights.rows) {
        throw FormatError("checkpoint layer shapes are inconsistent");
      }
      layers.push_back(std::move(layer));
    }
    net.layers() = std::move(layers);

    if (optimizer != nullptr && doc.contains("optimizer")) {
      const auto& o = doc.at("optimizer");
      AdamConfig cfg;
      cfg.learning_rate = o.at("learning_rate").get<double>();
      cfg.beta1 = o.at("beta1").get<double>();
      cfg.beta2 = o.at("beta2").get<double>();
      cfg.epsilon = o.at("epsilon").get<double>();
      *optimizer = AdamState(net, cfg);
      optimizer->set_step_count(o.at("step_count").get<std::int64_t>());
      for (std::size_t li = 0; li < optimizer->first_moments().size(); ++li) {
        optimizer->first_moments()[li].weights.data =
            doubles_from(o.at("m").at(li).at("weights"));
        optimizer->first_moments()[li].biases =
            doubles_from(o.at("m").at(li).at("biases"));
        optimizer->second_moments()[li].weights.data =
            doubles_from(o.at("v").at(li).at("weights"));
        optimizer->second_moments()[li].biases =
            doubles_from(o.at("v").at(li).at("biases"));
      }
    }
  } catch (const nlohmann::json::exception&) {
    throw FormatError("checkpoint payload is missing required fields");
  }
}

}  // namespace agan
