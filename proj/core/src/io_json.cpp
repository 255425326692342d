#include "msmd/io_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace msmd {

using nlohmann::json;

namespace {

json innovation_to_json(const InnovationSpec& s) {
  json j{{"law", to_string(s.law)}};
  if (s.law == InnovationLaw::weibull) j["kappa"] = s.kappa;
  return j;
}

InnovationSpec innovation_from_json(const json& j) {
  InnovationSpec s;
  s.law = innovation_law_from_string(j.at("law").get<std::string>());
  if (s.law == InnovationLaw::weibull) s.kappa = j.at("kappa").get<double>();
  return s;
}

json multiplier_to_json(const MultiplierSpec& s) {
  json j{{"law", to_string(s.law)}};
  if (s.law == MultiplierLaw::binomial)
    j["m0"] = s.m0;
  else
    j["lambda"] = s.lambda;
  return j;
}

MultiplierSpec multiplier_from_json(const json& j) {
  MultiplierSpec s;
  s.law = multiplier_law_from_string(j.at("law").get<std::string>());
  if (s.law == MultiplierLaw::binomial)
    s.m0 = j.at("m0").get<double>();
  else
    s.lambda = j.at("lambda").get<double>();
  return s;
}

}  // namespace

std::string duration_model_to_json(const DurationModel& m) {
  json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MsmdParams>) {
          j["model"] = "msmd";
          j["k"] = p.k;
          j["b"] = p.b;
          j["gamma_k"] = p.gamma_k;
          j["psi_bar"] = p.psi_bar;
          j["multiplier"] = multiplier_to_json(p.multiplier);
          j["innovation"] = innovation_to_json(p.innovation);
        } else if constexpr (std::is_same_v<T, AcdParams>) {
          j["model"] = "acd";
          j["omega"] = p.omega;
          j["alpha"] = p.alpha;
          j["beta"] = p.beta;
          j["innovation"] = innovation_to_json(p.innovation);
        } else if constexpr (std::is_same_v<T, LmsdParams>) {
          j["model"] = "lmsd";
          j["omega"] = p.omega;
          j["beta"] = p.beta;
          j["d"] = p.d;
          j["sigma_u2"] = p.sigma_u2;
          j["innovation"] = innovation_to_json(p.innovation);
        } else {
          j["model"] = "exponential";
          j["mean"] = p.mean;
        }
      },
      m);
  return j.dump(2) + "\n";
}

DurationModel duration_model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("model JSON parse error: ") + e.what());
  }
  const std::string model = j.at("model").get<std::string>();
  if (model == "msmd") {
    MsmdParams p;
    p.k = j.at("k").get<int>();
    p.b = j.at("b").get<double>();
    p.gamma_k = j.at("gamma_k").get<double>();
    p.psi_bar = j.value("psi_bar", 1.0);
    p.multiplier = multiplier_from_json(j.at("multiplier"));
    if (j.contains("innovation")) p.innovation = innovation_from_json(j.at("innovation"));
    p.validate();
    return p;
  }
  if (model == "acd") {
    AcdParams p;
    p.omega = j.at("omega").get<double>();
    p.alpha = j.at("alpha").get<std::vector<double>>();
    p.beta = j.at("beta").get<std::vector<double>>();
    if (j.contains("innovation")) p.innovation = innovation_from_json(j.at("innovation"));
    p.validate();
    return p;
  }
  if (model == "lmsd") {
    LmsdParams p;
    p.omega = j.at("omega").get<double>();
    p.beta = j.at("beta").get<double>();
    p.d = j.at("d").get<double>();
    p.sigma_u2 = j.at("sigma_u2").get<double>();
    if (j.contains("innovation")) p.innovation = innovation_from_json(j.at("innovation"));
    p.validate();
    return p;
  }
  if (model == "exponential") {
    IidExponential p;
    p.mean = j.value("mean", 1.0);
    if (!(p.mean > 0.0)) throw std::runtime_error("exponential model: mean must be positive");
    return p;
  }
  throw std::runtime_error("unknown model tag: " + model);
}

DurationModel load_duration_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return duration_model_from_json(ss.str());
}

void save_duration_model(const std::string& path, const DurationModel& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << duration_model_to_json(m);
}

}  // namespace msmd
