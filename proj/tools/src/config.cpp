#include "kleq_cli/config.hpp"

#include <fstream>

#include "kleq/errors.hpp"

namespace kleq::cli {

namespace {

template <class T>
T get_as(const nlohmann::json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

void merge_json(ExperimentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) {
    throw UsageError("config file must hold a JSON object");
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "attack" || key == "name") {
      cfg.attack = get_as<std::string>(v, key);
    } else if (key == "kappa") {
      cfg.kappa = get_as<unsigned>(v, key);
    } else if (key == "n") {
      cfg.n = get_as<unsigned>(v, key);
    } else if (key == "scheme") {
      cfg.scheme = get_as<std::string>(v, key);
    } else if (key == "middle") {
      cfg.middle = get_as<std::string>(v, key);
    } else if (key == "share_ciphers") {
      cfg.share_ciphers = get_as<bool>(v, key);
    } else if (key == "cipher_id") {
      cfg.cipher_id = get_as<std::uint64_t>(v, key);
    } else if (key == "r") {
      cfg.r = v.is_array() ? get_as<std::vector<std::uint64_t>>(v, key)
                           : std::vector<std::uint64_t>{get_as<std::uint64_t>(v, key)};
    } else if (key == "t") {
      cfg.t = get_as<unsigned>(v, key);
    } else if (key == "backend") {
      cfg.backend = get_as<std::string>(v, key);
    } else if (key == "model") {
      cfg.model = get_as<std::string>(v, key);
    } else if (key == "trials") {
      cfg.trials = get_as<std::uint64_t>(v, key);
    } else if (key == "seed") {
      cfg.seed = get_as<std::uint64_t>(v, key);
    } else if (key == "out") {
      cfg.out = get_as<std::string>(v, key);
    } else if (key == "timing") {
      cfg.timing = get_as<bool>(v, key);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot read config file " + path.string());
  }
  ExperimentConfig cfg;
  try {
    merge_json(cfg, nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return cfg;
}

std::string attack_id_list() {
  std::string s;
  for (const auto id : kAllAttacks) {
    if (!s.empty()) {
      s += ", ";
    }
    s += attack_name(id);
  }
  return s;
}

RunConfig to_run_config(const ExperimentConfig& cfg, std::optional<std::uint64_t> r, std::uint64_t seed) {
  RunConfig rc;
  const auto id = parse_attack(cfg.attack);
  if (!id) {
    throw UsageError("unknown attack id '" + cfg.attack + "'; valid ids: " + attack_id_list());
  }
  rc.attack = *id;
  rc.kappa = cfg.kappa;
  rc.n = cfg.n;
  if (cfg.scheme) {
    rc.scheme = parse_scheme(*cfg.scheme);
    if (!rc.scheme) {
      throw UsageError("unknown scheme '" + *cfg.scheme + "'; valid: 2kte, 2kte-ede, g2kte, 3xce, 3xce-tilde, karc, ele");
    }
  }
  if (cfg.middle) {
    rc.middle = parse_middle_kind(*cfg.middle);
    if (!rc.middle) {
      throw UsageError("unknown middle layer '" + *cfg.middle +
                       "'; valid: xor, reflection-affine, random-involution, p-twisted-involution");
    }
  }
  rc.share_ciphers = cfg.share_ciphers;
  rc.cipher_id = cfg.cipher_id;
  rc.r = r;
  rc.t = cfg.t;
  const auto backend = parse_backend(cfg.backend);
  if (!backend) {
    throw UsageError("unknown backend '" + cfg.backend + "'; valid: statevector, idealized");
  }
  rc.backend = *backend;
  if (cfg.model) {
    if (*cfg.model == "Q1" || *cfg.model == "q1") {
      rc.model = AccessModel::Q1;
    } else if (*cfg.model == "Q2" || *cfg.model == "q2") {
      rc.model = AccessModel::Q2;
    } else {
      throw UsageError("unknown model '" + *cfg.model + "'; valid: Q1, Q2");
    }
  }
  rc.seed = seed;
  try {
    validate(rc);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return rc;
}

}  // namespace kleq::cli
