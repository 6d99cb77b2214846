#include "aoi_lab/io.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace aoi_lab {
namespace {

using nlohmann::json;

// Minimal SHA-1 (FIPS 180-1), enough for content addressing of outputs.
class Sha1 {
 public:
  void update(const unsigned char* data, std::size_t len) {
    total_bits_ += static_cast<std::uint64_t>(len) * 8;
    while (len > 0) {
      std::size_t take = std::min<std::size_t>(64 - buffer_len_, len);
      std::copy(data, data + take, buffer_.begin() + buffer_len_);
      buffer_len_ += take;
      data += take;
      len -= take;
      if (buffer_len_ == 64) {
        process_block();
        buffer_len_ = 0;
      }
    }
  }

  std::string hex_digest() {
    std::uint64_t bits = total_bits_;
    unsigned char pad = 0x80;
    update(&pad, 1);
    unsigned char zero = 0x00;
    while (buffer_len_ != 56) update(&zero, 1);
    std::array<unsigned char, 8> len_bytes;
    for (int i = 7; i >= 0; --i) {
      len_bytes[i] = static_cast<unsigned char>(bits & 0xff);
      bits >>= 8;
    }
    update(len_bytes.data(), 8);

    char out[41];
    for (int i = 0; i < 5; ++i) {
      std::snprintf(out + i * 8, 9, "%08x", h_[i]);
    }
    return std::string(out, 40);
  }

 private:
  static std::uint32_t rotl(std::uint32_t x, int n) { return (x << n) | (x >> (32 - n)); }

  void process_block() {
    std::uint32_t w[80];
    for (int i = 0; i < 16; ++i) {
      w[i] = (std::uint32_t(buffer_[i * 4]) << 24) | (std::uint32_t(buffer_[i * 4 + 1]) << 16) |
             (std::uint32_t(buffer_[i * 4 + 2]) << 8) | std::uint32_t(buffer_[i * 4 + 3]);
    }
    for (int i = 16; i < 80; ++i) {
      w[i] = rotl(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    }
    std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3], e = h_[4];
    for (int i = 0; i < 80; ++i) {
      std::uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5a827999;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ed9eba1;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8f1bbcdc;
      } else {
        f = b ^ c ^ d;
        k = 0xca62c1d6;
      }
      std::uint32_t temp = rotl(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rotl(b, 30);
      b = a;
      a = temp;
    }
    h_[0] += a;
    h_[1] += b;
    h_[2] += c;
    h_[3] += d;
    h_[4] += e;
  }

  std::array<unsigned char, 64> buffer_{};
  std::size_t buffer_len_ = 0;
  std::uint64_t total_bits_ = 0;
  std::uint32_t h_[5] = {0x67452301, 0xefcdab89, 0x98badcfe, 0x10325476, 0xc3d2e1f0};
};

const char* coupling_name(CouplingMode mode) {
  return mode == CouplingMode::kCoupled ? "coupled" : "independent";
}

const char* init_name(InitAgeMode mode) {
  return mode == InitAgeMode::kGeometricGenie ? "geometric" : "unit";
}

CouplingMode parse_coupling(const std::string& name) {
  if (name == "coupled") return CouplingMode::kCoupled;
  if (name == "independent") return CouplingMode::kIndependent;
  throw std::invalid_argument("coupling must be 'coupled' or 'independent', got '" + name + "'");
}

InitAgeMode parse_init(const std::string& name) {
  if (name == "geometric") return InitAgeMode::kGeometricGenie;
  if (name == "unit") return InitAgeMode::kUnit;
  throw std::invalid_argument("init mode must be 'geometric' or 'unit', got '" + name + "'");
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string regret_curves_csv(const std::map<std::string, RegretCurve>& curves) {
  std::ostringstream out;
  out << "policy,t,mean_regret,stderr,replications\n";
  for (const auto& [name, curve] : curves) {
    for (std::size_t p = 0; p < curve.times.size(); ++p) {
      out << name << ',' << curve.times[p] << ',' << format_double(curve.mean_regret[p]) << ','
          << format_double(curve.stderr_regret[p]) << ',' << curve.replications << '\n';
    }
  }
  return out.str();
}

std::string regret_table_csv(const std::vector<RegretTableEntry>& entries) {
  std::ostringstream out;
  out << "setting,policy,mean_regret,stderr,replications\n";
  for (const auto& e : entries) {
    out << e.setting_id << ',' << e.policy << ',' << format_double(e.mean_regret) << ','
        << format_double(e.stderr_regret) << ',' << e.replications << '\n';
  }
  return out.str();
}

std::string sha1_hex(std::string_view bytes) {
  Sha1 hash;
  hash.update(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
  return hash.hex_digest();
}

std::string git_blob_sha1(std::string_view content) {
  std::string framed = "blob " + std::to_string(content.size());
  framed.push_back('\0');
  framed.append(content);
  return sha1_hex(framed);
}

std::string config_json(const ExperimentConfig& config) {
  json j;
  j["setting_id"] = config.setting_id;
  j["mu"] = config.mu;
  j["horizon"] = config.horizon;
  j["replications"] = config.replications;
  j["seed"] = config.seed;
  j["policies"] = config.policies;
  j["coupling"] = coupling_name(config.coupling);
  j["init"] = init_name(config.init_mode);
  j["thr"] = config.thr;
  j["full_dump"] = config.full_dump;
  if (!config.record_times.empty()) j["record_times"] = config.record_times;
  if (!config.out_dir.empty()) j["out"] = config.out_dir;
  return j.dump(2);
}

std::string manifest_json(const ExperimentConfig& config,
                          const std::map<std::string, OutputFileInfo>& outputs) {
  json j;
  j["config"] = json::parse(config_json(config));
  j["seed"] = config.seed;
  // Analytic genie baseline, for cross-checking the path-wise estimate.
  double mu_star = config.instance().mu_star();
  j["analytic_genie"] = {{"expected_aoi", 1.0 / mu_star},
                         {"expected_cumulative_aoi",
                          static_cast<double>(config.horizon) / mu_star}};
  try {
    BoundReport report = eval_bounds(config.instance(), config.horizon, BoundParams{});
    j["bound_report"] = json::parse(bound_report_json(report));
  } catch (const std::exception& e) {
    j["bound_report"] = nullptr;
    j["bounds_error"] = e.what();
  }
  json files = json::object();
  for (const auto& [name, info] : outputs) {
    files[name] = {{"git_blob_sha1", info.sha1}, {"bytes", info.bytes}};
  }
  j["outputs"] = files;
  return j.dump(2);
}

ExperimentConfig load_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config document must be a JSON object");

  ExperimentConfig config;
  if (j.contains("setting")) {
    config = builtin_setting(j.at("setting").get<std::string>());
  } else if (!j.contains("mu")) {
    throw std::invalid_argument("config needs either 'setting' or a 'mu' array");
  }
  try {
    if (j.contains("mu")) config.mu = j.at("mu").get<std::vector<double>>();
    if (j.contains("setting_id")) config.setting_id = j.at("setting_id").get<std::string>();
    if (config.setting_id.empty()) config.setting_id = "custom";
    if (j.contains("horizon")) config.horizon = j.at("horizon").get<std::int64_t>();
    if (j.contains("replications")) config.replications = j.at("replications").get<int>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("policies")) {
      config.policies = j.at("policies").get<std::vector<std::string>>();
    }
    if (config.policies.empty()) config.policies = {"ucb", "ts"};
    if (j.contains("coupling")) config.coupling = parse_coupling(j.at("coupling").get<std::string>());
    if (j.contains("init")) config.init_mode = parse_init(j.at("init").get<std::string>());
    if (j.contains("thr")) config.thr = j.at("thr").get<std::int64_t>();
    if (j.contains("full_dump")) config.full_dump = j.at("full_dump").get<bool>();
    if (j.contains("record_times")) {
      config.record_times = j.at("record_times").get<std::vector<std::int64_t>>();
    }
    if (j.contains("out")) config.out_dir = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  return load_config_json(read_file(path));
}

void write_file(const std::string& path, std::string_view content, bool force) {
  if (!force && std::filesystem::exists(path)) throw OverwriteRefused(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace aoi_lab
