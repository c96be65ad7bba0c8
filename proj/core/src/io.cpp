#include "spectral_reach/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectral_reach/error.hpp"

namespace spectral_reach {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot rename onto '" + path.string() + "': " + ec.message());
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::json doc;
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;
  doc["argv"] = argv;
  doc["config"] = nlohmann::json::parse(config_json);
  doc["seeds"] = seeds;
  doc["inputs"] = nlohmann::json::array();
  for (const auto& in : inputs) doc["inputs"].push_back({{"name", in.name}, {"fnv1a", in.fnv1a}});
  doc["outputs"] = nlohmann::json::array();
  for (const auto& out : outputs) doc["outputs"].push_back({{"name", out.name}, {"fnv1a", out.fnv1a}});
  doc["exit_code"] = exit_code;
  return doc.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    RunManifest m;
    m.command = doc.at("command").get<std::string>();
    m.argv = doc.at("argv").get<std::vector<std::string>>();
    m.config_json = doc.value("config", nlohmann::json::object()).dump();
    m.seeds = doc.value("seeds", std::vector<std::uint64_t>{});
    for (const auto& in : doc.value("inputs", nlohmann::json::array())) {
      m.inputs.push_back({in.at("name").get<std::string>(), in.at("fnv1a").get<std::string>()});
    }
    for (const auto& out : doc.value("outputs", nlohmann::json::array())) {
      m.outputs.push_back({out.at("name").get<std::string>(), out.at("fnv1a").get<std::string>()});
    }
    m.exit_code = doc.value("exit_code", 0);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("manifest: ") + e.what());
  }
}

}  // namespace spectral_reach
