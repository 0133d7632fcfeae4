#include "corrgraph/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "corrgraph/error.hpp"

namespace corrgraph {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 init failed");
  }
  void update(const void* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw Error("SHA-256 update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1) throw Error("SHA-256 final failed");
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
      out.push_back(digits[md[i] >> 4]);
      out.push_back(digits[md[i] & 15]);
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

ManifestFile describe(const std::filesystem::path& path, const std::string& recorded) {
  return {recorded, sha256_file(path), std::filesystem::file_size(path)};
}

nlohmann::ordered_json files_json(const std::vector<ManifestFile>& files) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : files) arr.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return arr;
}

std::vector<ManifestFile> files_from(const nlohmann::ordered_json& arr) {
  std::vector<ManifestFile> out;
  for (const auto& f : arr)
    out.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>(), f.at("bytes").get<std::uintmax_t>()});
  return out;
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read for hashing: " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string sha256_bytes(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.push_back(describe(path, std::filesystem::absolute(path).lexically_normal().string()));
}

void RunManifest::add_artifact(const std::filesystem::path& out_dir, const std::filesystem::path& path) {
  artifacts.push_back(describe(path, std::filesystem::relative(path, out_dir).generic_string()));
}

nlohmann::ordered_json RunManifest::to_json() const {
  return {{"command", command},
          {"version", version},
          {"seed", seed},
          {"config", config},
          {"inputs", files_json(inputs)},
          {"artifacts", files_json(artifacts)},
          {"wall_clock_seconds", wall_clock_seconds},
          {"started_utc", started_utc}};
}

RunManifest RunManifest::from_json(const nlohmann::ordered_json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.config = j.at("config");
  m.inputs = files_from(j.at("inputs"));
  m.artifacts = files_from(j.at("artifacts"));
  m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  m.started_utc = j.at("started_utc").get<std::string>();
  return m;
}

void write_manifest_atomic(const std::filesystem::path& out_dir, const RunManifest& m) {
  const auto final_path = out_dir / "manifest.json";
  const auto tmp = out_dir / ".manifest.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << m.to_json().dump(2) << '\n';
    out.flush();
    if (!out) throw IoError("error while writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) throw IoError("cannot move manifest into place: " + ec.message());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest: " + path.string());
  try {
    return RunManifest::from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed manifest " + path.string() + ": " + e.what());
  }
}

std::vector<std::string> verify_manifest(const RunManifest& m, const std::filesystem::path& out_dir) {
  std::vector<std::string> bad;
  auto check = [&](const ManifestFile& f, const std::filesystem::path& p) {
    std::error_code ec;
    if (!std::filesystem::exists(p, ec) || sha256_file(p) != f.sha256) bad.push_back(f.path);
  };
  for (const auto& f : m.inputs) check(f, f.path);
  for (const auto& f : m.artifacts) check(f, out_dir / f.path);
  return bad;
}

std::string library_version() { return CORRGRAPH_VERSION; }

}  // namespace corrgraph
