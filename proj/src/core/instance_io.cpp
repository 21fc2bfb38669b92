#include <fstream>

#include <json.hpp>

#include "core/instance.hpp"
#include "core/matrix_market.hpp"

namespace l1p {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json meta_to_json(const BpInstance& inst) {
  json j;
  j["label"] = inst.meta.label;
  j["seed"] = inst.meta.seed ? json(*inst.meta.seed) : json(nullptr);
  j["m"] = inst.rows();
  j["n"] = inst.cols();
  j["s"] = inst.meta.sparsity ? json(*inst.meta.sparsity) : json(nullptr);
  j["dynrange"] =
      inst.meta.dynamic_range ? json(*inst.meta.dynamic_range) : json(nullptr);
  j["erc_value"] =
      inst.meta.erc_value ? json(*inst.meta.erc_value) : json(nullptr);
  return j;
}

InstanceMeta meta_from_json(const json& j, const fs::path& path) {
  InstanceMeta meta;
  try {
    if (j.contains("label") && j["label"].is_string()) {
      meta.label = j["label"].get<std::string>();
    }
    if (j.contains("seed") && !j["seed"].is_null()) {
      meta.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("s") && !j["s"].is_null()) {
      meta.sparsity = j["s"].get<std::size_t>();
    }
    if (j.contains("dynrange") && !j["dynrange"].is_null()) {
      meta.dynamic_range = j["dynrange"].get<double>();
    }
    if (j.contains("erc_value") && !j["erc_value"].is_null()) {
      meta.erc_value = j["erc_value"].get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
  return meta;
}

}  // namespace

void write_instance(const BpInstance& instance, const fs::path& dir) {
  instance.validate();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::Io,
                "cannot create " + dir.string() + ": " + ec.message());
  }
  mm::write_matrix(*instance.a, dir / "A.mtx");
  mm::write_vector(instance.b, dir / "b.mtx");
  if (instance.planted) {
    mm::write_vector(*instance.planted, dir / "xtrue.mtx");
  } else {
    fs::remove(dir / "xtrue.mtx", ec);
  }
  std::ofstream out(dir / "meta.json");
  if (!out) throw Error(ErrorCode::Io, "cannot write meta.json in " + dir.string());
  out << meta_to_json(instance).dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "failed writing meta.json");
}

BpInstance read_instance(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::Io, "instance directory not found: " + dir.string());
  }
  Matrix a = mm::read_matrix(dir / "A.mtx");
  Vector b = mm::read_vector(dir / "b.mtx");
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                (dir / "b.mtx").string() + ": length " +
                    std::to_string(b.size()) + " does not match A with " +
                    std::to_string(a.rows()) + " rows");
  }
  std::optional<Vector> planted;
  if (fs::exists(dir / "xtrue.mtx")) planted = mm::read_vector(dir / "xtrue.mtx");

  InstanceMeta meta;
  const fs::path meta_path = dir / "meta.json";
  if (fs::exists(meta_path)) {
    std::ifstream in(meta_path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::Parse, meta_path.string() + ": not a JSON object");
    }
    meta = meta_from_json(j, meta_path);
  }
  if (meta.label.empty()) meta.label = dir.filename().string();
  return make_instance(std::move(a), std::move(b), std::move(planted),
                       std::move(meta));
}

}  // namespace l1p
