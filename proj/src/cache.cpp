#include "f2dyn/cache.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include <json.hpp>

namespace f2dyn {

namespace {

constexpr int kFormatVersion = 1;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

std::string key_string(const CacheKey& k) {
  return to_hex(k.modulus) + "/" + std::to_string(k.degree) + "/" + to_hex(k.a1) + "/" + to_hex(k.a2);
}

std::string payload_string(const GroupStructure& gs) {
  return std::to_string(gs.order) + "," + std::to_string(gs.n1) + "," + std::to_string(gs.n2);
}

// everything a cached structure must satisfy before it is trusted
bool plausible(const GroupStructure& gs, int degree) {
  if (gs.n1 == 0 || gs.n2 == 0 || gs.n2 % gs.n1 != 0) return false;
  if (gs.n1 > gs.order / gs.n2 || gs.n1 * gs.n2 != gs.order || gs.order % 2 == 0) return false;
  const double q = std::ldexp(1.0, degree);
  return std::abs(static_cast<double>(gs.order) - (q + 1)) <= 2 * std::sqrt(q) + 1e-9;
}

}  // namespace

CacheKey::CacheKey(const Curve& curve)
    : modulus(curve.field()->modulus()), degree(curve.field()->degree()), a1(curve.a1().bits()), a2(curve.a2().bits()) {}

std::string CacheKey::digest() const { return hex16(fnv1a(key_string(*this))); }

GroupCache::GroupCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<GroupStructure> GroupCache::load(const Curve& curve) {
  const CacheKey key(curve);
  const auto path = dir_ / key.filename();
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    if (ec) warnings_.push_back("cache: cannot access " + dir_.string() + ": " + ec.message());
    ++misses_;
    return std::nullopt;
  }
  const auto reject = [&](const std::string& why) -> std::optional<GroupStructure> {
    warnings_.push_back("cache: ignoring " + path.string() + " (" + why + ")");
    ++misses_;
    return std::nullopt;
  };
  std::ifstream in(path);
  if (!in) return reject("unreadable");
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return reject("not valid JSON");
  try {
    if (doc.at("version").get<int>() != kFormatVersion) return reject("unknown version");
    if (doc.at("key").get<std::string>() != key_string(key)) return reject("key mismatch");
    GroupStructure gs{doc.at("order").get<std::uint64_t>(), doc.at("n1").get<std::uint64_t>(),
                      doc.at("n2").get<std::uint64_t>()};
    if (doc.at("checksum").get<std::string>() != hex16(fnv1a(key_string(key) + "|" + payload_string(gs)))) {
      return reject("checksum mismatch");
    }
    if (!plausible(gs, key.degree)) return reject("invalid group structure");
    ++hits_;
    return gs;
  } catch (const nlohmann::json::exception& e) {
    return reject(e.what());
  }
}

bool GroupCache::store(const Curve& curve, const GroupStructure& gs) {
  const CacheKey key(curve);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    warnings_.push_back("cache: cannot create " + dir_.string() + ": " + ec.message());
    return false;
  }
  nlohmann::ordered_json doc;
  doc["version"] = kFormatVersion;
  doc["key"] = key_string(key);
  doc["order"] = gs.order;
  doc["n1"] = gs.n1;
  doc["n2"] = gs.n2;
  doc["checksum"] = hex16(fnv1a(key_string(key) + "|" + payload_string(gs)));

  const auto path = dir_ / key.filename();
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << doc.dump(2) << '\n';
    if (!out.flush()) {
      warnings_.push_back("cache: cannot write " + tmp.string());
      std::filesystem::remove(tmp, ec);
      return false;
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    warnings_.push_back("cache: cannot rename into " + path.string() + ": " + ec.message());
    std::filesystem::remove(tmp, ec);
    return false;
  }
  return true;
}

GroupStructure GroupCache::get(const Curve& curve, int jobs) {
  if (auto gs = load(curve)) return *gs;
  GroupStructure gs = group_structure(curve, jobs);
  store(curve, gs);
  return gs;
}

}  // namespace f2dyn
