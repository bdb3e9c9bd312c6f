#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "f2dyn/sscurve.hpp"

namespace f2dyn {

/// Identifies a curve over a specific field representation.
struct CacheKey {
  Word modulus;
  int degree;
  Word a1;
  Word a2;

  explicit CacheKey(const Curve& curve);

  /// FNV-1a over the key fields, 16 hex digits.
  std::string digest() const;
  std::string filename() const { return "group-" + digest() + ".json"; }

  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

/// On-disk store of group structures, one JSON document per curve.
///
/// Entries are written with write-then-rename, so readers never observe a
/// partial file. Anything that fails to parse or validate is treated as a
/// miss and reported in warnings().
class GroupCache {
 public:
  explicit GroupCache(std::filesystem::path dir);

  std::optional<GroupStructure> load(const Curve& curve);
  /// Returns false (with a warning) if the entry could not be written.
  bool store(const Curve& curve, const GroupStructure& gs);
  /// load(), falling back to group_structure() and store().
  GroupStructure get(const Curve& curve, int jobs = 1);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> warnings_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace f2dyn
