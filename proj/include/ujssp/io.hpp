#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ujssp/core.hpp"
#include "ujssp/instances.hpp"

namespace ujssp {

using AnyInstance = std::variant<Instance, HpInstance>;

// Instance JSON: {"n", "precision": "f64" | {"bits": N}, "jobs": [{"id",
// "pi", "c", "r"}]}. High-precision values are decimal strings.
std::string instance_to_json(const Instance& instance);
std::string instance_to_json(const HpInstance& instance);
// ParseError names the offending field as a JSON pointer, or the line for
// malformed text.
AnyInstance instance_from_json(std::string_view text);

// {"type": "I" | "II", "a": [...], "planted_split": [1-based positions]}
std::string ppp_to_json(const PppInstance& ppp);
PppInstance ppp_from_json(std::string_view text);

// True for text that looks like a PPP file (has an "a" array).
bool is_ppp_json(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

void write_instance(const Instance& instance, const std::filesystem::path& path);
void write_instance(const HpInstance& instance, const std::filesystem::path& path);
AnyInstance read_instance(const std::filesystem::path& path);

void write_ppp(const PppInstance& ppp, const std::filesystem::path& path);
PppInstance read_ppp(const std::filesystem::path& path);

struct ManifestEntry {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string scheme;  // i..iv, or I/II for PPP
  std::string path;    // relative to the manifest's directory
};

// CSV with header `seed,n,scheme,path`.
std::string manifest_to_csv(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> manifest_from_csv(std::string_view text);

}  // namespace ujssp
