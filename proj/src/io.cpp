#include "ujssp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ujssp {

namespace {

using json = nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ParseError("line " + std::to_string(line) + ": malformed JSON");
  }
}

const json& field(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw ParseError(at + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(at + "/" + key + ": missing field");
  return *it;
}

std::int64_t integer(const json& v, const std::string& at) {
  if (!v.is_number_integer()) throw ParseError(at + ": expected an integer");
  return v.get<std::int64_t>();
}

template <class T>
T scalar(const json& v, const std::string& at) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) return ScalarTraits<double>::parse(v.get<std::string>());
      throw ParseError("expected a number");
    } else {
      if (!v.is_string()) throw ParseError("expected a decimal string");
      return ScalarTraits<HighPrecisionScalar>::parse(v.get<std::string>());
    }
  } catch (const ParseError& e) {
    throw ParseError(at + ": " + e.what());
  }
}

json origin_json(const Origin& origin) {
  switch (origin.kind) {
    case OriginKind::Uniform:
      return "uniform:" + origin.label;
    case OriginKind::Ppp:
      return "ppp:" + origin.label;
    case OriginKind::File:
      break;
  }
  return nullptr;
}

Origin parse_origin(const json& v) {
  if (!v.is_string()) throw ParseError("/origin: expected a string");
  const std::string s = v.get<std::string>();
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string label = colon == std::string::npos ? "" : s.substr(colon + 1);
  if (kind == "uniform") return {OriginKind::Uniform, label};
  if (kind == "ppp") return {OriginKind::Ppp, label};
  if (kind == "file") return {OriginKind::File, label};
  throw ParseError("/origin: unknown origin '" + s + "'");
}

template <class T>
std::string to_json(const BasicInstance<T>& instance) {
  json j;
  j["n"] = instance.size();
  if constexpr (std::is_same_v<T, double>) {
    j["precision"] = "f64";
  } else {
    j["precision"] = json{{"bits", instance.precision_bits()}};
  }
  if (json o = origin_json(instance.origin()); !o.is_null()) j["origin"] = o;
  json jobs = json::array();
  for (const auto& job : instance.jobs()) {
    json e;
    e["id"] = job.id;
    if constexpr (std::is_same_v<T, double>) {
      e["pi"] = job.pi;
      e["c"] = job.cost;
      e["r"] = job.reward;
    } else {
      e["pi"] = ScalarTraits<T>::format(job.pi);
      e["c"] = ScalarTraits<T>::format(job.cost);
      e["r"] = ScalarTraits<T>::format(job.reward);
    }
    jobs.push_back(std::move(e));
  }
  j["jobs"] = std::move(jobs);
  return j.dump(2) + "\n";
}

template <class T>
BasicInstance<T> jobs_from_json(const json& doc, unsigned bits, Origin origin) {
  const json& jobs = field(doc, "jobs", "");
  if (!jobs.is_array()) throw ParseError("/jobs: expected an array");
  const auto n = integer(field(doc, "n", ""), "/n");
  if (n < 0 || static_cast<std::size_t>(n) != jobs.size()) {
    throw ParseError("/n: does not match the number of jobs");
  }
  std::vector<BasicJob<T>> out;
  out.reserve(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const std::string at = "/jobs/" + std::to_string(k);
    const json& e = jobs[k];
    BasicJob<T> job;
    const auto id = integer(field(e, "id", at), at + "/id");
    if (id < std::numeric_limits<int>::min() || id > std::numeric_limits<int>::max()) {
      throw ParseError(at + "/id: out of range");
    }
    job.id = static_cast<int>(id);
    job.pi = scalar<T>(field(e, "pi", at), at + "/pi");
    job.cost = scalar<T>(field(e, "c", at), at + "/c");
    job.reward = scalar<T>(field(e, "r", at), at + "/r");
    out.push_back(std::move(job));
  }
  try {
    return BasicInstance<T>(std::move(out), bits, std::move(origin));
  } catch (const InputError& e) {
    throw ParseError(std::string("/jobs: ") + e.what());
  }
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::string instance_to_json(const Instance& instance) { return to_json(instance); }
std::string instance_to_json(const HpInstance& instance) { return to_json(instance); }

AnyInstance instance_from_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("/: expected an object");
  Origin origin;
  if (auto it = doc.find("origin"); it != doc.end()) origin = parse_origin(*it);
  const json& precision = field(doc, "precision", "");
  if (precision.is_string()) {
    if (precision.get<std::string>() != "f64") throw ParseError("/precision: expected \"f64\"");
    return jobs_from_json<double>(doc, kFloat64Bits, std::move(origin));
  }
  const auto bits = integer(field(precision, "bits", "/precision"), "/precision/bits");
  if (bits < 16 || bits > (1 << 20)) throw ParseError("/precision/bits: out of range");
  PrecisionScope scope(static_cast<unsigned>(bits));
  return jobs_from_json<HighPrecisionScalar>(doc, static_cast<unsigned>(bits), std::move(origin));
}

std::string ppp_to_json(const PppInstance& ppp) {
  json j;
  j["type"] = std::string(to_string(ppp.type));
  j["a"] = ppp.values;
  if (ppp.planted_split) {
    json split = json::array();
    for (std::size_t p : *ppp.planted_split) split.push_back(p + 1);
    j["planted_split"] = std::move(split);
  }
  return j.dump() + "\n";
}

PppInstance ppp_from_json(std::string_view text) {
  const json doc = parse_json(text);
  PppInstance out;
  const json& type = field(doc, "type", "");
  if (!type.is_string()) throw ParseError("/type: expected a string");
  try {
    out.type = parse_ppp_type(type.get<std::string>());
  } catch (const InputError& e) {
    throw ParseError(std::string("/type: ") + e.what());
  }
  const json& a = field(doc, "a", "");
  if (!a.is_array()) throw ParseError("/a: expected an array");
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::string at = "/a/" + std::to_string(k);
    const auto v = integer(a[k], at);
    if (v < kPppMinValue || v > 1'000'000'000) throw ParseError(at + ": must be at least 2");
    out.values.push_back(static_cast<int>(v));
  }
  if (auto it = doc.find("planted_split"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError("/planted_split: expected an array");
    std::vector<std::size_t> split;
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string at = "/planted_split/" + std::to_string(k);
      const auto v = integer((*it)[k], at);
      if (v < 1 || static_cast<std::size_t>(v) > out.values.size()) {
        throw ParseError(at + ": position out of range");
      }
      split.push_back(static_cast<std::size_t>(v - 1));
    }
    out.planted_split = std::move(split);
  }
  return out;
}

bool is_ppp_json(std::string_view text) {
  try {
    const json doc = json::parse(text.begin(), text.end());
    return doc.is_object() && doc.contains("a") && doc["a"].is_array();
  } catch (const json::exception&) {
    return false;
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text(path, instance_to_json(instance));
}

void write_instance(const HpInstance& instance, const std::filesystem::path& path) {
  write_text(path, instance_to_json(instance));
}

AnyInstance read_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_ppp(const PppInstance& ppp, const std::filesystem::path& path) {
  write_text(path, ppp_to_json(ppp));
}

PppInstance read_ppp(const std::filesystem::path& path) {
  try {
    return ppp_from_json(read_text(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string manifest_to_csv(const std::vector<ManifestEntry>& entries) {
  std::string out = "seed,n,scheme,path\n";
  for (const auto& e : entries) {
    out += std::to_string(e.seed) + "," + std::to_string(e.n) + "," + e.scheme + "," + e.path + "\n";
  }
  return out;
}

std::vector<ManifestEntry> manifest_from_csv(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (number == 1 && line.rfind("seed,", 0) == 0) continue;
    std::vector<std::string> cells;
    std::size_t from = 0;
    for (int i = 0; i < 3; ++i) {
      const auto comma = line.find(',', from);
      if (comma == std::string::npos) break;
      cells.push_back(line.substr(from, comma - from));
      from = comma + 1;
    }
    cells.push_back(line.substr(from));
    const std::string where = "manifest line " + std::to_string(number);
    if (cells.size() != 4) throw ParseError(where + ": expected seed,n,scheme,path");
    const auto seed = parse_u64(cells[0]);
    const auto n = parse_u64(cells[1]);
    if (!seed) throw ParseError(where + ": bad seed");
    if (!n) throw ParseError(where + ": bad n");
    out.push_back({*seed, static_cast<std::size_t>(*n), cells[2], cells[3]});
  }
  return out;
}

}  // namespace ujssp
