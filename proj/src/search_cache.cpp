#include <cstdlib>
#include <fstream>
#include <string>

#include "json.hpp"
#include "magset/errors.hpp"
#include "magset/search.hpp"
#include "magset/verifier.hpp"

namespace magset {

namespace {

using nlohmann::json;

json to_json_value(const SearchResult& result) {
  return json{{"q", result.q},
              {"lambda", result.lambda},
              {"max_size", result.max_size},
              {"witness", result.witness.elements()},
              {"nodes", result.nodes_expanded},
              {"ms", result.elapsed.count()},
              {"exact", result.exact},
              {"upper_bound", result.upper_bound}};
}

SearchResult from_json_value(const json& record) {
  SearchResult result;
  result.q = record.at("q").get<std::uint64_t>();
  result.lambda = record.at("lambda").get<unsigned>();
  result.witness = ResidueSet(result.q, record.at("witness").get<std::vector<std::uint64_t>>());
  result.max_size = record.at("max_size").get<std::uint64_t>();
  result.nodes_expanded = record.at("nodes").get<std::uint64_t>();
  result.elapsed = std::chrono::milliseconds(record.at("ms").get<std::int64_t>());
  result.exact = record.at("exact").get<bool>();
  result.upper_bound = record.value("upper_bound", result.max_size);
  if (result.witness.size() != result.max_size) {
    throw_error(ErrorCode::kIo, "cache record has a witness of the wrong size");
  }
  if (!is_b1_set(result.witness, result.lambda).valid) {
    throw_error(ErrorCode::kIo, "cache record has an invalid witness");
  }
  return result;
}

}  // namespace

std::string default_cache_path() {
  if (const char* env = std::getenv("MAGSET_CACHE"); env != nullptr && *env != '\0') return env;
  return "magset-cache.jsonl";
}

SearchCache::SearchCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      SearchResult result = from_json_value(json::parse(line));
      if (!result.exact) continue;
      records_[{result.q, result.lambda}] = std::move(result);
    } catch (const std::exception& e) {
      throw_error(ErrorCode::kIo, path_ + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }
}

std::optional<SearchResult> SearchCache::find(std::uint64_t q, unsigned lambda) const {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto it = records_.find({q, lambda});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void SearchCache::store(const SearchResult& result) {
  std::lock_guard<std::mutex> lock(mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw_error(ErrorCode::kIo, "cannot append to cache " + path_);
  out << to_json_value(result).dump() << '\n';
  if (!out) throw_error(ErrorCode::kIo, "failed writing cache " + path_);
  if (result.exact) records_[{result.q, result.lambda}] = result;
}

SearchResult cached_exact_max(std::uint64_t q, unsigned lambda, SearchCache* cache,
                              const SearchBudget& budget) {
  if (cache != nullptr) {
    if (auto hit = cache->find(q, lambda)) return *hit;
  }
  SearchResult result = exact_max(q, lambda, budget);
  if (cache != nullptr) cache->store(result);
  return result;
}

std::string search_result_to_json(const SearchResult& result) {
  return to_json_value(result).dump();
}

}  // namespace magset
