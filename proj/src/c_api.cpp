#include "magset/magset.h"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "magset/codec.hpp"
#include "magset/constructions.hpp"
#include "magset/errors.hpp"
#include "magset/residue_set.hpp"
#include "magset/search.hpp"
#include "magset/verifier.hpp"

struct magset_report {
  magset::ConstructionReport report;
};

struct magset_search_result {
  magset::SearchResult result;
};

struct magset_cache {
  explicit magset_cache(std::string path) : cache(std::move(path)) {}
  magset::SearchCache cache;
};

struct magset_code {
  explicit magset_code(magset::LinearCode c) : code(std::move(c)) {}
  magset::LinearCode code;
};

namespace {

thread_local std::string last_error;

magset_status fail(magset_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
magset_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return MAGSET_OK;
  } catch (const magset::Error& e) {
    return fail(static_cast<magset_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MAGSET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MAGSET_ERR_INTERNAL, e.what());
  }
}

void require(bool condition, const char* what) {
  if (!condition) magset::throw_error(magset::ErrorCode::kInvalidArgument, what);
}

magset::ResidueSet make_set(std::uint64_t q, const uint64_t* elements, size_t count) {
  require(q >= 1, "q must be positive");
  require(elements != nullptr || count == 0, "null element array");
  return magset::ResidueSet(q, std::vector<std::uint64_t>(elements, elements + count));
}

magset::SearchBudget make_budget(const magset_search_options* options) {
  magset::SearchBudget budget;
  if (options != nullptr) {
    if (options->max_nodes != 0) budget.max_nodes = options->max_nodes;
    if (options->max_time_ms != 0) budget.max_time = std::chrono::milliseconds(options->max_time_ms);
  }
  return budget;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* magset_version(void) { return "1.0.0"; }

const char* magset_status_name(magset_status status) {
  if (status == MAGSET_OK) return "ok";
  return magset::error_code_name(static_cast<magset::ErrorCode>(status));
}

const char* magset_last_error(void) { return last_error.c_str(); }

void magset_string_free(char* text) { delete[] text; }

magset_status magset_hamming_bound(uint64_t q, unsigned lambda, uint64_t* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = magset::hamming_upper_bound(q, lambda);
  });
}

magset_status magset_verify(uint64_t q, unsigned lambda, const uint64_t* elements, size_t count,
                            magset_verdict* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    require(lambda >= 1, "lambda must be positive");
    const magset::Verdict verdict = magset::is_b1_set(make_set(q, elements, count), lambda);
    *out = magset_verdict{};
    out->valid = verdict.valid ? 1 : 0;
    if (verdict.witness) {
      out->e1 = verdict.witness->e1;
      out->b1 = verdict.witness->b1;
      out->e2 = verdict.witness->e2;
      out->b2 = verdict.witness->b2;
    }
  });
}

magset_status magset_cache_open(const char* path, magset_cache** out) {
  return guarded([&] {
    require(out != nullptr && path != nullptr, "null argument");
    *out = nullptr;
    *out = new magset_cache(path);
  });
}

void magset_cache_free(magset_cache* cache) { delete cache; }

void magset_search_options_default(magset_search_options* options) {
  if (options == nullptr) return;
  const magset::SearchBudget budget;
  options->max_nodes = budget.max_nodes;
  options->max_time_ms = static_cast<uint64_t>(budget.max_time.count());
  options->cache = nullptr;
}

magset_status magset_search(uint64_t q, unsigned lambda, const magset_search_options* options,
                            magset_search_result** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    require(q >= 1 && lambda >= 1, "q and lambda must be positive");
    magset::SearchCache* cache = options != nullptr && options->cache != nullptr ? &options->cache->cache : nullptr;
    auto handle = std::make_unique<magset_search_result>();
    handle->result = magset::cached_exact_max(q, lambda, cache, make_budget(options));
    *out = handle.release();
  });
}

uint64_t magset_search_max_size(const magset_search_result* r) { return r ? r->result.max_size : 0; }
int magset_search_exact(const magset_search_result* r) { return r && r->result.exact ? 1 : 0; }
uint64_t magset_search_upper_bound(const magset_search_result* r) { return r ? r->result.upper_bound : 0; }
uint64_t magset_search_nodes(const magset_search_result* r) { return r ? r->result.nodes_expanded : 0; }
uint64_t magset_search_elapsed_ms(const magset_search_result* r) {
  return r ? static_cast<uint64_t>(r->result.elapsed.count()) : 0;
}

const uint64_t* magset_search_elements(const magset_search_result* r, size_t* count) {
  if (r == nullptr) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = r->result.witness.size();
  return r->result.witness.elements().data();
}

magset_status magset_search_json(const magset_search_result* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = copy_string(magset::search_result_to_json(r->result));
  });
}

void magset_search_free(magset_search_result* r) { delete r; }

magset_status magset_divisor_context(uint64_t d, uint64_t q, magset_divisor_params* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const magset::DivisorContext c = magset::divisor_context(d, q);
    *out = magset_divisor_params{};
    out->d = c.d;
    out->n = c.n;
    out->phi = c.phi;
    out->two_in_three = c.two_in_three ? 1 : 0;
    out->s = c.s;
    out->m = c.m;
    out->k_prime = c.k_prime;
    out->r_prime = c.r_prime;
    out->t = c.t;
    out->b = c.b;
    out->gamma_count = c.gamma.representatives.size();
    out->lambda_count = c.lambda_reps.representatives.size();
  });
}

magset_status magset_construct(uint64_t q, const magset_search_options* options, magset_report** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    magset::ConstructOptions construct_options;
    construct_options.budget = make_budget(options);
    if (options != nullptr && options->cache != nullptr) construct_options.cache = &options->cache->cache;
    auto handle = std::make_unique<magset_report>();
    handle->report = magset::construct(magset::make_instance(q), construct_options);
    *out = handle.release();
  });
}

uint64_t magset_report_q(const magset_report* r) { return r ? r->report.instance.q : 0; }
uint64_t magset_report_size(const magset_report* r) { return r ? r->report.result.size() : 0; }
uint64_t magset_report_claimed_size(const magset_report* r) { return r ? r->report.claimed_size : 0; }
uint64_t magset_report_upper_bound(const magset_report* r) { return r ? r->report.upper_bound : 0; }
int magset_report_verified(const magset_report* r) { return r && r->report.verified ? 1 : 0; }
int magset_report_tight(const magset_report* r) { return r && r->report.tight == true ? 1 : -1; }
const char* magset_report_method(const magset_report* r) { return r ? r->report.method.c_str() : ""; }

const uint64_t* magset_report_elements(const magset_report* r, size_t* count) {
  if (r == nullptr) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = r->report.result.size();
  return r->report.result.elements().data();
}

size_t magset_report_piece_count(const magset_report* r) { return r ? r->report.pieces.size() : 0; }

magset_status magset_report_piece(const magset_report* r, size_t index, magset_piece_info* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    require(index < r->report.pieces.size(), "piece index out of range");
    const auto& piece = r->report.pieces[index];
    out->d = piece.d;
    out->bound = piece.bound;
    out->exact = piece.exact ? 1 : 0;
    out->count = piece.elements.size();
    out->elements = piece.elements.elements().data();
    out->case_label = piece.case_label.c_str();
  });
}

magset_status magset_report_json(const magset_report* r, char** out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "null argument");
    *out = copy_string(magset::report_to_json(r->report));
  });
}

void magset_report_free(magset_report* r) { delete r; }

magset_status magset_code_create(uint64_t q, unsigned lambda, const uint64_t* elements, size_t count,
                                 magset_code** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    require(lambda >= 1, "lambda must be positive");
    *out = new magset_code(magset::LinearCode(make_set(q, elements, count), lambda));
  });
}

size_t magset_code_length(const magset_code* code) { return code ? code->code.length() : 0; }

magset_status magset_code_pivot(const magset_code* code, size_t* position) {
  return guarded([&] {
    require(code != nullptr && position != nullptr, "null argument");
    const auto pivot = code->code.pivot();
    if (!pivot) magset::throw_error(magset::ErrorCode::kNoUnitPivot, "no element of the parity row is a unit");
    *position = *pivot;
  });
}

magset_status magset_code_syndrome(const magset_code* code, const uint64_t* word, size_t length, uint64_t* out) {
  return guarded([&] {
    require(code != nullptr && out != nullptr && (word != nullptr || length == 0), "null argument");
    *out = code->code.syndrome(magset::Word(word, word + length));
  });
}

magset_status magset_code_encode(const magset_code* code, const uint64_t* message, size_t message_length,
                                 uint64_t* out, size_t out_length) {
  return guarded([&] {
    require(code != nullptr && (message != nullptr || message_length == 0), "null argument");
    const magset::Word word = code->code.encode(magset::Word(message, message + message_length));
    if (out_length != word.size()) {
      magset::throw_error(magset::ErrorCode::kLengthMismatch, "output buffer must hold the code length");
    }
    require(out != nullptr || word.empty(), "null output");
    std::copy(word.begin(), word.end(), out);
  });
}

magset_status magset_code_decode(const magset_code* code, const uint64_t* word, size_t length, uint64_t* out,
                                 magset_decode_info* info) {
  return guarded([&] {
    require(code != nullptr && (word != nullptr || length == 0), "null argument");
    require(out != nullptr || length == 0, "null output");
    const magset::Decoded decoded = code->code.decode(magset::Word(word, word + length));
    std::copy(decoded.word.begin(), decoded.word.end(), out);
    if (info != nullptr) {
      *info = magset_decode_info{};
      if (decoded.error) {
        info->corrected = 1;
        info->position = decoded.error->position;
        info->magnitude = decoded.error->magnitude;
      }
    }
  });
}

magset_status magset_code_simulate(const magset_code* code, const magset_channel_options* options,
                                   magset_channel_stats* out) {
  return guarded([&] {
    require(code != nullptr && options != nullptr && out != nullptr, "null argument");
    magset::ChannelOptions channel;
    channel.trials = options->trials;
    channel.error_rate = options->error_rate;
    channel.seed = options->seed;
    channel.double_errors = options->double_errors != 0;
    const magset::ChannelStats stats = magset::simulate_channel(code->code, channel);
    *out = magset_channel_stats{stats.trials,       stats.clean,    stats.corrected, stats.detected,
                                stats.miscorrected, stats.injected, stats.seed};
  });
}

void magset_code_free(magset_code* code) { delete code; }

}  // extern "C"
