// Command-line front end over the magset C interface.
//
// Exit codes: 0 success, 1 domain failure (invalid set, inexact search,
// failed construction, undecodable word), 2 usage error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "magset/magset.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Thrown for bad input detected by the CLI itself or reported by the library
// as an invalid argument.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(magset_status status) {
  if (status == MAGSET_OK) return;
  const std::string message = std::string(magset_status_name(status)) + ": " + magset_last_error();
  if (status == MAGSET_ERR_INVALID_ARGUMENT || status == MAGSET_ERR_LENGTH_MISMATCH) throw UsageError(message);
  throw DomainError(message);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Report = std::unique_ptr<magset_report, Deleter<magset_report, magset_report_free>>;
using Search = std::unique_ptr<magset_search_result, Deleter<magset_search_result, magset_search_free>>;
using Cache = std::unique_ptr<magset_cache, Deleter<magset_cache, magset_cache_free>>;
using Code = std::unique_ptr<magset_code, Deleter<magset_code, magset_code_free>>;

std::string take_string(char* text) {
  std::string out(text);
  magset_string_free(text);
  return out;
}

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> values;
  if (text.find_first_not_of(" \t") == std::string::npos) return values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    const auto lo = item.find_first_not_of(" \t");
    const auto hi = item.find_last_not_of(" \t");
    if (lo == std::string::npos) throw UsageError(std::string("empty entry in ") + what);
    item = item.substr(lo, hi - lo + 1);
    if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 19) {
      throw UsageError(std::string("bad entry '") + item + "' in " + what);
    }
    values.push_back(std::stoull(item));
  }
  if (!text.empty() && text.back() == ',') throw UsageError(std::string("trailing comma in ") + what);
  return values;
}

std::string join(const std::uint64_t* values, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i != 0) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join(const std::vector<std::uint64_t>& values) { return join(values.data(), values.size()); }

std::vector<std::uint64_t> copy(const std::uint64_t* values, std::size_t count) {
  return std::vector<std::uint64_t>(values, values + count);
}

// Search budget and cache flags shared by construct, search and table.
struct SearchFlags {
  std::uint64_t budget = 0;
  double time_limit = 0;
  std::string cache_path;
  bool no_cache = false;

  void attach(CLI::App* app) {
    app->add_option("--budget", budget, "Node budget for exhaustive search (0 = default)");
    app->add_option("--time-limit", time_limit, "Time budget in seconds for exhaustive search (0 = default)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--cache", cache_path, "Search cache file (default $MAGSET_CACHE or ./magset-cache.jsonl)");
    app->add_flag("--no-cache", no_cache, "Do not read or write the search cache");
  }

  // Opens the cache (unless disabled) and fills `options`.
  Cache open(magset_search_options& options) const {
    magset_search_options_default(&options);
    if (budget != 0) options.max_nodes = budget;
    if (time_limit > 0) options.max_time_ms = static_cast<std::uint64_t>(time_limit * 1000.0 + 0.5);
    if (no_cache) return nullptr;
    std::string path = cache_path;
    if (path.empty()) {
      const char* env = std::getenv("MAGSET_CACHE");
      path = env != nullptr && *env != '\0' ? env : "magset-cache.jsonl";
    }
    magset_cache* raw = nullptr;
    check(magset_cache_open(path.c_str(), &raw));
    options.cache = raw;
    return Cache(raw);
  }
};

std::string factor_text(std::uint64_t q) {
  unsigned k = 0;
  std::uint64_t r = q;
  while (r % 2 == 0 && r != 0) {
    r /= 2;
    ++k;
  }
  return "2^" + std::to_string(k) + " * " + std::to_string(r);
}

// ---- construct ------------------------------------------------------------

void print_report_text(const json& report, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const auto q = report["q"].get<std::uint64_t>();
  std::cout << pad << "q = " << q << " = " << factor_text(q) << "\n";
  std::cout << pad << "method: " << report["method"].get<std::string>() << "\n";
  const bool tight = report["tight"].is_boolean() && report["tight"].get<bool>();
  std::cout << pad << "size: " << (tight ? "" : ">= ") << report["size"] << " (claimed " << report["claimed_size"]
            << ", counting bound " << report["upper_bound"] << ")\n";
  std::cout << pad << "verified: " << (report["verified"].get<bool>() ? "yes" : "NO") << "\n";
  std::cout << pad << "maximum: " << (tight ? "certified" : "not certified (lower bound)") << "\n";
  if (!report["closed_form"].is_null()) {
    std::cout << pad << "closed form (q + 3r - 7) / 7: " << report["closed_form"] << "\n";
  }
  std::cout << pad << "elements: " << join(report["elements"].get<std::vector<std::uint64_t>>()) << "\n";
  for (const auto& piece : report["pieces"]) {
    std::cout << pad << "  d = " << piece["d"] << ": " << piece["size"] << " element(s), "
              << (piece["exact"].get<bool>() ? "exact" : "lower bound") << ", " << piece["case"].get<std::string>()
              << "\n";
  }
  if (!report["base"].is_null()) {
    std::cout << pad << "base (multiplied by 8):\n";
    print_report_text(report["base"], depth + 1);
  }
}

int run_construct(std::uint64_t q, bool as_json, const SearchFlags& flags) {
  if (q == 0) throw UsageError("q must be positive");
  {
    std::uint64_t r = q;
    while (r % 2 == 0) r /= 2;
    if (r % 3 == 0) {
      throw UsageError("q = " + std::to_string(q) + " = " + factor_text(q) +
                       ": the constructions need r coprime to 6, but 3 divides r");
    }
  }
  magset_search_options options;
  Cache cache = flags.open(options);
  magset_report* raw = nullptr;
  check(magset_construct(q, &options, &raw));
  Report report(raw);
  char* text = nullptr;
  check(magset_report_json(report.get(), &text));
  const json parsed = json::parse(take_string(text));
  if (as_json) {
    std::cout << parsed.dump() << "\n";
  } else {
    print_report_text(parsed, 0);
  }
  return magset_report_verified(report.get()) ? kExitOk : kExitDomain;
}

// ---- verify ---------------------------------------------------------------

int run_verify(std::uint64_t q, unsigned lambda, const std::string& set_text, bool as_json) {
  const auto set = parse_list(set_text, "--set");
  magset_verdict verdict;
  check(magset_verify(q, lambda, set.data(), set.size(), &verdict));
  std::string witness;
  if (!verdict.valid) {
    witness = verdict.e2 == 0 ? std::to_string(verdict.e1) + "*" + std::to_string(verdict.b1) + " == 0 (mod " +
                                    std::to_string(q) + ")"
                              : std::to_string(verdict.e1) + "*" + std::to_string(verdict.b1) +
                                    " == " + std::to_string(verdict.e2) + "*" + std::to_string(verdict.b2) +
                                    " (mod " + std::to_string(q) + ")";
  }
  if (as_json) {
    json out{{"q", q}, {"lambda", lambda}, {"size", set.size()}, {"valid", verdict.valid != 0}, {"witness", nullptr}};
    if (!verdict.valid) {
      out["witness"] = json{{"e1", verdict.e1}, {"b1", verdict.b1}, {"e2", verdict.e2}, {"b2", verdict.b2},
                            {"text", witness}};
    }
    std::cout << out.dump() << "\n";
  } else if (verdict.valid) {
    std::cout << "valid: " << set.size() << " element(s), all " << lambda << "-fold syndromes distinct mod " << q
              << "\n";
  } else {
    std::cout << "invalid: " << witness << "\n";
  }
  return verdict.valid ? kExitOk : kExitDomain;
}

// ---- search ---------------------------------------------------------------

int run_search(std::uint64_t q, unsigned lambda, bool as_json, const SearchFlags& flags) {
  magset_search_options options;
  Cache cache = flags.open(options);
  magset_search_result* raw = nullptr;
  check(magset_search(q, lambda, &options, &raw));
  Search result(raw);
  const bool exact = magset_search_exact(result.get()) != 0;
  if (as_json) {
    char* text = nullptr;
    check(magset_search_json(result.get(), &text));
    std::cout << take_string(text) << "\n";
  } else {
    std::size_t count = 0;
    const std::uint64_t* elements = magset_search_elements(result.get(), &count);
    if (exact) {
      std::cout << "maximum size: " << magset_search_max_size(result.get()) << "\n";
    } else {
      std::cout << "budget exhausted: size >= " << magset_search_max_size(result.get()) << ", <= "
                << magset_search_upper_bound(result.get()) << "\n";
    }
    std::cout << "witness: " << join(elements, count) << "\n";
    std::cout << "nodes: " << magset_search_nodes(result.get()) << ", time: "
              << magset_search_elapsed_ms(result.get()) << " ms\n";
  }
  return exact ? kExitOk : kExitDomain;
}

// ---- table ----------------------------------------------------------------

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t f = 2; f * f <= p; ++f) {
    if (p % f == 0) return false;
  }
  return true;
}

struct TableRow {
  std::uint64_t p = 0;
  magset_divisor_params params{};
  std::uint64_t size = 0;
  bool exact = false;
  std::vector<std::uint64_t> elements;
  std::string case_label;
  std::optional<std::uint64_t> oracle;
  bool oracle_exact = true;
};

int run_table(const std::string& family, std::uint64_t max_p, bool oracle, bool markdown, bool as_json,
              const SearchFlags& flags) {
  if (family != "2p") throw UsageError("only --family 2p is supported");
  magset_search_options options;
  Cache cache;
  if (oracle) cache = flags.open(options);

  std::vector<TableRow> first, second;
  for (std::uint64_t p = 5; p < max_p; ++p) {
    if (!is_prime(p)) continue;
    TableRow row;
    row.p = p;
    check(magset_divisor_context(p, 2 * p, &row.params));
    magset_report* raw = nullptr;
    check(magset_construct(2 * p, nullptr, &raw));
    Report report(raw);
    for (std::size_t i = 0; i < magset_report_piece_count(report.get()); ++i) {
      magset_piece_info piece;
      check(magset_report_piece(report.get(), i, &piece));
      if (piece.d != p) continue;
      row.size = piece.count;
      row.exact = piece.exact != 0;
      row.elements = copy(piece.elements, piece.count);
      row.case_label = piece.case_label;
    }
    if (oracle) {
      magset_search_result* found = nullptr;
      check(magset_search(2 * p, 4, &options, &found));
      Search result(found);
      row.oracle = magset_search_max_size(result.get());
      row.oracle_exact = magset_search_exact(result.get()) != 0;
    }
    (row.params.two_in_three ? first : second).push_back(std::move(row));
  }

  const auto size_text = [](const TableRow& row) {
    return (row.exact ? "" : ">=") + std::to_string(row.size);
  };
  const auto verdict_text = [](const TableRow& row) -> std::string {
    if (!row.oracle) return "";
    if (!row.oracle_exact) return "UNKNOWN";
    return *row.oracle == row.size ? "TIGHT" : "GAP";
  };

  int status = kExitOk;
  for (const auto* rows : {&first, &second}) {
    for (const auto& row : *rows) {
      if (row.oracle && !row.oracle_exact) status = kExitDomain;
    }
  }

  if (as_json) {
    json out = json::array();
    for (const auto* rows : {&first, &second}) {
      for (const auto& row : *rows) {
        json item{{"p", row.p},
                  {"q", 2 * row.p},
                  {"two_in_three", row.params.two_in_three != 0},
                  {"n", row.params.n},
                  {"size", row.size},
                  {"exact", row.exact},
                  {"elements", row.elements},
                  {"case", row.case_label}};
        if (row.params.two_in_three) {
          item["m"] = row.params.m;
          item["k_prime"] = row.params.k_prime;
          item["r_prime"] = row.params.r_prime;
        } else {
          item["t"] = row.params.t;
          item["s"] = row.params.s;
          item["lambda_count"] = row.params.lambda_count;
        }
        if (row.oracle) {
          item["oracle"] = *row.oracle;
          item["oracle_exact"] = row.oracle_exact;
          item["verdict"] = verdict_text(row);
        }
        out.push_back(std::move(item));
      }
    }
    std::cout << out.dump() << "\n";
    return status;
  }

  const auto emit = [&](const std::vector<TableRow>& rows, bool two_in_three) {
    std::vector<std::string> header = {"p", "n"};
    if (two_in_three) {
      header.insert(header.end(), {"m", "k'", "r'"});
    } else {
      header.insert(header.end(), {"t", "s", "|Lambda|"});
    }
    header.insert(header.end(), {"M4(2p)", "T_d", "case"});
    if (oracle) header.insert(header.end(), {"exact_max", "verdict"});

    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
      std::vector<std::string> line = {std::to_string(row.p), std::to_string(row.params.n)};
      if (two_in_three) {
        line.insert(line.end(), {std::to_string(row.params.m), std::to_string(row.params.k_prime),
                                 std::to_string(row.params.r_prime)});
      } else {
        line.insert(line.end(), {std::to_string(row.params.t), std::to_string(row.params.s),
                                 std::to_string(row.params.lambda_count)});
      }
      line.insert(line.end(), {size_text(row), "{" + join(row.elements) + "}", row.case_label});
      if (oracle) line.insert(line.end(), {std::to_string(*row.oracle), verdict_text(row)});
      cells.push_back(std::move(line));
    }

    if (markdown) {
      const auto md_row = [](const std::vector<std::string>& values) {
        std::string out = "|";
        for (const auto& v : values) out += " " + v + " |";
        return out;
      };
      std::cout << md_row(header) << "\n|";
      for (std::size_t i = 0; i < header.size(); ++i) std::cout << " --- |";
      std::cout << "\n";
      for (const auto& line : cells) std::cout << md_row(line) << "\n";
    } else {
      std::vector<std::size_t> width(header.size());
      for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
      for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
      }
      const auto text_row = [&](const std::vector<std::string>& values) {
        std::string out;
        for (std::size_t i = 0; i < values.size(); ++i) {
          out += values[i];
          if (i + 1 < values.size()) out += std::string(width[i] - values[i].size() + 2, ' ');
        }
        return out;
      };
      std::cout << text_row(header) << "\n";
      for (const auto& line : cells) std::cout << text_row(line) << "\n";
    }
  };

  std::cout << (markdown ? "### " : "") << "M4(2p), 2 in <3> mod p\n\n";
  emit(first, true);
  std::cout << "\n" << (markdown ? "### " : "") << "M4(2p), 2 not in <3> mod p\n\n";
  emit(second, false);
  return status;
}

// ---- codec ----------------------------------------------------------------

Code make_code(std::uint64_t q, unsigned lambda, const std::string& set_text) {
  const auto set = parse_list(set_text, "--set");
  magset_code* raw = nullptr;
  check(magset_code_create(q, lambda, set.data(), set.size(), &raw));
  return Code(raw);
}

int run_encode(std::uint64_t q, unsigned lambda, const std::string& set_text, const std::string& message_text,
               bool as_json) {
  Code code = make_code(q, lambda, set_text);
  const auto message = parse_list(message_text, "--message");
  std::vector<std::uint64_t> word(magset_code_length(code.get()));
  check(magset_code_encode(code.get(), message.data(), message.size(), word.data(), word.size()));
  if (as_json) {
    std::size_t pivot = 0;
    check(magset_code_pivot(code.get(), &pivot));
    std::cout << json{{"word", word}, {"pivot", pivot}}.dump() << "\n";
  } else {
    std::cout << join(word) << "\n";
  }
  return kExitOk;
}

int run_decode(std::uint64_t q, unsigned lambda, const std::string& set_text, const std::string& word_text,
               bool as_json) {
  Code code = make_code(q, lambda, set_text);
  const auto word = parse_list(word_text, "--word");
  std::vector<std::uint64_t> decoded(word.size());
  magset_decode_info info{};
  const magset_status status = magset_code_decode(code.get(), word.data(), word.size(), decoded.data(), &info);
  if (status == MAGSET_ERR_UNKNOWN_SYNDROME) {
    std::uint64_t syndrome = 0;
    check(magset_code_syndrome(code.get(), word.data(), word.size(), &syndrome));
    if (as_json) {
      std::cout << json{{"status", "detected"}, {"syndrome", syndrome}}.dump() << "\n";
    } else {
      std::cout << "detected: syndrome " << syndrome << " matches no single error of magnitude <= " << lambda
                << "\n";
    }
    return kExitDomain;
  }
  check(status);
  if (as_json) {
    json out{{"status", info.corrected ? "corrected" : "clean"}, {"word", decoded}, {"error", nullptr}};
    if (info.corrected) out["error"] = json{{"position", info.position}, {"magnitude", info.magnitude}};
    std::cout << out.dump() << "\n";
  } else if (info.corrected) {
    std::cout << "corrected (pos " << info.position << ", mag " << info.magnitude << "): " << join(decoded) << "\n";
  } else {
    std::cout << "no error: " << join(decoded) << "\n";
  }
  return kExitOk;
}

int run_simulate(std::uint64_t q, unsigned lambda, const std::string& set_text, const magset_channel_options& options,
                 bool as_json) {
  Code code = make_code(q, lambda, set_text);
  magset_channel_stats stats;
  check(magset_code_simulate(code.get(), &options, &stats));
  if (as_json) {
    std::cout << json{{"trials", stats.trials},       {"clean", stats.clean},       {"corrected", stats.corrected},
                      {"detected", stats.detected},   {"miscorrected", stats.miscorrected},
                      {"injected", stats.injected},   {"seed", stats.seed}}
                     .dump()
              << "\n";
  } else {
    std::cout << "trials: " << stats.trials << " (seed " << stats.seed << ")\n"
              << "error injected: " << stats.injected << "\n"
              << "corrected: " << stats.corrected << "\n"
              << "clean: " << stats.clean << "\n"
              << "detected: " << stats.detected << "\n"
              << "miscorrected: " << stats.miscorrected << "\n";
  }
  return stats.miscorrected == 0 && (options.double_errors || stats.detected == 0) ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sets with distinct limited-magnitude syndromes over Z_q, and their codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(magset_version()));

  std::uint64_t q = 0;
  unsigned lambda = 4;
  bool as_json = false;
  std::string set_text, word_text, message_text;
  SearchFlags flags;

  auto* construct = app.add_subcommand("construct", "Explicit maximal set for q = 2^k r, gcd(r, 6) = 1");
  construct->add_option("--q", q, "Modulus")->required();
  construct->add_flag("--json", as_json, "Machine-readable output");
  flags.attach(construct);

  auto* verify = app.add_subcommand("verify", "Check that all e*b (1 <= e <= lambda) are distinct and nonzero");
  verify->add_option("--q", q, "Modulus")->required();
  verify->add_option("--lambda", lambda, "Largest error magnitude")->check(CLI::PositiveNumber);
  verify->add_option("--set", set_text, "Comma-separated residues")->required();
  verify->add_flag("--json", as_json, "Machine-readable output");

  auto* search = app.add_subcommand("search", "Exact maximum by branch and bound");
  search->add_option("--q", q, "Modulus")->required()->check(CLI::PositiveNumber);
  search->add_option("--lambda", lambda, "Largest error magnitude")->check(CLI::PositiveNumber);
  search->add_flag("--json", as_json, "Machine-readable output");
  flags.attach(search);

  std::string family = "2p";
  std::uint64_t max_p = 100;
  bool oracle = false, markdown = false;
  auto* table = app.add_subcommand("table", "Per-prime constructions for q = 2p");
  table->add_option("--family", family, "Table family (2p)");
  table->add_option("--max-p", max_p, "Primes p < max-p");
  table->add_flag("--oracle", oracle, "Also run the exact search and mark TIGHT/GAP");
  table->add_flag("--md", markdown, "GitHub-flavored markdown");
  table->add_flag("--json", as_json, "Machine-readable output");
  flags.attach(table);

  auto* bound = app.add_subcommand("bound", "Counting bound floor((q - 1) / lambda)");
  bound->add_option("--q", q, "Modulus")->required();
  bound->add_option("--lambda", lambda, "Largest error magnitude")->check(CLI::PositiveNumber);

  const auto code_options = [&](CLI::App* sub) {
    sub->add_option("--q", q, "Modulus")->required()->check(CLI::PositiveNumber);
    sub->add_option("--lambda", lambda, "Largest error magnitude")->check(CLI::PositiveNumber);
    sub->add_option("--set", set_text, "Parity row: comma-separated residues")->required();
    sub->add_flag("--json", as_json, "Machine-readable output");
  };
  auto* encode = app.add_subcommand("encode", "Encode m - 1 message symbols into a codeword");
  code_options(encode);
  encode->add_option("--message", message_text, "Comma-separated message symbols")->required();

  auto* decode = app.add_subcommand("decode", "Correct a single error of magnitude <= lambda");
  code_options(decode);
  decode->add_option("--word", word_text, "Comma-separated received symbols")->required();

  magset_channel_options channel{1000, 1.0, 0, 0};
  bool double_errors = false;
  auto* simulate = app.add_subcommand("simulate", "Random codewords through a single-error channel");
  code_options(simulate);
  simulate->add_option("--trials", channel.trials, "Number of trials");
  simulate->add_option("--error-rate", channel.error_rate, "Probability that a word is corrupted")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", channel.seed, "Master seed");
  simulate->add_flag("--double", double_errors, "Inject two errors per corrupted word (diagnostic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) return run_construct(q, as_json, flags);
    if (*verify) return run_verify(q, lambda, set_text, as_json);
    if (*search) return run_search(q, lambda, as_json, flags);
    if (*table) return run_table(family, max_p, oracle, markdown, as_json, flags);
    if (*bound) {
      std::uint64_t value = 0;
      check(magset_hamming_bound(q, lambda, &value));
      std::cout << value << "\n";
      return kExitOk;
    }
    if (*encode) return run_encode(q, lambda, set_text, message_text, as_json);
    if (*decode) return run_decode(q, lambda, set_text, word_text, as_json);
    if (*simulate) {
      channel.double_errors = double_errors ? 1 : 0;
      return run_simulate(q, lambda, set_text, channel, as_json);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
