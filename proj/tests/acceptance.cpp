// Acceptance run: one PASS/FAIL line per criterion, with pinned tolerances
// and time limits. Individual failing cells are listed under their criterion.
// Cells in kKnownDiscrepancies are expected to fail (the published value is
// not reproducible); they still print FAIL, but only an unlisted failure, an
// unexpected pass of a listed cell, or a blown time limit makes the process
// exit non-zero.
//
// Usage: magset_acceptance <path-to-magset-cli>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "magset/codec.hpp"
#include "magset/constructions.hpp"
#include "magset/number_theory.hpp"
#include "magset/residue_structure.hpp"
#include "magset/search.hpp"
#include "magset/verifier.hpp"
#include "oracles.hpp"
#include "published_data.hpp"

namespace {

using u64 = std::uint64_t;
using Clock = std::chrono::steady_clock;

// Cells whose published values disagree with what the definitions produce.
const std::set<std::string> kKnownDiscrepancies = {
    "3:p=73",  // printed s = 10 and size >= 24; the definitions give s = 8 and 28
    "4:q=98",  // construction 18, exhaustive maximum 19
    "5:r=49",  // divisor-sum lower bound 18, exhaustive maximum 19
};

// Time limits in seconds.
constexpr double kLimitGolden = 1.0;
constexpr double kLimitExact = 10.0;
constexpr double kLimitTable = 30.0;
constexpr double kLimitOracle = 600.0;
constexpr double kLimitProbe = 1800.0;
constexpr double kLimitProperties = 600.0;
constexpr double kLimitCodec = 120.0;

struct Criterion {
  Criterion(int id_, std::string title_, double limit) : id(id_), title(std::move(title_)), limit_s(limit) {}

  int id;
  std::string title;
  double limit_s;
  std::vector<std::string> failures;  // cell ids ("<id>:<cell>") with details
  std::vector<std::string> notes;     // informational lines
  std::vector<std::string> failed_cells;
  std::set<std::string> passed_cells;
  u64 cells = 0;
  double elapsed_s = 0;

  void check(bool ok, const std::string& cell, const std::string& detail) {
    ++cells;
    if (ok) {
      passed_cells.insert(std::to_string(id) + ":" + cell);
      return;
    }
    failed_cells.push_back(std::to_string(id) + ":" + cell);
    failures.push_back(cell + ": " + detail);
  }
};

std::string join(const std::vector<u64>& v) {
  std::string out;
  for (u64 x : v) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  }
  return out;
}

template <typename F>
void timed(Criterion& c, F&& body) {
  const auto start = Clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    c.check(false, "exception", e.what());
  }
  c.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
}

bool eligible(u64 r) { return r % 2 == 1 && r % 3 != 0; }

// ---- 1. golden sets ---------------------------------------------------------
void golden_sets(Criterion& c) {
  for (const auto& g : published::golden_sets()) {
    const auto verdict = magset::is_b1_set(magset::ResidueSet(g.q, g.elements), 4);
    c.check(verdict.valid, "q=" + std::to_string(g.q), g.source);
  }
  for (const auto& row : published::table_rows()) {
    const u64 q = 2 * row.p;
    const auto verdict = magset::is_b1_set(magset::ResidueSet(q, row.elements), 4);
    c.check(verdict.valid && row.elements.size() == row.size, "T_d p=" + std::to_string(row.p),
            verdict.valid ? "size differs from the printed size" : magset::describe(*verdict.witness, q));
  }
}

// ---- 2. exact sizes ---------------------------------------------------------
void exact_sizes(Criterion& c) {
  const std::vector<std::pair<u64, u64>> examples = {{40, 6}, {160, 24}, {20, 4}, {44, 10}, {190, 47}};
  for (const auto& [q, size] : examples) {
    const auto report = magset::construct(magset::make_instance(q));
    c.check(report.verified && report.result.size() == size, "q=" + std::to_string(q),
            "got " + std::to_string(report.result.size()) + ", expected " + std::to_string(size));
  }
  for (u64 r = 1; r <= 200; r += 2) {
    if (!eligible(r)) continue;
    const auto report = magset::construct(magset::make_instance(4 * r));
    c.check(report.verified && report.result.size() == r - 1, "4r=" + std::to_string(4 * r),
            "got " + std::to_string(report.result.size()));
  }
  for (unsigned k = 2; k <= 11; k += 3) {
    for (u64 r = 1; r <= 25; r += 2) {
      if (!eligible(r)) continue;
      const u64 q = (u64{1} << k) * r;
      const u64 expected = (q + 3 * r - 7) / 7;
      const auto report = magset::construct(magset::make_instance(q));
      c.check(report.verified && report.result.size() == expected && (q + 3 * r - 7) % 7 == 0,
              "closed form q=" + std::to_string(q),
              "got " + std::to_string(report.result.size()) + ", expected " + std::to_string(expected));
    }
  }
}

// ---- 3. table reproduction through the CLI ----------------------------------
std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) {
    status = -1;
    return out;
  }
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  status = pclose(pipe);
  return out;
}

void table_reproduction(Criterion& c, const std::string& cli) {
  int status = 0;
  const std::string out = run_capture("\"" + cli + "\" table --family 2p --max-p 100 --json", status);
  if (status != 0) {
    c.check(false, "cli", "table exited with status " + std::to_string(status));
    return;
  }
  const auto rows = nlohmann::json::parse(out);
  for (const auto& expected : published::table_rows()) {
    const std::string cell = "p=" + std::to_string(expected.p);
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r["p"] == expected.p; });
    if (it == rows.end()) {
      c.check(false, cell, "row missing");
      continue;
    }
    const auto& row = *it;
    std::vector<std::string> diffs;
    auto cmp = [&](const char* name, std::int64_t printed, const nlohmann::json& got) {
      if (printed < 0) return;
      if (!got.is_number() || got.get<std::int64_t>() != printed) {
        diffs.push_back(std::string(name) + " printed " + std::to_string(printed) + ", got " + got.dump());
      }
    };
    if (row["two_in_three"].get<bool>() != expected.two_in_three) diffs.push_back("family differs");
    cmp("n", expected.n, row["n"]);
    if (expected.two_in_three) {
      cmp("m", expected.col3, row["m"]);
      cmp("k'", expected.col4, row["k_prime"]);
      cmp("r'", expected.col5, row["r_prime"]);
    } else {
      cmp("t", expected.col3, row["t"]);
      cmp("s", expected.col4, row["s"]);
      cmp("|Lambda|", expected.col5, row["lambda_count"]);
    }
    cmp("M4(2p)", static_cast<std::int64_t>(expected.size), row["size"]);
    if (row["exact"].get<bool>() == expected.lower_bound_only) {
      diffs.push_back(std::string(">= marker ") + (expected.lower_bound_only ? "printed" : "absent") + ", got " +
                      (row["exact"].get<bool>() ? "exact" : "lower bound"));
    }
    std::string detail;
    for (const auto& d : diffs) detail += (detail.empty() ? "" : "; ") + d;
    c.check(diffs.empty(), cell, detail);
  }
  u64 primes = 0;
  for (u64 p = 5; p < 100; ++p) {
    if (p % 3 != 0 && oracle::phi(p) == p - 1) ++primes;
  }
  c.check(rows.size() == primes, "row count", std::to_string(rows.size()) + " rows for " + std::to_string(primes) +
                                                  " primes");
}

// ---- 4. exhaustive maximum vs construction ----------------------------------
void oracle_tightness(Criterion& c) {
  for (u64 q = 2; q <= 106; q += 2) {
    const auto inst = magset::make_instance(q);
    if (!eligible(inst.r)) continue;
    const auto report = magset::construct(inst);
    const auto search = magset::exact_max(q, 4);
    const bool ok = search.exact && report.verified && search.max_size == report.result.size();
    c.check(ok, "q=" + std::to_string(q),
            "construct " + std::to_string(report.result.size()) + ", exact_max " + std::to_string(search.max_size) +
                (search.exact ? "" : " (inexact)"));
  }
}

// ---- 5. divisor-sum lower bound vs exhaustive maximum for q = 2r ------------
void conjecture_probe(Criterion& c) {
  for (u64 r = 1; r <= 53; r += 2) {
    if (!eligible(r)) continue;
    const auto sum = magset::build_two_r(r);
    const auto search = magset::exact_max(2 * r, 4);
    c.check(search.exact && search.max_size == sum.result.size(), "r=" + std::to_string(r),
            "lower-bound sum " + std::to_string(sum.result.size()) + ", exact_max " + std::to_string(search.max_size));
  }
  for (u64 r : {55, 65, 77, 85, 91, 95}) {
    const auto start = Clock::now();
    const auto sum = magset::build_two_r(r);
    const auto search = magset::exact_max(2 * r, 4, magset::SearchBudget{u64{4'000'000'000}, std::chrono::minutes(4)});
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    std::string verdict = !search.exact ? "UNKNOWN" : search.max_size == sum.result.size() ? "TIGHT" : "GAP";
    std::ostringstream line;
    line << "probe r=" << r << ": sum " << sum.result.size() << ", exact_max " << search.max_size
         << (search.exact ? "" : " (budget exhausted, <= " + std::to_string(search.upper_bound) + ")") << " -> "
         << verdict << " (" << static_cast<u64>(ms) << " ms)";
    c.notes.push_back(line.str());
  }
}

// ---- 6. property suites -----------------------------------------------------
void property_suites(Criterion& c) {
  std::mt19937_64 rng(20240611);
  u64 disagreements = 0;
  for (int i = 0; i < 100000; ++i) {
    const u64 q = 2 + rng() % 499;
    const unsigned lambda = 1 + static_cast<unsigned>(rng() % 5);
    const u64 size = rng() % std::min<u64>(q, 12);
    std::set<u64> pick;
    while (pick.size() < size) pick.insert(1 + rng() % (q - 1));
    const std::vector<u64> elements(pick.begin(), pick.end());
    const auto verdict = magset::is_b1_set(magset::ResidueSet(q, elements), lambda);
    if (verdict.valid != oracle::is_b1(elements, q, lambda)) {
      if (++disagreements <= 5) c.check(false, "verifier q=" + std::to_string(q), "{" + join(elements) + "}");
    }
  }
  c.check(disagreements == 0, "verifier agreement", std::to_string(disagreements) + " disagreements");

  u64 order_mismatch = 0;
  for (std::int64_t l : {2, 3, 5, 7}) {
    for (u64 d = 1; d <= 5000; ++d) {
      if (oracle::gcd(static_cast<u64>(l), d) != 1) continue;
      if (magset::nt::mult_order(l, d) != oracle::order(static_cast<u64>(l), d)) {
        if (++order_mismatch <= 5) c.check(false, "order l=" + std::to_string(l) + " d=" + std::to_string(d), "");
      }
    }
  }
  c.check(order_mismatch == 0, "orders", std::to_string(order_mismatch) + " mismatches");

  u64 doubling_failures = 0;
  for (u64 r = 1; 2 * r <= 2000; r += 2) {
    const u64 q = 2 * r;
    for (const auto& cls : magset::decompose(magset::make_instance(q))) {
      std::set<u64> u1(cls.U[1].begin(), cls.U[1].end()), image0, image1;
      for (u64 x : cls.U[0]) image0.insert(magset::theta2(x, q));
      for (u64 x : cls.U[1]) image1.insert(magset::theta2(x, q));
      const bool ok = image0 == u1 && image1 == u1 && cls.U[0].size() == u1.size();
      if (!ok && ++doubling_failures <= 5) {
        c.check(false, "doubling q=" + std::to_string(q) + " d=" + std::to_string(cls.d), "");
      }
    }
  }
  c.check(doubling_failures == 0, "doubling bijections", std::to_string(doubling_failures) + " failures");

  u64 partition_failures = 0;
  for (u64 q = 1; q <= 10000; ++q) {
    const auto inst = magset::make_instance(q);
    if (!eligible(inst.r)) continue;
    std::vector<int> seen(q, 0);
    bool ok = true;
    for (const auto& cls : magset::decompose(inst)) {
      ok = ok && cls.V.size() == (u64{1} << inst.k) * oracle::phi(cls.d);
      for (unsigned i = 0; i <= inst.k; ++i) {
        for (u64 x : cls.U[i]) {
          ++seen[x];
          const unsigned v = x == 0 ? inst.k : std::min<unsigned>(inst.k, static_cast<unsigned>(__builtin_ctzll(x)));
          ok = ok && inst.r / oracle::gcd(x, inst.r) == cls.d && v == i;
        }
      }
    }
    ok = ok && std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
    if (!ok && ++partition_failures <= 5) c.check(false, "partition q=" + std::to_string(q), "");
  }
  c.check(partition_failures == 0, "partitions", std::to_string(partition_failures) + " failures");
}

// ---- 7. codec ---------------------------------------------------------------
// Messages over the grid {0, 1, 2, q/2, q-1}: the full product when it has at
// most 5^5 words, otherwise every single-coordinate message, every constant
// message and 500 seeded random grid messages.
std::vector<magset::Word> sample_messages(u64 q, std::size_t length) {
  const std::vector<u64> grid = {0, 1, 2, q / 2, q - 1};
  std::vector<magset::Word> out;
  if (length <= 5) {
    magset::Word w(length, 0);
    std::vector<std::size_t> idx(length, 0);
    while (true) {
      for (std::size_t i = 0; i < length; ++i) w[i] = grid[idx[i]];
      out.push_back(w);
      std::size_t i = 0;
      while (i < length && ++idx[i] == grid.size()) idx[i++] = 0;
      if (i == length) break;
    }
    return out;
  }
  for (u64 v : grid) {
    out.emplace_back(length, v);
    for (std::size_t j = 0; j < length; ++j) {
      magset::Word w(length, 0);
      w[j] = v;
      out.push_back(w);
    }
  }
  std::mt19937_64 rng(q);
  for (int i = 0; i < 500; ++i) {
    magset::Word w(length);
    for (auto& x : w) x = grid[rng() % grid.size()];
    out.push_back(w);
  }
  return out;
}

void codec(Criterion& c) {
  for (u64 q : {20, 40, 190}) {
    const auto report = magset::construct(magset::make_instance(q));
    const magset::LinearCode code(report.result, 4);
    u64 trials = 0, failures = 0;
    for (const auto& msg : sample_messages(q, code.length() - 1)) {
      const auto x = code.encode(msg);
      for (std::size_t pos = 0; pos < code.length(); ++pos) {
        for (unsigned e = 1; e <= 4; ++e) {
          auto y = x;
          y[pos] = (y[pos] + e) % q;
          ++trials;
          try {
            const auto d = code.decode(y);
            if (d.word != x || d.error != magset::ErrorLocation{pos, e}) ++failures;
          } catch (const std::exception&) {
            ++failures;
          }
        }
      }
    }
    c.check(failures == 0, "round trip q=" + std::to_string(q),
            std::to_string(failures) + " of " + std::to_string(trials) + " not corrected");
    c.notes.push_back("round trip q=" + std::to_string(q) + ": " + std::to_string(trials) + " single errors");

    magset::ChannelOptions opts;
    opts.trials = 10000;
    opts.error_rate = 1.0;
    opts.seed = 7;
    const auto a = magset::simulate_channel(code, opts);
    const auto b = magset::simulate_channel(code, opts);
    c.check(a.corrected == 10000 && a.injected == 10000, "simulate q=" + std::to_string(q),
            magset::channel_stats_to_json(a));
    c.check(magset::channel_stats_to_json(a) == magset::channel_stats_to_json(b), "determinism q=" + std::to_string(q),
            "two runs with seed 7 differ");
    opts.seed = 8;
    const auto other = magset::simulate_channel(code, opts);
    c.check(other.corrected == 10000, "simulate seed 8 q=" + std::to_string(q), magset::channel_stats_to_json(other));
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: magset_acceptance <path-to-magset-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  std::vector<Criterion> criteria = {
      {1, "golden sets verify", kLimitGolden},
      {2, "exact construction sizes", kLimitExact},
      {3, "table reproduction (table --family 2p --max-p 100)", kLimitTable},
      {4, "exhaustive maximum equals construction, q <= 106", kLimitOracle},
      {5, "divisor-sum lower bound is tight for q = 2r, r <= 53", kLimitProbe},
      {6, "property suites", kLimitProperties},
      {7, "codec round trip and channel simulation", kLimitCodec},
  };
  timed(criteria[0], [&] { golden_sets(criteria[0]); });
  timed(criteria[1], [&] { exact_sizes(criteria[1]); });
  timed(criteria[2], [&] { table_reproduction(criteria[2], cli); });
  timed(criteria[3], [&] { oracle_tightness(criteria[3]); });
  timed(criteria[4], [&] { conjecture_probe(criteria[4]); });
  timed(criteria[5], [&] { property_suites(criteria[5]); });
  timed(criteria[6], [&] { codec(criteria[6]); });

  bool unexpected = false;
  for (const auto& c : criteria) {
    const bool in_time = c.elapsed_s <= c.limit_s;
    const bool pass = c.failures.empty() && in_time;
    std::printf("criterion %d: %s  %s  [%llu cells, %.2f s, limit %.0f s]\n", c.id, pass ? "PASS" : "FAIL",
                c.title.c_str(), static_cast<unsigned long long>(c.cells), c.elapsed_s, c.limit_s);
    for (const auto& f : c.failures) std::printf("    fail: %s\n", f.c_str());
    for (const auto& n : c.notes) std::printf("    note: %s\n", n.c_str());
    if (!in_time) {
      std::printf("    fail: time limit exceeded\n");
      unexpected = true;
    }
    for (const auto& cell : c.failed_cells) {
      if (!kKnownDiscrepancies.count(cell)) unexpected = true;
    }
    for (const auto& known : kKnownDiscrepancies) {
      if (known.rfind(std::to_string(c.id) + ":", 0) == 0 && c.passed_cells.count(known)) {
        std::printf("    fail: known discrepancy %s now passes; remove it from the list\n", known.c_str());
        unexpected = true;
      }
    }
  }
  std::printf("known discrepancies:");
  for (const auto& k : kKnownDiscrepancies) std::printf(" %s", k.c_str());
  std::printf("\n%s\n", unexpected ? "RESULT: unexpected failures" : "RESULT: only known discrepancies fail");
  return unexpected ? 1 : 0;
}
