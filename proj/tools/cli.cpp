#include "cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ppforge/error.hpp"
#include "ppforge/families.hpp"
#include "ppforge/sweep.hpp"

namespace ppforge::cli {
namespace {

using families::Family;

// Thrown for malformed parameter strings; maps to exit 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format = "csv";
  unsigned jobs = 0;
  std::uint64_t max_field = ff::kDefaultMaxFieldSize;
  std::string field_file;
  bool timing = false;
};

using ParamMap = std::map<std::string, std::string>;

ParamMap parse_params(const std::vector<std::string>& tokens,
                      std::initializer_list<std::string_view> allowed) {
  ParamMap out;
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UsageError("unknown parameter '" + key + "'");
    }
    if (!out.emplace(key, token.substr(eq + 1)).second) throw UsageError("duplicate parameter '" + key + "'");
  }
  return out;
}

std::int64_t parse_int(std::string_view text, std::string_view key) {
  std::int64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw UsageError("bad integer for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == text.npos ? text.npos : pos - start));
    if (pos == text.npos) break;
    start = pos + 1;
  }
  return parts;
}

// "1,3,5", "1..167" or a mix of both.
std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view key) {
  std::vector<std::int64_t> out;
  for (const auto part : split(text, ',')) {
    const auto dots = part.find("..");
    if (dots == part.npos) {
      out.push_back(parse_int(part, key));
      continue;
    }
    const auto lo = parse_int(part.substr(0, dots), key);
    const auto hi = parse_int(part.substr(dots + 2), key);
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty " + std::string(key) + " range");
  return out;
}

// "13", "3^2" or a comma list of those.
std::vector<std::uint64_t> parse_q_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  for (const auto part : split(text, ',')) {
    const auto caret = part.find('^');
    std::uint64_t q = 0;
    if (caret == part.npos) {
      q = static_cast<std::uint64_t>(parse_int(part, "q"));
    } else {
      const auto p = parse_int(part.substr(0, caret), "q");
      const auto h = parse_int(part.substr(caret + 1), "q");
      if (p < 2 || h < 1) throw UsageError("bad prime power '" + std::string(part) + "'");
      const auto value = num::checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(h),
                                          std::uint64_t{1} << 40);
      if (!value) throw UsageError("q too large: '" + std::string(part) + "'");
      q = *value;
    }
    const auto pp = num::as_prime_power(q);
    if (!pp || pp->first == 2) throw UsageError("q must be an odd prime power, got " + std::to_string(q));
    out.push_back(q);
  }
  return out;
}

std::vector<Family> parse_family_list(std::string_view text) {
  if (text == "all") return {std::begin(families::kAllFamilies), std::end(families::kAllFamilies)};
  std::vector<Family> out;
  for (const auto part : split(text, ',')) {
    const auto f = families::parse_family(part);
    if (!f) throw UsageError("unknown family '" + std::string(part) + "'");
    out.push_back(*f);
  }
  return out;
}

const std::string& require(const ParamMap& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw UsageError("missing parameter '" + key + "'");
  return it->second;
}

std::uint64_t resolve_seed() {
  const char* env = std::getenv("PPFORGE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  const auto v = parse_int(env, "PPFORGE_SEED");
  if (v < 0) throw UsageError("PPFORGE_SEED must be non-negative");
  return static_cast<std::uint64_t>(v);
}

sweep::FieldCache make_cache(const GlobalOptions& opts) {
  sweep::FieldCache cache(resolve_seed(), opts.max_field);
  if (!opts.field_file.empty()) {
    std::ifstream in(opts.field_file);
    if (!in) throw UsageError("cannot read field file '" + opts.field_file + "'");
    std::stringstream text;
    text << in.rdbuf();
    cache.put(ff::parse_field_description(text.str(), opts.max_field));
  }
  return cache;
}

void emit_rows(const std::vector<sweep::ResultRow>& rows, const GlobalOptions& opts,
               std::ostream& out) {
  if (opts.format == "csv") {
    out << sweep::csv_header() << "\n";
    for (const auto& row : rows) out << sweep::to_csv(row) << "\n";
  } else {
    for (const auto& row : rows) out << sweep::to_jsonl(row) << "\n";
  }
}

int cmd_field_info(const std::vector<std::string>& tokens, const GlobalOptions& opts,
                   const std::string& output, std::ostream& out) {
  const ParamMap params = parse_params(tokens, {"q", "p", "h"});
  ff::Field field;
  if (params.empty() && !opts.field_file.empty()) {
    std::ifstream in(opts.field_file);
    std::stringstream text;
    text << in.rdbuf();
    field = ff::parse_field_description(text.str(), opts.max_field);
  } else {
    std::uint64_t q = 0;
    if (params.count("q")) {
      if (params.count("p") || params.count("h")) throw UsageError("give either q or p and h");
      const auto qs = parse_q_list(params.at("q"));
      if (qs.size() != 1) throw UsageError("field-info takes a single q");
      q = qs.front();
    } else {
      const auto p = parse_int(require(params, "p"), "p");
      const auto h = params.count("h") ? parse_int(params.at("h"), "h") : 1;
      if (p < 2 || h < 1) throw UsageError("p and h must be positive");
      if (!num::is_prime(static_cast<std::uint64_t>(p))) {
        throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
      }
      const auto value = num::checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(h),
                                          std::uint64_t{1} << 40);
      if (!value) throw Error(ErrorCode::kSizeExceeded, "q too large");
      q = *value;
    }
    auto cache = make_cache(opts);
    field = cache.get(q);
  }

  const std::string description = ff::format_field_description(*field);
  std::ostringstream factors;
  for (const auto& [prime, e] : field->order_factorization()) {
    factors << (factors.tellp() > 0 ? "*" : "") << prime;
    if (e > 1) factors << "^" << e;
  }
  out << "# q=" << field->q() << " size=" << field->size() << " order=" << field->order()
      << " order_factors=" << factors.str() << "\n";
  out << description;
  if (!output.empty()) {
    std::ofstream file(output);
    if (!file) throw UsageError("cannot write '" + output + "'");
    file << description;
  }
  return 0;
}

int cmd_check(const std::vector<std::string>& tokens, const GlobalOptions& opts,
              std::ostream& out, std::ostream& err) {
  const ParamMap params = parse_params(tokens, {"family", "q", "d", "k", "r", "c", "u", "v"});
  const auto fam = families::parse_family(require(params, "family"));
  if (!fam) throw UsageError("unknown family '" + params.at("family") + "'");
  const auto qs = parse_q_list(require(params, "q"));
  if (qs.size() != 1) throw UsageError("check takes a single q");

  auto cache = make_cache(opts);
  const ff::Field field = cache.get(qs.front());

  std::uint64_t d = 0;
  std::int64_t k = 0, u = 1, v = 1;
  if (*fam == Family::kT6) {
    u = parse_int(require(params, "u"), "u");
    v = parse_int(require(params, "v"), "v");
  } else {
    if (*fam != Family::kT5) {
      const auto dv = parse_int(require(params, "d"), "d");
      if (dv < 1) throw UsageError("d must be positive");
      d = static_cast<std::uint64_t>(dv);
    }
    k = parse_int(require(params, "k"), "k");
  }
  const auto r = parse_int(require(params, "r"), "r");
  if (r < 1) throw UsageError("r must be >= 1");
  const auto c_code = parse_int(require(params, "c"), "c");
  if (c_code < 0 || static_cast<std::uint64_t>(c_code) >= field->size()) {
    throw UsageError("c must be a canonical code in [0, q^2)");
  }

  const auto tuple = families::make_params(*fam, field, d, k, r,
                                           field->element(static_cast<std::uint64_t>(c_code)), u, v);
  const auto report = families::validate(tuple);
  if (!report.satisfied) {
    err << "hypotheses not satisfied:\n";
    for (const auto& violation : report.violations) err << "  " << violation << "\n";
    return kExitHypotheses;
  }
  const auto row = sweep::evaluate_tuple(tuple, opts.timing);
  emit_rows({row}, opts, out);
  if (!row.agree) return kExitDisagreement;
  return row.oracle ? kExitPermutation : kExitNotPermutation;
}

sweep::SweepGrid parse_grid(const std::vector<std::string>& tokens) {
  const ParamMap params = parse_params(tokens, {"family", "q", "d", "k", "r", "c", "u", "v"});
  sweep::SweepGrid grid;
  grid.families = parse_family_list(require(params, "family"));
  grid.qs = parse_q_list(require(params, "q"));
  auto opt_list = [&params](const std::string& key) -> std::optional<std::vector<std::int64_t>> {
    const auto it = params.find(key);
    if (it == params.end() || it->second == "all") return std::nullopt;
    return parse_int_list(it->second, key);
  };
  if (const auto ds = opt_list("d")) {
    grid.d.emplace();
    for (const auto d : *ds) {
      if (d < 1) throw UsageError("d must be positive");
      grid.d->push_back(static_cast<std::uint64_t>(d));
    }
  }
  grid.k = opt_list("k");
  grid.r = opt_list("r");
  grid.u = opt_list("u");
  grid.v = opt_list("v");
  if (const auto it = params.find("c"); it != params.end() && it->second != "all") {
    const auto c = parse_int(it->second, "c");
    if (c < 0) throw UsageError("c must be a canonical code");
    grid.c = static_cast<std::uint64_t>(c);
  }
  if (grid.r) {
    for (const auto r : *grid.r) {
      if (r < 1) throw UsageError("r must be >= 1");
    }
  }
  return grid;
}

int cmd_sweep(const std::vector<std::string>& tokens, const GlobalOptions& opts, bool summary_only,
              std::ostream& out, std::ostream& err) {
  const auto grid = parse_grid(tokens);
  auto cache = make_cache(opts);
  const auto result = sweep::run_sweep(grid, cache, {opts.jobs, opts.timing});
  if (!summary_only) emit_rows(result.rows, opts, out);
  err << "tuples=" << result.rows.size() << " permutations=" << result.permutations()
      << " disagreements=" << result.disagreements() << " skipped=" << result.skipped << "\n";
  return result.disagreements() == 0 ? 0 : kExitDisagreement;
}

int cmd_search(const std::vector<std::string>& tokens, const GlobalOptions& opts,
               std::ostream& out, std::ostream& err) {
  const auto grid = parse_grid(tokens);
  auto cache = make_cache(opts);
  const auto result = sweep::run_sweep(grid, cache, {opts.jobs, opts.timing});
  std::vector<sweep::ResultRow> hits;
  for (const auto& row : result.rows) {
    if (row.oracle) hits.push_back(row);
  }
  emit_rows(hits, opts, out);
  if (result.disagreements() != 0) {
    err << "warning: " << result.disagreements() << " tuples where criterion and oracle disagree\n";
  }
  return 0;
}

int cmd_identities(const std::vector<std::string>& tokens, const GlobalOptions& opts,
                   std::ostream& out) {
  const ParamMap params = parse_params(tokens, {"q", "k"});
  const auto qs = parse_q_list(require(params, "q"));
  const auto ks = params.count("k") ? parse_int_list(params.at("k"), "k")
                                    : std::vector<std::int64_t>{0, 1};
  auto cache = make_cache(opts);
  bool all_pass = true;
  auto line = [&out, &all_pass](std::uint64_t q, const std::string& what, bool pass) {
    out << "q=" << q << " " << what << " " << (pass ? "PASS" : "FAIL") << "\n";
    all_pass = all_pass && pass;
  };
  for (const auto q : qs) {
    const ff::Field field = cache.get(q);
    for (const auto d : num::divisors(q + 1)) {
      if (num::gcd(static_cast<std::int64_t>(d), static_cast<std::int64_t>((q + 1) / d)) != 1) continue;
      for (const auto k : ks) {
        const std::string tag = "d=" + std::to_string(d) + " k=" + std::to_string(k);
        line(q, tag + " lemma=coset-v", families::lemma_v_identity(field, d, k));
        line(q, tag + " lemma=coset-u", families::lemma_u_identity(field, d, k));
      }
    }
    if (q % 8 == 3) {
      line(q, "d=4 lemma=four-class", families::lemma_d4_identity(field));
    } else {
      out << "q=" << q << " d=4 lemma=four-class SKIP (q mod 8 = " << q % 8 << ", needs 3)\n";
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ppforge: permutation trinomials over F_{q^2} checked against exhaustive oracles"};
  app.require_subcommand(1);

  GlobalOptions opts;
  opts.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--format", opts.format, "Row format")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--max-field", opts.max_field, "Largest q^2 accepted");
  app.add_option("--field-file", opts.field_file, "Field description to use for its q");
  app.add_flag("--timing", opts.timing, "Report elapsed microseconds per row");

  std::vector<std::string> tokens;
  std::string output;
  bool summary_only = false;

  auto* field_info = app.add_subcommand("field-info", "Build a field and print its description");
  field_info->add_option("params", tokens, "q=<q> | p=<p> h=<h>");
  field_info->add_option("--output", output, "Also write the description to this file");
  auto* check = app.add_subcommand("check", "Criterion vs oracle for one family instance");
  check->add_option("params", tokens, "family= q= d= k= r= c= (T6: u= v=)");
  auto* sweep_cmd = app.add_subcommand("sweep", "Criterion vs oracle over a parameter grid");
  sweep_cmd->add_option("params", tokens, "family= q= [d=] [k=] [r=] [c=] [u=] [v=]");
  sweep_cmd->add_flag("--summary-only", summary_only, "Print only the summary line");
  auto* identities = app.add_subcommand("identities", "Audit the exponent identities");
  identities->add_option("params", tokens, "q=<list> [k=<list>]");
  auto* search = app.add_subcommand("search", "List oracle-confirmed permutations in a grid");
  search->add_option("params", tokens, "family= q= [d=] [k=] [r=] [c=] [u=] [v=]");
  for (auto* sub : {field_info, check, sweep_cmd, identities, search}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*field_info) return cmd_field_info(tokens, opts, output, out);
    if (*check) return cmd_check(tokens, opts, out, err);
    if (*sweep_cmd) return cmd_sweep(tokens, opts, summary_only, out, err);
    if (*identities) return cmd_identities(tokens, opts, out);
    if (*search) return cmd_search(tokens, opts, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ppforge::cli
