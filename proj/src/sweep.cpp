#include "ppforge/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "ppforge/error.hpp"
#include "ppforge/oracle.hpp"

namespace ppforge::sweep {

using families::Family;

namespace {

template <typename T>
void require_non_empty(const std::optional<std::vector<T>>& values, const char* name) {
  if (values && values->empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("empty ") + name + " range");
  }
}

auto row_key(const ResultRow& r) {
  return std::tuple{r.q, static_cast<int>(r.family), r.d, r.k, r.u, r.v, r.r, r.c};
}

}  // namespace

void validate_grid(const SweepGrid& grid) {
  if (grid.families.empty()) throw Error(ErrorCode::kInvalidArgument, "no families given");
  if (grid.qs.empty()) throw Error(ErrorCode::kInvalidArgument, "no q values given");
  for (const std::uint64_t q : grid.qs) {
    const auto pp = num::as_prime_power(q);
    if (!pp) throw Error(ErrorCode::kNotPrime, std::to_string(q) + " is not a prime power");
    if (pp->first == 2) throw Error(ErrorCode::kInvalidArgument, "q must be odd");
  }
  require_non_empty(grid.d, "d");
  require_non_empty(grid.k, "k");
  require_non_empty(grid.r, "r");
  require_non_empty(grid.u, "u");
  require_non_empty(grid.v, "v");
  if (grid.r) {
    for (const auto r : *grid.r) {
      if (r < 1) throw Error(ErrorCode::kInvalidArgument, "r must be >= 1");
    }
  }
}

bool row_less(const ResultRow& a, const ResultRow& b) { return row_key(a) < row_key(b); }

ff::Field FieldCache::get(std::uint64_t q) {
  auto it = fields_.find(q);
  if (it != fields_.end()) return it->second;
  ff::Field field = ff::field_for_q(q, seed_, max_size_);
  fields_.emplace(q, field);
  return field;
}

std::uint64_t SweepResult::disagreements() const {
  return static_cast<std::uint64_t>(
      std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.agree; }));
}

std::uint64_t SweepResult::permutations() const {
  return static_cast<std::uint64_t>(
      std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return r.oracle; }));
}

std::vector<families::FamilyParams> enumerate(const SweepGrid& grid, FieldCache& fields,
                                              std::uint64_t* skipped) {
  validate_grid(grid);
  std::uint64_t rejected = 0;
  std::vector<families::FamilyParams> out;

  std::vector<std::uint64_t> qs = grid.qs;
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  std::vector<Family> fams = grid.families;
  std::sort(fams.begin(), fams.end());
  fams.erase(std::unique(fams.begin(), fams.end()), fams.end());

  for (const std::uint64_t q : qs) {
    const ff::Field field = fields.get(q);
    const unity::MuContext mu = unity::make_mu(field);

    std::vector<std::int64_t> rs;
    if (grid.r) {
      rs = *grid.r;
    } else {
      for (std::int64_t r = 1; r < static_cast<std::int64_t>(field->size()); ++r) rs.push_back(r);
    }

    for (const Family fam : fams) {
      std::vector<ff::Element> cs;
      if (grid.c) {
        if (*grid.c >= field->size()) {
          throw Error(ErrorCode::kInvalidArgument, "c out of range for q = " + std::to_string(q));
        }
        cs.push_back(field->element(*grid.c));
      } else if (const std::uint64_t m = families::c_root_index(fam); m != 0) {
        if ((q + 1) % m == 0) cs = families::valid_c_values(mu, m);
      } else {
        for (std::uint64_t code = 1; code < field->size(); ++code) cs.push_back(field->element(code));
      }

      std::vector<std::uint64_t> ds;
      if (fam == Family::kT5) {
        ds = {4};
      } else if (fam == Family::kT6) {
        ds = {2};
      } else {
        ds = grid.d ? *grid.d : num::divisors(q + 1);
      }
      const std::vector<std::int64_t> odd_defaults{1, 3, 5};
      const auto& us = fam == Family::kT6 && grid.u ? *grid.u : odd_defaults;
      const auto& vs = fam == Family::kT6 && grid.v ? *grid.v : odd_defaults;
      const std::vector<std::int64_t> unused{1};

      for (const std::uint64_t d : ds) {
        const auto ks = fam == Family::kT6 ? std::vector<std::int64_t>{0}
                        : grid.k          ? *grid.k
                                          : families::default_k_window(fam, d);
        for (const std::int64_t k : ks) {
          for (const std::int64_t u : fam == Family::kT6 ? us : unused) {
            for (const std::int64_t v : fam == Family::kT6 ? vs : unused) {
              for (const auto& c : cs) {
                auto params = families::make_params(fam, field, d, k, 1, c, u, v);
                bool ok = families::validate(params).satisfied;
                if (ok) {
                  try {
                    families::build_h(params);
                  } catch (const Error& e) {
                    if (e.code() != ErrorCode::kNegativeExponent) throw;
                    ok = false;
                  }
                }
                if (!ok) {
                  rejected += rs.size();
                  continue;
                }
                for (const std::int64_t r : rs) {
                  params.r = r;
                  out.push_back(params);
                }
              }
            }
          }
        }
      }
    }
  }
  if (skipped) *skipped = rejected;
  return out;
}

ResultRow evaluate_tuple(const families::FamilyParams& params, bool timing,
                         const oracle::LogTable* table) {
  const auto start = std::chrono::steady_clock::now();
  const bool predicted = families::predicate(params);
  const families::BuiltF f = families::build_f(params);
  const bool actual = table != nullptr && table->field() == params.field
                          ? oracle::is_permutation_of_field(*table, f.literal).is_bijection
                          : oracle::is_permutation_of_field(*params.field, f.literal).is_bijection;
  const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);

  const bool t6 = params.tag == Family::kT6;
  return ResultRow{params.tag,
                   params.field->q(),
                   params.d,
                   params.k,
                   t6 ? params.u6 : 0,
                   t6 ? params.v6 : 0,
                   params.r,
                   ff::to_canonical(params.c),
                   predicted,
                   actual,
                   predicted == actual,
                   f.reduced.to_string(),
                   timing ? static_cast<std::uint64_t>(elapsed.count()) : 0};
}

SweepResult run_sweep(const SweepGrid& grid, FieldCache& fields, const SweepOptions& options) {
  SweepResult result;
  const auto tuples = enumerate(grid, fields, &result.skipped);
  result.rows.resize(tuples.size());

  std::map<const ff::FieldSpec*, oracle::LogTable> tables;
  for (const auto& t : tuples) {
    if (!tables.count(t.field.get())) tables.emplace(t.field.get(), oracle::LogTable(t.field));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      result.rows[i] = evaluate_tuple(tuples[i], options.timing, &tables.at(tuples[i].field.get()));
    }
  };
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  std::sort(result.rows.begin(), result.rows.end(), row_less);
  return result;
}

std::string csv_header() {
  return "family,q,d,k,u,v,r,c,predicate,oracle,agree,reduced_f,elapsed_us";
}

std::string to_csv(const ResultRow& row) {
  const bool t6 = row.family == Family::kT6;
  std::ostringstream out;
  out << families::family_name(row.family) << ',' << row.q << ',' << row.d << ',';
  if (!t6) out << row.k;
  out << ',';
  if (t6) out << row.u;
  out << ',';
  if (t6) out << row.v;
  out << ',' << row.r << ',' << row.c << ',' << (row.predicate ? "true" : "false") << ','
      << (row.oracle ? "true" : "false") << ',' << (row.agree ? "true" : "false") << ','
      << row.reduced << ',' << row.elapsed_us;
  return out.str();
}

std::string to_jsonl(const ResultRow& row) {
  const bool t6 = row.family == Family::kT6;
  nlohmann::ordered_json j;
  j["family"] = families::family_name(row.family);
  j["q"] = row.q;
  j["d"] = row.d;
  j["k"] = t6 ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(row.k);
  j["u"] = t6 ? nlohmann::ordered_json(row.u) : nlohmann::ordered_json(nullptr);
  j["v"] = t6 ? nlohmann::ordered_json(row.v) : nlohmann::ordered_json(nullptr);
  j["r"] = row.r;
  j["c"] = row.c;
  j["predicate"] = row.predicate;
  j["oracle"] = row.oracle;
  j["agree"] = row.agree;
  j["reduced_f"] = row.reduced;
  j["elapsed_us"] = row.elapsed_us;
  return j.dump();
}

}  // namespace ppforge::sweep
