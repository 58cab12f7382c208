#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppforge/families.hpp"
#include "ppforge/ffcore.hpp"
#include "ppforge/oracle.hpp"

// Grid sweeps that run every admissible family instance through both the
// gcd criterion and the exhaustive oracle.
namespace ppforge::sweep {

struct SweepGrid {
  std::vector<families::Family> families;
  std::vector<std::uint64_t> qs;
  /// Unset: every divisor of q + 1 (T5 and T6 use their fixed d).
  std::optional<std::vector<std::uint64_t>> d;
  /// Unset: families::default_k_window.
  std::optional<std::vector<std::int64_t>> k;
  /// Unset: [1, q^2 - 1].
  std::optional<std::vector<std::int64_t>> r;
  /// T6 exponents. Unset: {1, 3, 5}.
  std::optional<std::vector<std::int64_t>> u;
  std::optional<std::vector<std::int64_t>> v;
  /// Unset: every c allowed by the family hypothesis (all of F^* for T3/T4).
  std::optional<std::uint64_t> c;
};

/// Throws InvalidArgument / NotPrime on malformed grids.
void validate_grid(const SweepGrid& grid);

struct ResultRow {
  families::Family family;
  std::uint64_t q;
  std::uint64_t d;
  std::int64_t k;
  std::int64_t u;
  std::int64_t v;
  std::int64_t r;
  std::uint64_t c;
  bool predicate;
  bool oracle;
  bool agree;
  std::string reduced;
  std::uint64_t elapsed_us;
};

/// Order used for every emitted table: (q, family, d, k, u, v, r, c).
bool row_less(const ResultRow& a, const ResultRow& b);

/// One field per q, built on first use with a fixed seed.
class FieldCache {
 public:
  explicit FieldCache(std::uint64_t seed = 0,
                      std::uint64_t max_size = ff::kDefaultMaxFieldSize)
      : seed_(seed), max_size_(max_size) {}

  ff::Field get(std::uint64_t q);
  /// Use this field for its q instead of building one.
  void put(ff::Field field) { fields_[field->q()] = std::move(field); }

 private:
  std::uint64_t seed_;
  std::uint64_t max_size_;
  std::map<std::uint64_t, ff::Field> fields_;
};

struct SweepOptions {
  unsigned jobs = 1;
  /// Record elapsed microseconds per row; off keeps output reproducible.
  bool timing = false;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  /// Grid points rejected by the family hypotheses or by negative exponents.
  std::uint64_t skipped = 0;

  std::uint64_t disagreements() const;
  std::uint64_t permutations() const;
};

/// Admissible parameter tuples of the grid, in row order.
std::vector<families::FamilyParams> enumerate(const SweepGrid& grid, FieldCache& fields,
                                              std::uint64_t* skipped = nullptr);

/// Runs criterion and oracle for one tuple. With a log table for the
/// tuple's field the oracle uses the table fast path.
ResultRow evaluate_tuple(const families::FamilyParams& params, bool timing = false,
                         const oracle::LogTable* table = nullptr);

SweepResult run_sweep(const SweepGrid& grid, FieldCache& fields, const SweepOptions& options);

std::string csv_header();
std::string to_csv(const ResultRow& row);
std::string to_jsonl(const ResultRow& row);

}  // namespace ppforge::sweep
