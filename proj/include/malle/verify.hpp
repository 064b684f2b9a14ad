#ifndef MALLE_VERIFY_HPP
#define MALLE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "malle/predict.hpp"

namespace malle {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct CheckOptions {
  unsigned jobs = 1;
  // Burnside and pole-order cap for the method-agreement check; the largest
  // grid group needs |G| * |Gamma| = 705894 * 6.
  std::size_t burnside_cap = std::size_t{1} << 23;
  std::size_t element_cap = std::size_t{1} << 21;
  std::size_t reductions = 20;
  std::uint64_t seed = 20240611;
};

/// Runs the frozen reference checks in order. Reports from checks 1 to 6 are
/// kept for check 7. on_result is called as each check finishes.
class ReferenceSuite {
public:
  explicit ReferenceSuite(CheckOptions options = {});

  std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {});
  CriterionResult run(int id);

  const std::vector<PredictionReport>& reports() const { return reports_; }

private:
  CriterionResult pair_table_c3_c4();
  CriterionResult pair_count_c4_c4();
  CriterionResult disc_grid();
  CriterionResult base_field_swap();
  CriterionResult embedding_table();
  CriterionResult rad_inequalities();
  CriterionResult method_agreement();
  CriterionResult oracle_flags();
  CriterionResult comparison_reductions();

  PredictionReport predict_expr(const std::string& expr, const ExpSpec& spec, const BaseField& base);

  CheckOptions options_;
  std::vector<PredictionReport> reports_;
};

/// One reduction (pi, phi) over modulus D to (pi', phi') over d.
struct ReductionSample {
  std::string group;
  std::string invariant;
  std::uint64_t big_modulus = 0;
  std::uint64_t modulus = 0;
  std::uint64_t kernel_order = 0;
  std::uint64_t reduced_kernel_order = 0;
  std::uint64_t b = 0;
  std::uint64_t b_reduced = 0;
};

/// Random reductions over small groups (order <= 2000), deterministic in seed.
std::vector<ReductionSample> random_reductions(std::size_t count, std::uint64_t seed);

} // namespace malle

#endif // MALLE_VERIFY_HPP
