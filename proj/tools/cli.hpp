#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "msr/codes.hpp"

namespace msr::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kBudget = 3 };

/// Runs one command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Table1Row {
  int n = 0, k = 0, m = 0;
  std::string modulus;
  std::string alpha;
  int listed_bound = 0;  // extension degree printed in the table's bound column

  bool alpha_primitive = false;
  bool alpha_normal = false;
  std::vector<int> default_rows;
  bool default_verified = false;
  std::vector<int> rows;  // first row selection that verified, else the default
  bool verified = false;
  std::size_t determinants = 0;
  std::uint64_t formula_bound = 0;  // q^{n(m+2)-1}
  std::string note;

  bool passed() const { return alpha_primitive && alpha_normal && verified; }
};

/// The five published configurations, unevaluated.
std::vector<Table1Row> table1_rows();

/// Certifies alpha, then tries row selections in lexicographic order from
/// 0..k-1 until verify_msr passes.
void evaluate(Table1Row& row);

std::string table1_csv(const std::vector<Table1Row>& rows);

}  // namespace msr::cli
