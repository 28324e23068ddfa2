#pragma once

// The oracle verification suite: every closed form and operator identity
// checked against brute-force numerics, reported as one record per check.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qgrav::oracle {

struct VerificationRecord {
  enum class Bound { Upper, Lower };  // pass when residual <= tol, or >= tol for negative controls

  std::string check;
  std::vector<std::pair<std::string, double>> params;
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::Upper;
  bool pass = false;
  std::string note;
};

VerificationRecord make_record(std::string check, std::vector<std::pair<std::string, double>> params,
                               double residual, double tolerance,
                               VerificationRecord::Bound bound = VerificationRecord::Bound::Upper,
                               std::string note = {});

/// One JSON object per line.
std::string to_json_line(const VerificationRecord& r);
void write_json_lines(std::ostream& out, const std::vector<VerificationRecord>& records);

struct SuiteOptions {
  std::uint64_t seed = 20260601;
  int random_points = 5;
  bool include_convergence = true;  // grid-halving sweep (slowest part)
};

std::vector<VerificationRecord> run_verification_suite(const SuiteOptions& opts = {});

}  // namespace qgrav::oracle
