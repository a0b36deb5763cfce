#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pdabc/kernel.hpp"
#include "pdabc/simulator.hpp"

namespace pdabc {

double linf_error(const std::vector<double>& a, const std::vector<double>& b);

// Least-squares slope of log(error) against log(dt). Nonpositive entries are
// dropped (with a note on stderr); fewer than two survivors is an error.
double fit_rate(const std::vector<double>& dts, const std::vector<double>& errors);

enum class Budget { quick, full };

struct ReportCell {
  double t = 0.0;
  double dt = 0.0;
  double error = 0.0;
  double published = 0.0;         // 0 when the cell has no published value
  bool excluded = false;          // known-bad published entries, not gated
  bool pass = true;
};

struct ConvergenceReport {
  int table_id = 0;
  std::string quantity;           // displacement | velocity | kernel
  std::string reference;
  std::vector<double> times;
  std::vector<double> dts;
  std::vector<std::vector<double>> errors;       // [time][dt]
  std::vector<double> fitted_rate;               // per time
  std::vector<std::vector<double>> pairwise_rate;
  std::vector<ReportCell> cells;
  bool pass = true;
  std::vector<std::string> notes;
};

// Kernel tables are the expensive part of every scenario sweep; one table per
// (stencil, dt) covers all runs with t_end below its horizon.
class KernelCache {
 public:
  const KernelTable& get(const StencilCoefficients& s, double dt, double T);

 private:
  std::map<std::pair<int, long>, KernelTable> tables_;   // (K, dt in attoseconds-ish ticks)
};

ConvergenceReport reproduce_table(int table_id, Budget budget, KernelCache* cache = nullptr,
                                  std::ostream* log = nullptr);

// Peak right-end amplitude of the truncated seismic run over the peak the
// pulse attains at the same point when the bar continues past it.
double seismic_amplification(double dt, KernelCache* cache = nullptr, std::ostream* log = nullptr);

void write_report_csv(const ConvergenceReport& report, const std::string& path);

}  // namespace pdabc
