#include "agan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "agan/errors.hpp"
#include "agan/format.hpp"

namespace agan {

namespace {

// Nearest-rank resample of sorted values to m order statistics.
std::vector<double> resample_sorted(const std::vector<double>& sorted,
                                    std::size_t m) {
  std::vector<double> out(m);
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i * n / m;
    out[i] = sorted[j];
  }
  return out;
}

}  // namespace

double wasserstein1_1d(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw DimensionError("Wasserstein distance of an empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a.size() != b.size()) {
    const std::size_t m = std::max(a.size(), b.size());
    a = resample_sorted(a, m);
    b = resample_sorted(b, m);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::fabs(a[i] - b[i]);
  }
  return acc / static_cast<double>(a.size());
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw DimensionError("KS statistic of an empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double stat = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    stat = std::max(stat, std::fabs(static_cast<double>(i) / na -
                                    static_cast<double>(j) / nb));
  }
  return stat;
}

std::vector<HistogramRow> paired_histogram(const std::vector<double>& real,
                                           const std::vector<double>& generated,
                                           int bins) {
  if (bins < 1 || real.empty() || generated.empty()) {
    throw DimensionError("histogram needs samples and at least one bin");
  }
  double lo = real[0], hi = real[0];
  for (double v : real) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (double v : generated) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) hi = lo + 1.0;
  const double width = (hi - lo) / static_cast<double>(bins);

  std::vector<HistogramRow> rows(bins);
  for (int k = 0; k < bins; ++k) {
    rows[k] = {lo + width * k, lo + width * (k + 1), 0, 0};
  }
  auto bin_of = [&](double v) {
    int k = static_cast<int>((v - lo) / width);
    return std::clamp(k, 0, bins - 1);
  };
  for (double v : real) rows[bin_of(v)].real_count += 1;
  for (double v : generated) rows[bin_of(v)].generated_count += 1;
  return rows;
}

std::string histogram_to_csv(const std::vector<HistogramRow>& rows) {
  std::ostringstream out;
  out << "bin_left,bin_right,real_count,generated_count\n";
  for (const HistogramRow& r : rows) {
    out << format_g17(r.bin_left) << ',' << format_g17(r.bin_right) << ','
        << r.real_count << ',' << r.generated_count << '\n';
  }
  return out.str();
}

}  // namespace agan
