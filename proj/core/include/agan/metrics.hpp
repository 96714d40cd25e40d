#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace agan {

// Wasserstein-1 distance between two empirical samples: the mean absolute
// difference of order statistics. Inputs need not be pre-sorted. Unequal
// lengths are resampled to the larger size by nearest-rank quantiles.
double wasserstein1_1d(std::vector<double> a, std::vector<double> b);

// Two-sample Kolmogorov-Smirnov statistic, exact over the merged support.
double ks_statistic(std::vector<double> a, std::vector<double> b);

struct HistogramRow {
  double bin_left;
  double bin_right;
  std::size_t real_count;
  std::size_t generated_count;
};

// Joint histogram of real and generated samples over `bins` equal-width bins
// spanning the pooled range.
std::vector<HistogramRow> paired_histogram(const std::vector<double>& real,
                                           const std::vector<double>& generated,
                                           int bins = 30);

// CSV with header `bin_left,bin_right,real_count,generated_count`.
std::string histogram_to_csv(const std::vector<HistogramRow>& rows);

}  // namespace agan
