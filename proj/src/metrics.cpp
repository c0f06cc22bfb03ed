/*
 * Copyright 2026 The bayes-attrib Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bayes_attrib/metrics.hpp"

#include <cmath>

#include "bayes_attrib/error.hpp"

namespace bayes_attrib {
namespace {

void check_lengths(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) {
    fail(ErrorKind::kInvalidArgument, std::string(what) + ": length mismatch (" +
                                          std::to_string(a.size()) + " vs " +
                                          std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) fail(ErrorKind::kInvalidArgument, std::string(what) + ": needs n >= 2");
}

int sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b, "kendall_tau_b");
  const std::size_t n = a.size();
  // Pairs are counted directly; d is small (the number of variables).
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sa = sign(a[i] - a[j]);
      const int sb = sign(b[i] - b[j]);
      if (sa == 0) ++ties_a;
      if (sb == 0) ++ties_b;
      if (sa != 0 && sb != 0) (sa == sb ? concordant : discordant)++;
    }
  }
  const auto n0 = static_cast<long long>(n * (n - 1) / 2);
  // One square root of the product: exact whenever the product is a square.
  const double denom =
      std::sqrt(static_cast<double>(n0 - ties_a) * static_cast<double>(n0 - ties_b));
  if (denom == 0) fail(ErrorKind::kDomain, "kendall_tau_b: undefined, one side is fully tied");
  return static_cast<double>(concordant - discordant) / denom;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b, "pearson");
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) fail(ErrorKind::kDomain, "pearson: zero variance");
  double r = sab / (std::sqrt(saa) * std::sqrt(sbb));
  return std::fmax(-1.0, std::fmin(1.0, r));
}

void rowwise_agreement(std::span<const std::vector<double>> a,
                       std::span<const std::vector<double>> b, AgreementReport& report) {
  if (a.size() != b.size()) fail(ErrorKind::kInvalidArgument, "rowwise_agreement: row count mismatch");
  std::vector<double> taus;
  taus.reserve(a.size());
  report.skipped_rows = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) {
      fail(ErrorKind::kInvalidArgument,
           "rowwise_agreement: row " + std::to_string(r) + " has mismatched widths");
    }
    if (a[r].size() < 2) fail(ErrorKind::kInvalidArgument, "rowwise_agreement: needs d >= 2");
    try {
      taus.push_back(kendall_tau_b(a[r], b[r]));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDomain) throw;
      ++report.skipped_rows;
    }
  }
  if (taus.empty()) fail(ErrorKind::kDomain, "rowwise_agreement: tau is undefined on every row");
  // Fixed-order two-pass summation.
  double mean = 0;
  for (double t : taus) mean += t;
  mean /= static_cast<double>(taus.size());
  double var = 0;
  for (double t : taus) var += (t - mean) * (t - mean);
  var /= static_cast<double>(taus.size());
  report.n_rows = taus.size();
  report.rowwise_kendall_mean = mean;
  report.rowwise_kendall_std = std::sqrt(var);
}

void global_agreement(std::span<const double> global_a, std::span<const double> global_b,
                      AgreementReport& report) {
  report.global_pearson = pearson(global_a, global_b);
  report.global_kendall = kendall_tau_b(global_a, global_b);
}

}  // namespace bayes_attrib
