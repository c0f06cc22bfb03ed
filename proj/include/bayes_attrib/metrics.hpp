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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bayes_attrib {

// tau-b = (C - D) / sqrt((n0 - t_a)(n0 - t_b)), ties corrected on both sides.
// Throws kInvalidArgument on length mismatch or n < 2 and kDomain when one
// side is fully tied.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

double pearson(std::span<const double> a, std::span<const double> b);

struct AgreementReport {
  std::string method_a;
  std::string method_b;
  std::size_t n_rows = 0;       // rows with a defined tau
  std::size_t skipped_rows = 0; // rows whose tau was undefined
  double rowwise_kendall_mean = 0;
  double rowwise_kendall_std = 0;  // population std over rows
  double global_pearson = 0;
  double global_kendall = 0;
};

// Per-row tau-b between A[r] and B[r]; undefined rows are skipped and counted.
// Fills n_rows, skipped_rows, rowwise_kendall_mean/std.
void rowwise_agreement(std::span<const std::vector<double>> a,
                       std::span<const std::vector<double>> b, AgreementReport& report);

// Pearson and Kendall between two global importance vectors.
void global_agreement(std::span<const double> global_a, std::span<const double> global_b,
                      AgreementReport& report);

}  // namespace bayes_attrib
