/*
   Copyright 2026 The cabl Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Special functions and the distribution tails built on them. Accuracy
// target is 1e-10 absolute over the probability range.

namespace cabl::stats {

double log_gamma(double x);
double digamma(double x);
double trigamma(double x);

// Regularized lower/upper incomplete gamma P(a, x), Q(a, x). a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b). a, b > 0, 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

double normal_cdf(double z);
double normal_sf(double z);

double student_t_cdf(double t, double df);
double student_t_sf(double t, double df);

double chi_squared_cdf(double x, double k);
double chi_squared_sf(double x, double k);

double f_cdf(double x, double d1, double d2);
double f_sf(double x, double d1, double d2);

}  // namespace cabl::stats
