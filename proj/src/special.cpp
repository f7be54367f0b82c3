// Copyright 2026 The qsbits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsbits/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qsbits/numbers.hpp"

namespace qsbits {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640561764;
constexpr double kBorweinLimit = 120.0;

// B_{2k} / (2k (2k-1)) for the Stirling series.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0, -174611.0 / 125400.0};

bool is_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// Stirling series for |z| >= 15, |arg z| < pi/2.
Complex log_gamma_stirling(Complex z) {
  Complex out = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex p = inv;
  for (double c : kStirling) {
    out += c * p;
    p *= inv2;
  }
  return out;
}

Complex log1p_complex(Complex u) {
  const Complex v = 1.0 + u;
  if (v == Complex(1.0, 0.0)) return u;
  return std::log(v) * u / (v - 1.0);
}

// log sin(pi z), finite for large |Im z|.
Complex log_sin_pi(Complex z) {
  if (std::abs(z.imag()) < 30.0) return std::log(std::sin(kPi * z));
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / 2i; keep the dominant exponential.
  const Complex i(0.0, 1.0);
  if (z.imag() > 0.0) {
    return -i * kPi * z + std::log(Complex(0.0, 0.5)) + log1p_complex(-std::exp(2.0 * i * kPi * z));
  }
  return i * kPi * z + std::log(Complex(0.0, -0.5)) + log1p_complex(-std::exp(-2.0 * i * kPi * z));
}

// B_{2k} / (2k)! for Euler-Maclaurin, computed once from the exact table.
const std::vector<double>& em_coefficients() {
  static const std::vector<double> coeffs = [] {
    constexpr int kTerms = 24;
    const BernoulliTable table(2 * kTerms);
    std::vector<double> out;
    double factorial = 1.0;
    for (int k = 1; k <= kTerms; ++k) {
      factorial *= static_cast<double>(2 * k - 1) * (2 * k);
      out.push_back(table[static_cast<std::size_t>(2 * k)].to_double() / factorial);
    }
    return out;
  }();
  return coeffs;
}

// Normalised Borwein weights e_k = (d_n - d_k) / d_n, k = 0..n-1.
std::vector<double> borwein_weights(int n) {
  std::vector<double> d(static_cast<std::size_t>(n + 1));
  double term = 1.0;  // n * (n+i-1)! 4^i / ((n-i)! (2i)!) at i = 0
  double acc = term;
  d[0] = acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
    acc += term;
    d[i] = acc;
  }
  std::vector<double> e(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) e[k] = (d[n] - d[k]) / d[n];
  return e;
}

int borwein_terms(Complex s) { return 30 + static_cast<int>(std::ceil(1.3 * std::abs(s.imag()))); }

}  // namespace

Complex log_gamma(Complex z) {
  if (is_pole(z)) throw std::domain_error("log_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  Complex shift_log(0.0, 0.0);
  while (std::abs(z) < 15.0) {
    shift_log += std::log(z);
    z += 1.0;
  }
  return log_gamma_stirling(z) - shift_log;
}

Complex complex_gamma(Complex z) {
  if (is_pole(z)) throw std::domain_error("complex_gamma: pole at nonpositive integer");
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) return {std::tgamma(z.real()), 0.0};
  return std::exp(log_gamma(z));
}

Complex log_gamma_shift(double x, Complex w) {
  const Complex z(x, 0.0);
  const Complex zw = z + w;
  Complex out = (x - 0.5) * log1p_complex(w / z) + w * std::log(zw) - w;
  const Complex inv_a = 1.0 / zw;
  const Complex inv_b = 1.0 / z;
  Complex pa = inv_a;
  Complex pb = inv_b;
  for (double c : kStirling) {
    out += c * (pa - pb);
    pa *= inv_a * inv_a;
    pb *= inv_b * inv_b;
  }
  return out;
}

Complex factorial_gamma_ratio(long n, Complex z, long d) {
  if (n < 0) throw std::invalid_argument("factorial_gamma_ratio: negative n");
  const long count = n + d;  // number of factors (z + k) in the denominator
  if (count < 0) throw std::invalid_argument("factorial_gamma_ratio: n + d must be nonnegative");
  const Complex w = z + static_cast<double>(d - 1);
  const double x = static_cast<double>(n) + 1.0;
  if (x >= 2.0 * std::abs(w) + 30.0) {
    // n! / Gamma(z + n + d) = Gamma(x) / Gamma(x + w), x = n + 1.
    return std::exp(log_gamma(z) - log_gamma_shift(x, w));
  }
  Complex out(1.0, 0.0);
  const long steps = std::max(n, count);
  for (long k = 0; k < steps; ++k) {
    if (k < n) out *= static_cast<double>(k + 1);
    if (k < count) out /= z + static_cast<double>(k);
  }
  return out;
}

Complex eta_borwein(Complex s, int terms) {
  const auto e = borwein_weights(terms);
  Complex sum(0.0, 0.0);
  for (int k = 0; k < terms; ++k) {
    const Complex t = e[k] * std::exp(-s * std::log(static_cast<double>(k + 1)));
    sum += (k % 2 == 0) ? t : -t;
  }
  return sum;
}

Complex eta_prime_borwein(Complex s, int terms) {
  const auto e = borwein_weights(terms);
  Complex sum(0.0, 0.0);
  for (int k = 1; k < terms; ++k) {
    const double lg = std::log(static_cast<double>(k + 1));
    const Complex t = e[k] * lg * std::exp(-s * lg);
    sum += (k % 2 == 0) ? -t : t;
  }
  return sum;
}

Complex zeta_euler_maclaurin(Complex s) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  const auto& coeffs = em_coefficients();
  const long big_n = 20 + static_cast<long>(std::ceil(std::abs(s) / 2.0));
  Complex sum(0.0, 0.0);
  for (long k = big_n - 1; k >= 1; --k) sum += std::exp(-s * std::log(static_cast<double>(k)));
  const double nn = static_cast<double>(big_n);
  const Complex n_pow = std::exp(-s * std::log(nn));  // N^-s
  sum += n_pow * nn / (s - 1.0) + 0.5 * n_pow;
  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1)
  Complex rising = s;
  Complex power = n_pow / nn;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Complex term = coeffs[k] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    rising *= (s + j) * (s + j + 1.0);
    power /= nn * nn;
  }
  return sum;
}

Complex complex_zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  if (s.real() < 0.0) {
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) * complex_gamma(1.0 - s) *
           complex_zeta(1.0 - s);
  }
  if (std::abs(s.imag()) > kBorweinLimit) return zeta_euler_maclaurin(s);
  const Complex two_pow = std::exp((1.0 - s) * kLn2);  // 2^(1-s)
  const Complex factor = 1.0 - two_pow;
  const int terms = borwein_terms(s);
  const double gap = std::abs(factor);
  if (gap < 1e-10) return eta_prime_borwein(s, terms) / (kLn2 * two_pow);
  if (gap < 1e-3) return zeta_euler_maclaurin(s);
  return eta_borwein(s, terms) / factor;
}

}  // namespace qsbits
