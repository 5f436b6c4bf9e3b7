// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/vec.hpp"

#include <algorithm>
#include <string>

namespace proxdual {

VecR VecR::from(std::vector<double> xs, Space s) {
  VecR v;
  v.e_ = std::move(xs);
  v.tag_ = s;
  return v;
}

void check_compatible(const VecR& a, const VecR& b) {
  if (a.size() != b.size())
    throw InvalidInputError("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  if (a.space() != b.space())
    throw InvalidInputError("vector space tag mismatch (H vs G)");
}

void check_finite(const VecR& a, const char* what) {
  if (!a.all_finite()) throw InvalidInputError(std::string(what) + ": non-finite entry");
}

VecR& VecR::operator+=(const VecR& o) {
  check_compatible(*this, o);
  for (int i = 0; i < size(); ++i) e_[static_cast<size_t>(i)] += o[i];
  return *this;
}

VecR& VecR::operator-=(const VecR& o) {
  check_compatible(*this, o);
  for (int i = 0; i < size(); ++i) e_[static_cast<size_t>(i)] -= o[i];
  return *this;
}

VecR& VecR::operator*=(double c) {
  for (double& x : e_) x *= c;
  return *this;
}

VecR operator+(VecR a, const VecR& b) {
  a += b;
  return a;
}
VecR operator-(VecR a, const VecR& b) {
  a -= b;
  return a;
}
VecR operator-(VecR a) {
  a *= -1.0;
  return a;
}
VecR operator*(double c, VecR a) {
  a *= c;
  return a;
}
VecR operator*(VecR a, double c) {
  a *= c;
  return a;
}

double dot(const VecR& a, const VecR& b) {
  check_compatible(a, b);
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const VecR& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const VecR& a) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

double norm_1(const VecR& a) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += std::abs(a[i]);
  return s;
}

VecR axpy(const VecR& a, double c, const VecR& b) {
  check_compatible(a, b);
  VecR r = a;
  for (int i = 0; i < r.size(); ++i) r[i] += c * b[i];
  return r;
}

}  // namespace proxdual
