// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "proxdual/errors.hpp"

namespace proxdual {

/// Tag distinguishing the solution space H from the data space G.
/// Vectors combine arithmetically only when tags and lengths agree.
enum class Space : unsigned char { H, G };

/// Dense real vector with a space tag.
class VecR {
 public:
  VecR() = default;
  explicit VecR(int n, Space s = Space::H) : e_(static_cast<size_t>(n), 0.0), tag_(s) {}
  VecR(std::initializer_list<double> xs, Space s = Space::H) : e_(xs), tag_(s) {}
  static VecR from(std::vector<double> xs, Space s = Space::H);

  int size() const { return static_cast<int>(e_.size()); }
  bool empty() const { return e_.empty(); }
  Space space() const { return tag_; }

  double operator[](int i) const { return e_[static_cast<size_t>(i)]; }
  double& operator[](int i) { return e_[static_cast<size_t>(i)]; }
  const std::vector<double>& data() const { return e_; }
  std::vector<double>& data() { return e_; }

  VecR retagged(Space s) const {
    VecR r = *this;
    r.tag_ = s;
    return r;
  }

  bool all_finite() const {
    for (double x : e_)
      if (!std::isfinite(x)) return false;
    return true;
  }

  VecR& operator+=(const VecR& o);
  VecR& operator-=(const VecR& o);
  VecR& operator*=(double c);

 private:
  std::vector<double> e_;
  Space tag_ = Space::H;
};

VecR operator+(VecR a, const VecR& b);
VecR operator-(VecR a, const VecR& b);
VecR operator-(VecR a);
VecR operator*(double c, VecR a);
VecR operator*(VecR a, double c);

double dot(const VecR& a, const VecR& b);
double norm(const VecR& a);
double norm_inf(const VecR& a);
double norm_1(const VecR& a);

/// a + c*b without an extra temporary.
VecR axpy(const VecR& a, double c, const VecR& b);

/// Throws InvalidInputError unless sizes and space tags agree.
void check_compatible(const VecR& a, const VecR& b);

/// Throws InvalidInputError if any entry is NaN or infinite.
void check_finite(const VecR& a, const char* what);

}  // namespace proxdual
