#pragma once

#include <memory>
#include <vector>

namespace liebundle {

/// Deformation sequence a_1..a_{n-1} together with its zero positions and
/// the table of products a_i...a_{j-1}. A parameter counts as zero only
/// when it is exactly 0.0; near-zero values stay nonzero because the
/// algebra type changes discontinuously at 0.
///
/// Products are tabulated once, cumulatively, so no formula ever divides
/// by a parameter.
class DeformationParams {
 public:
  explicit DeformationParams(std::vector<double> a);

  int n() const { return n_; }
  const std::vector<double>& a() const { return a_; }

  /// 1-based indices k with a_k == 0, ascending.
  const std::vector<int>& zero_set() const { return zero_set_; }

  /// Sentinel-extended boundaries: {0, k_1, ..., k_N, n}.
  const std::vector<int>& boundaries() const { return boundaries_; }

  /// Product a[i] * ... * a[j-1] over 0-based positions, empty product = 1.
  /// Valid for 0 <= i <= j <= n-1.
  double coeff(int i, int j) const { return coeff_[static_cast<std::size_t>(i) * n_ + j]; }

  bool all_nonzero() const { return zero_set_.empty(); }

  /// a_1 * ... * a_{n-1}; exactly 0.0 when any parameter vanishes.
  double full_product() const { return coeff(0, n_ - 1); }

  bool same_as(const DeformationParams& o) const { return a_ == o.a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
  std::vector<int> zero_set_;
  std::vector<int> boundaries_;
  std::vector<double> coeff_;  // row-major (n x n), upper part used
};

using ParamsPtr = std::shared_ptr<const DeformationParams>;

inline ParamsPtr make_params(std::vector<double> a) {
  return std::make_shared<const DeformationParams>(std::move(a));
}

}  // namespace liebundle
