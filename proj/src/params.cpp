#include "liebundle/params.hpp"

#include <stdexcept>

namespace liebundle {

DeformationParams::DeformationParams(std::vector<double> a) : a_(std::move(a)) {
  n_ = static_cast<int>(a_.size()) + 1;
  for (double v : a_)
    if (v != v) throw std::invalid_argument("DeformationParams: NaN parameter");

  for (int k = 1; k <= n_ - 1; ++k)
    if (a_[static_cast<std::size_t>(k) - 1] == 0.0) zero_set_.push_back(k);

  boundaries_.push_back(0);
  boundaries_.insert(boundaries_.end(), zero_set_.begin(), zero_set_.end());
  boundaries_.push_back(n_);

  coeff_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (int i = 0; i <= n_ - 1; ++i) {
    coeff_[static_cast<std::size_t>(i) * n_ + i] = 1.0;
    for (int j = i + 1; j <= n_ - 1; ++j)
      coeff_[static_cast<std::size_t>(i) * n_ + j] = coeff_[static_cast<std::size_t>(i) * n_ + j - 1] * a_[static_cast<std::size_t>(j) - 1];
  }
}

}  // namespace liebundle
