#ifndef CHECKWORTHY_TENSOR_HPP_
#define CHECKWORTHY_TENSOR_HPP_

#include <cstddef>
#include <vector>

namespace checkworthy {

// Dense row-major rank-3 tensor of doubles (batch x position x feature).
struct Tensor3 {
  std::size_t dim0 = 0;
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2)
      : dim0(d0), dim1(d1), dim2(d2), data(d0 * d1 * d2, 0.0) {}

  double& at(std::size_t i, std::size_t j, std::size_t k) {
    return data[(i * dim1 + j) * dim2 + k];
  }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * dim1 + j) * dim2 + k];
  }
  const double* row(std::size_t i, std::size_t j) const {
    return data.data() + (i * dim1 + j) * dim2;
  }
  double* row(std::size_t i, std::size_t j) {
    return data.data() + (i * dim1 + j) * dim2;
  }
};

}  // namespace checkworthy

#endif  // CHECKWORTHY_TENSOR_HPP_
