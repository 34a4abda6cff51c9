#ifndef RUIJLAB_COMPLEX_TUPLE_HPP
#define RUIJLAB_COMPLEX_TUPLE_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "ruijlab/errors.hpp"

namespace ruijlab {

using Complex = std::complex<double>;

// Ordered tuple (x_1, ..., x_n) of complex coordinates or spectral variables.
class ComplexTuple {
 public:
  ComplexTuple() = default;
  explicit ComplexTuple(std::vector<Complex> v) : v_(std::move(v)) {}
  ComplexTuple(std::initializer_list<Complex> v) : v_(v) {}

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  const Complex& operator[](std::size_t i) const { return v_[i]; }
  Complex& operator[](std::size_t i) { return v_[i]; }
  const std::vector<Complex>& values() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  Complex sum() const {
    return std::accumulate(v_.begin(), v_.end(), Complex(0.0));
  }

  ComplexTuple permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != v_.size()) throw ParameterError("permutation arity mismatch");
    std::vector<Complex> out(v_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = v_[perm[i]];
    return ComplexTuple(std::move(out));
  }

  ComplexTuple shifted(std::size_t i, Complex delta) const {
    ComplexTuple out = *this;
    out.v_.at(i) += delta;
    return out;
  }

  ComplexTuple dropped(std::size_t i) const {
    std::vector<Complex> out;
    out.reserve(v_.size() - 1);
    for (std::size_t j = 0; j < v_.size(); ++j)
      if (j != i) out.push_back(v_[j]);
    return ComplexTuple(std::move(out));
  }

 private:
  std::vector<Complex> v_;
};

}  // namespace ruijlab

#endif
