#include "gssl/tensor.hpp"

namespace gssl {

namespace {
void check_rank2(const Tensor& t, const char* name) {
  if (t.rank() != 2) throw ShapeError(std::string(name) + ": expected rank-2 tensor, got " + t.shape_str());
}
}  // namespace

// i-k-j loop order keeps the inner loop over contiguous memory in both B and C.
void mm(const Tensor& a, const Tensor& b, Tensor& c) {
  check_rank2(a, "mm/a");
  check_rank2(b, "mm/b");
  const int m = a.dim(0), k = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k) throw ShapeError("mm: inner dimensions differ, " + a.shape_str() + " * " + b.shape_str());
  if (c.rank() != 2 || c.dim(0) != m || c.dim(1) != n) throw ShapeError("mm: bad output shape " + c.shape_str());
  const double* pa = a.data();
  const double* pb = b.data();
  double* pc = c.data();
  for (int i = 0; i < m; ++i) {
    double* crow = pc + static_cast<int64_t>(i) * n;
    for (int j = 0; j < n; ++j) crow[j] = 0.0;
    const double* arow = pa + static_cast<int64_t>(i) * k;
    for (int l = 0; l < k; ++l) {
      const double av = arow[l];
      if (av == 0.0) continue;
      const double* brow = pb + static_cast<int64_t>(l) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void mm_nt(const Tensor& a, const Tensor& b, Tensor& c) {
  check_rank2(a, "mm_nt/a");
  check_rank2(b, "mm_nt/b");
  const int m = a.dim(0), k = a.dim(1), n = b.dim(0);
  if (b.dim(1) != k) throw ShapeError("mm_nt: inner dimensions differ, " + a.shape_str() + " * " + b.shape_str() + "^T");
  if (c.rank() != 2 || c.dim(0) != m || c.dim(1) != n) throw ShapeError("mm_nt: bad output shape " + c.shape_str());
  const double* pa = a.data();
  const double* pb = b.data();
  double* pc = c.data();
  for (int i = 0; i < m; ++i) {
    const double* arow = pa + static_cast<int64_t>(i) * k;
    double* crow = pc + static_cast<int64_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = pb + static_cast<int64_t>(j) * k;
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += arow[l] * brow[l];
      crow[j] = s;
    }
  }
}

void mm_tn(const Tensor& a, const Tensor& b, Tensor& c) {
  check_rank2(a, "mm_tn/a");
  check_rank2(b, "mm_tn/b");
  const int k = a.dim(0), m = a.dim(1), n = b.dim(1);
  if (b.dim(0) != k) throw ShapeError("mm_tn: inner dimensions differ, " + a.shape_str() + "^T * " + b.shape_str());
  if (c.rank() != 2 || c.dim(0) != m || c.dim(1) != n) throw ShapeError("mm_tn: bad output shape " + c.shape_str());
  const double* pa = a.data();
  const double* pb = b.data();
  double* pc = c.data();
  for (int64_t i = 0; i < static_cast<int64_t>(m) * n; ++i) pc[i] = 0.0;
  for (int l = 0; l < k; ++l) {
    const double* arow = pa + static_cast<int64_t>(l) * m;
    const double* brow = pb + static_cast<int64_t>(l) * n;
    for (int i = 0; i < m; ++i) {
      const double av = arow[i];
      if (av == 0.0) continue;
      double* crow = pc + static_cast<int64_t>(i) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void axpy(double alpha, const Tensor& x, Tensor& y) {
  if (!x.same_shape(y)) throw ShapeError("axpy: shape mismatch " + x.shape_str() + " vs " + y.shape_str());
  const double* px = x.data();
  double* py = y.data();
  const int64_t n = x.numel();
  for (int64_t i = 0; i < n; ++i) py[i] += alpha * px[i];
}

}  // namespace gssl
