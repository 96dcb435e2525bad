#pragma once

#include <vector>

#include "g2/qvalue.hpp"

namespace g2 {

// Small dense matrix over QValue, used for exact block synthesis.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int n, const QValue& fill) : n_(n), a_(static_cast<size_t>(n) * n, fill) {}
  static QMatrix identity(int n, const QContext& ctx);
  static QMatrix zero(int n, const QContext& ctx) { return QMatrix(n, ctx.zero()); }

  int size() const { return n_; }
  QValue& at(int r, int c) { return a_[static_cast<size_t>(r) * n_ + c]; }
  const QValue& at(int r, int c) const { return a_[static_cast<size_t>(r) * n_ + c]; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix scaled(const QValue& c) const;
  QValue trace() const;

  // max-norm of entries under the context (0 for exact zero)
  bool is_zero(const QContext& ctx) const;

 private:
  int n_ = 0;
  std::vector<QValue> a_;
};

}  // namespace g2
