#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ragc/matrix.hpp"

namespace ragc::ad {

struct Node;
using NodePtr = std::shared_ptr<Node>;

/// One record on the reverse-mode tape. `backprop` distributes the node's
/// accumulated adjoint into its parents' adjoints.
struct Node {
  DenseMatrix value;
  DenseMatrix grad;  // lazily sized on first accumulation
  bool requires_grad = false;
  std::string name;  // set on parameters only
  std::vector<NodePtr> parents;
  std::function<void(const Node&)> backprop;

  void accumulate(const DenseMatrix& g);
};

NodePtr constant(DenseMatrix value);
NodePtr parameter(DenseMatrix value, std::string name);

NodePtr matmul(const NodePtr& a, const NodePtr& b);
NodePtr matmul_nt(const NodePtr& a, const NodePtr& b);  // a * b^T
NodePtr add(const NodePtr& a, const NodePtr& b);
NodePtr subtract(const NodePtr& a, const NodePtr& b);
NodePtr negate(const NodePtr& a);
NodePtr scale(const NodePtr& a, double c);
NodePtr mean_of_two(const NodePtr& a, const NodePtr& b);
NodePtr hadamard(const NodePtr& a, const NodePtr& b);
NodePtr exp_(const NodePtr& a);
NodePtr log_(const NodePtr& a);
NodePtr pow_(const NodePtr& a, double p);
NodePtr row_l2_normalize(const NodePtr& a);
NodePtr row_sum(const NodePtr& a);   // N x 1
NodePtr diag(const NodePtr& a);      // N x 1 from square matrix
NodePtr sum_all(const NodePtr& a);   // 1 x 1
NodePtr sigmoid(const NodePtr& a);

/// s is 1x1; result = s * a elementwise.
NodePtr scalar_scale(const NodePtr& s, const NodePtr& a);

/// Runs reverse accumulation from a scalar loss and returns the adjoints of
/// all named parameters reachable from it. Adjoints are reset at the start of
/// every call, so parameters can be reused across training steps.
std::map<std::string, DenseMatrix> backward(const NodePtr& loss);

}  // namespace ragc::ad
