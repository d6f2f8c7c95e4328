#include "ragc/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace ragc::ad {

void Node::accumulate(const DenseMatrix& g) {
  if (grad.empty()) grad = DenseMatrix(value.rows(), value.cols());
  for (std::size_t i = 0; i < grad.size(); ++i) grad.data()[i] += g.data()[i];
}

NodePtr constant(DenseMatrix value) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  return n;
}

NodePtr parameter(DenseMatrix value, std::string name) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->requires_grad = true;
  n->name = std::move(name);
  return n;
}

namespace {

NodePtr make_op(DenseMatrix value, std::vector<NodePtr> parents,
                std::function<void(const Node&)> backprop) {
  auto n = std::make_shared<Node>();
  n->value = std::move(value);
  n->parents = std::move(parents);
  n->requires_grad = std::any_of(n->parents.begin(), n->parents.end(),
                                 [](const NodePtr& p) { return p->requires_grad; });
  if (n->requires_grad) n->backprop = std::move(backprop);
  check_finite(n->value, "autodiff op output");
  return n;
}

}  // namespace

NodePtr matmul(const NodePtr& a, const NodePtr& b) {
  auto value = ragc::matmul(a->value, b->value);
  return make_op(std::move(value), {a, b}, [a, b](const Node& self) {
    // y = a b : da = g b^T, db = a^T g
    if (a->requires_grad) a->accumulate(ragc::matmul_nt(self.grad, b->value));
    if (b->requires_grad) b->accumulate(ragc::matmul_tn(a->value, self.grad));
  });
}

NodePtr matmul_nt(const NodePtr& a, const NodePtr& b) {
  auto value = ragc::matmul_nt(a->value, b->value);
  return make_op(std::move(value), {a, b}, [a, b](const Node& self) {
    // y = a b^T : da = g b, db = g^T a
    if (a->requires_grad) a->accumulate(ragc::matmul(self.grad, b->value));
    if (b->requires_grad) b->accumulate(ragc::matmul_tn(self.grad, a->value));
  });
}

NodePtr add(const NodePtr& a, const NodePtr& b) {
  return make_op(ragc::add(a->value, b->value), {a, b}, [a, b](const Node& self) {
    if (a->requires_grad) a->accumulate(self.grad);
    if (b->requires_grad) b->accumulate(self.grad);
  });
}

NodePtr subtract(const NodePtr& a, const NodePtr& b) {
  return make_op(ragc::subtract(a->value, b->value), {a, b}, [a, b](const Node& self) {
    if (a->requires_grad) a->accumulate(self.grad);
    if (b->requires_grad) b->accumulate(ragc::negate(self.grad));
  });
}

NodePtr negate(const NodePtr& a) { return scale(a, -1.0); }

NodePtr scale(const NodePtr& a, double c) {
  return make_op(ragc::scale(a->value, c), {a}, [a, c](const Node& self) {
    a->accumulate(ragc::scale(self.grad, c));
  });
}

NodePtr mean_of_two(const NodePtr& a, const NodePtr& b) { return scale(add(a, b), 0.5); }

NodePtr hadamard(const NodePtr& a, const NodePtr& b) {
  return make_op(ragc::hadamard(a->value, b->value), {a, b}, [a, b](const Node& self) {
    if (a->requires_grad) a->accumulate(ragc::hadamard(self.grad, b->value));
    if (b->requires_grad) b->accumulate(ragc::hadamard(self.grad, a->value));
  });
}

NodePtr exp_(const NodePtr& a) {
  auto value = exp_elem(a->value);
  auto n = make_op(value, {a}, nullptr);
  if (n->requires_grad) {
    n->backprop = [a, value](const Node& self) {
      a->accumulate(ragc::hadamard(self.grad, value));
    };
  }
  return n;
}

NodePtr log_(const NodePtr& a) {
  return make_op(log_elem(a->value), {a}, [a](const Node& self) {
    DenseMatrix g(self.grad.rows(), self.grad.cols());
    for (std::size_t i = 0; i < g.size(); ++i)
      g.data()[i] = self.grad.data()[i] / a->value.data()[i];
    a->accumulate(g);
  });
}

NodePtr pow_(const NodePtr& a, double p) {
  return make_op(pow_elem(a->value, p), {a}, [a, p](const Node& self) {
    DenseMatrix g(self.grad.rows(), self.grad.cols());
    for (std::size_t i = 0; i < g.size(); ++i)
      g.data()[i] = self.grad.data()[i] * p * std::pow(a->value.data()[i], p - 1.0);
    a->accumulate(g);
  });
}

NodePtr row_l2_normalize(const NodePtr& a) {
  auto value = ragc::row_l2_normalize(a->value);
  auto norms = row_norms(a->value);
  return make_op(value, {a}, [a, value, norms](const Node& self) {
    // y_i = x_i/|x_i| : dx_i = (g_i - (g_i . y_i) y_i)/|x_i|
    const std::size_t cols = value.cols();
    DenseMatrix g(value.rows(), cols);
    for (std::size_t i = 0; i < value.rows(); ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < cols; ++j) dot += self.grad(i, j) * value(i, j);
      const double inv = 1.0 / norms[i];
      for (std::size_t j = 0; j < cols; ++j)
        g(i, j) = (self.grad(i, j) - dot * value(i, j)) * inv;
    }
    a->accumulate(g);
  });
}

NodePtr row_sum(const NodePtr& a) {
  return make_op(row_sums(a->value), {a}, [a](const Node& self) {
    DenseMatrix g(a->value.rows(), a->value.cols());
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = self.grad(i, 0);
    a->accumulate(g);
  });
}

NodePtr diag(const NodePtr& a) {
  return make_op(diag_vec(a->value), {a}, [a](const Node& self) {
    DenseMatrix g(a->value.rows(), a->value.cols());
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) = self.grad(i, 0);
    a->accumulate(g);
  });
}

NodePtr sum_all(const NodePtr& a) {
  DenseMatrix v(1, 1);
  v(0, 0) = ragc::sum_all(a->value);
  return make_op(std::move(v), {a}, [a](const Node& self) {
    DenseMatrix g(a->value.rows(), a->value.cols(), self.grad(0, 0));
    a->accumulate(g);
  });
}

NodePtr sigmoid(const NodePtr& a) {
  DenseMatrix v(a->value.rows(), a->value.cols());
  for (std::size_t i = 0; i < v.size(); ++i)
    v.data()[i] = 1.0 / (1.0 + std::exp(-a->value.data()[i]));
  auto value = v;
  return make_op(std::move(v), {a}, [a, value](const Node& self) {
    DenseMatrix g(value.rows(), value.cols());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = value.data()[i];
      g.data()[i] = self.grad.data()[i] * s * (1.0 - s);
    }
    a->accumulate(g);
  });
}

NodePtr scalar_scale(const NodePtr& s, const NodePtr& a) {
  if (s->value.size() != 1) throw ShapeError("scalar_scale: scale operand must be 1x1");
  const double sv = s->value(0, 0);
  return make_op(ragc::scale(a->value, sv), {s, a}, [s, a, sv](const Node& self) {
    if (s->requires_grad) {
      DenseMatrix gs(1, 1);
      gs(0, 0) = ragc::sum_all(ragc::hadamard(self.grad, a->value));
      s->accumulate(gs);
    }
    if (a->requires_grad) a->accumulate(ragc::scale(self.grad, sv));
  });
}

std::map<std::string, DenseMatrix> backward(const NodePtr& loss) {
  if (loss->value.size() != 1)
    throw ShapeError("backward: loss must be scalar, got " + loss->value.shape_str());

  // Iterative post-order DFS; each node appears exactly once.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<NodePtr, std::size_t>> stack;
  stack.emplace_back(loss, 0);
  visited.insert(loss.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      NodePtr p = node->parents[next++];
      if (p->requires_grad && !visited.count(p.get())) {
        visited.insert(p.get());
        stack.emplace_back(std::move(p), 0);
      }
    } else {
      order.push_back(node.get());
      stack.pop_back();
    }
  }

  for (Node* n : order) n->grad = DenseMatrix();
  loss->grad = DenseMatrix(1, 1, 1.0);

  // `order` is post-order, so reversing yields reverse-topological order.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backprop && !n->grad.empty()) n->backprop(*n);
  }

  std::map<std::string, DenseMatrix> grads;
  for (Node* n : order) {
    if (!n->name.empty()) {
      if (n->grad.empty()) n->grad = DenseMatrix(n->value.rows(), n->value.cols());
      grads[n->name] = n->grad;
    }
  }
  return grads;
}

}  // namespace ragc::ad
